// SPDX-License-Identifier: Apache-2.0
//
// mcht - massive MIMO channel hardening synthesis and analysis toolkit
// Copyright (C) 2026 mcht contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MCHT_RNG_HPP
#define MCHT_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "mcht/util.hpp"

namespace mcht
{

    // splitmix64 finalizer; good avalanche, cheap, stable across platforms.
    inline std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    // Deterministic random stream addressed by a key path (seed, run, user,
    // cluster, path, ...). Child streams are derived from the key, never from
    // engine state, so adding draws or paths anywhere in the hierarchy does
    // not perturb any other stream. Distributions are implemented explicitly
    // (not via std::*_distribution) so sequences are identical across
    // standard-library implementations.
    class rng_stream
    {
    public:
        explicit rng_stream(std::uint64_t key) : m_key(key), m_eng(mix64(key)) {}

        template <typename... Tags>
        rng_stream derive(Tags... tags) const
        {
            std::uint64_t k = m_key;
            ((k = mix64(k ^ mix64(static_cast<std::uint64_t>(tags) + 0x517cc1b727220a95ull))), ...);
            return rng_stream(k);
        }

        std::uint64_t key() const { return m_key; }

        std::uint64_t next_u64() { return m_eng(); }

        // Uniform in [0, 1) with 53 random bits.
        double uniform()
        {
            return static_cast<double>(m_eng() >> 11) * 0x1.0p-53;
        }

        double uniform(double lo, double hi)
        {
            return lo + (hi - lo) * uniform();
        }

        std::size_t uniform_index(std::size_t n) // in [0, n)
        {
            return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
        }

        // Standard normal via Box-Muller (both values used).
        double normal()
        {
            if (m_have_spare)
            {
                m_have_spare = false;
                return m_spare;
            }
            double u1 = uniform();
            while (u1 <= 0.0)
                u1 = uniform();
            const double u2 = uniform();
            const double r = std::sqrt(-2.0 * std::log(u1));
            m_spare = r * std::sin(two_pi * u2);
            m_have_spare = true;
            return r * std::cos(two_pi * u2);
        }

        double normal(double mean, double stddev) { return mean + stddev * normal(); }

        // Circularly-symmetric complex Gaussian CN(0,1): unit mean-square magnitude.
        cplx cnormal()
        {
            constexpr double s = 0.7071067811865476; // 1/sqrt(2)
            return cplx(s * normal(), s * normal());
        }

        double exponential(double mean)
        {
            double u = uniform();
            while (u <= 0.0)
                u = uniform();
            return -mean * std::log(u);
        }

        // Uniform direction on the unit sphere.
        std::array<double, 3> unit_sphere()
        {
            const double z = uniform(-1.0, 1.0);
            const double phi = uniform(-pi, pi);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            return {r * std::cos(phi), r * std::sin(phi), z};
        }

    private:
        std::uint64_t m_key;
        std::mt19937_64 m_eng;
        double m_spare = 0.0;
        bool m_have_spare = false;
    };

} // namespace mcht

#endif
