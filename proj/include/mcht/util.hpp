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

#ifndef MCHT_UTIL_HPP
#define MCHT_UTIL_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mcht
{

    constexpr const char *mcht_version = "0.1.0";

    using cplx = std::complex<double>;
    using vec3 = std::array<double, 3>;

    inline double dot(const vec3 &a, const vec3 &b)
    {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    }

    inline double norm3(const vec3 &v)
    {
        return std::sqrt(dot(v, v));
    }

    inline vec3 normalized(const vec3 &v)
    {
        const double n = norm3(v);
        return {v[0] / n, v[1] / n, v[2] / n};
    }

    constexpr double speed_of_light = 299792458.0; // m/s
    constexpr double pi = 3.141592653589793238462643383279502884;
    constexpr double two_pi = 2.0 * pi;

    constexpr double neg_inf = -std::numeric_limits<double>::infinity();

    // Power quantity to decibel. Zero maps to the -inf sentinel.
    inline double db10(double x)
    {
        return x > 0.0 ? 10.0 * std::log10(x) : neg_inf;
    }

    inline double db10_inv(double x_db)
    {
        return std::pow(10.0, x_db / 10.0);
    }

    // Pairwise (cascade) summation. Keeps the accumulation error near
    // O(eps * log n) so sums over N*F*M ~ 5e6 samples stay trustworthy.
    double pairwise_sum(std::span<const double> values);

    // Pairwise sum of f(v) for each element, without materializing the mapped array.
    template <typename F>
    double pairwise_sum_map(std::span<const cplx> values, F &&f)
    {
        const std::size_t n = values.size();
        if (n <= 64)
        {
            double s = 0.0;
            for (const auto &v : values)
                s += f(v);
            return s;
        }
        const std::size_t half = n / 2;
        return pairwise_sum_map(values.first(half), f) + pairwise_sum_map(values.subspan(half), f);
    }

    // Mean and standard deviation (1/n convention) of a sample set.
    struct mean_std
    {
        double mean = 0.0;
        double std = 0.0;
    };

    mean_std sample_mean_std(std::span<const double> values);

    // FNV-1a, used for config fingerprints in run manifests.
    std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
    std::uint64_t fnv1a64(const std::string &text);

} // namespace mcht

#endif
