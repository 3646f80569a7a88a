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

// Closed-form channel-hardening model. The variance of the per-antenna
// average gain of a finite-scatterer channel with M antennas and P
// isotropically placed paths has coefficient of variation
//   CV^2 = (1/M)(1 - 1/P) + 1/P,
// which separates a spatial averaging term from a scatterer-count floor.

#ifndef MCHT_THEORY_HPP
#define MCHT_THEORY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mcht
{

    // Count that can be infinite. Infinity is an explicit state, not a
    // sentinel value, so Count(0) and Count::inf() are distinct and 0 stays
    // an invalid-but-representable input for the operations below.
    class Count
    {
      public:
        constexpr Count(std::uint64_t n) : m_infinite(false), m_value(n) {}

        static constexpr Count inf()
        {
            Count c(0);
            c.m_infinite = true;
            return c;
        }

        constexpr bool is_infinite() const { return m_infinite; }

        // Finite value; calling this on an infinite count is a logic error.
        std::uint64_t value() const;

        std::string str() const; // decimal digits, or "inf"

        constexpr bool operator==(const Count &o) const
        {
            return m_infinite == o.m_infinite && (m_infinite || m_value == o.m_value);
        }

      private:
        bool m_infinite;
        std::uint64_t m_value;
    };

    Count parse_count(const std::string &text); // "inf" or a positive decimal

    // Symbols of the coefficient-of-variation decomposition. The steering
    // second moments have no closed form here; they are Monte Carlo
    // estimands (see estimate_steering_second_moment in arrays).
    struct TheoryTerms
    {
        Count antennas = Count(1);                // M
        Count paths = Count(1);                   // P
        double path_gain_mean = 1.0;              // mu, linear
        double path_gain_std = 0.0;               // sigma, linear
        double steering_second_moment_tx = 1.0;   // in [0, 1]
        double steering_second_moment_rx = 1.0;   // in [0, 1]

        void validate() const;
        double large_scale_bound() const;
    };

    // CV^2 of the per-antenna average gain. Infinite P gives 1/M, infinite M
    // gives 1/P, both infinite gives 0 (full hardening).
    double cv_squared_closed(Count antennas, Count paths);

    // Large-scale fading floor (1/P)(sigma/mu)^2; 0 for infinite P.
    double large_scale_bound(Count paths, double path_gain_mean, double path_gain_std);

    // std_db(i, j) = 10*log10(sqrt(cv_squared_closed(m_grid[i], p_grid[j]))).
    // Non-increasing along both axes; -inf where CV^2 is exactly 0.
    struct StdSurface
    {
        std::vector<Count> m_grid;
        std::vector<Count> p_grid;
        std::vector<double> std_db; // row-major, antenna axis major

        double at(std::size_t i, std::size_t j) const { return std_db[i * p_grid.size() + j]; }
    };

    StdSurface std_surface(std::span<const Count> m_grid, std::span<const Count> p_grid);

} // namespace mcht

#endif
