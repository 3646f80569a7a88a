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

#include "mcht/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "mcht/errors.hpp"
#include "mcht/util.hpp"

namespace mcht
{

    std::uint64_t Count::value() const
    {
        if (m_infinite)
            throw invariant_error("Count::value() called on an infinite count");
        return m_value;
    }

    std::string Count::str() const
    {
        return m_infinite ? std::string("inf") : std::to_string(m_value);
    }

    Count parse_count(const std::string &text)
    {
        if (text == "inf")
            return Count::inf();
        std::uint64_t v = 0;
        try
        {
            // stoull would wrap a leading minus sign, so only digits pass.
            for (char c : text)
                if (c < '0' || c > '9')
                    throw std::invalid_argument(text);
            std::size_t pos = 0;
            v = std::stoull(text, &pos);
            if (pos != text.size() || text.empty())
                throw std::invalid_argument(text);
        }
        catch (const std::exception &)
        {
            throw usage_error("not a count: '" + text + "' (expected a positive integer or 'inf')");
        }
        if (v == 0)
            throw usage_error("count must be at least 1, got '" + text + "'");
        return Count(v);
    }

    void TheoryTerms::validate() const
    {
        if (!antennas.is_infinite() && antennas.value() < 1)
            throw invariant_error("TheoryTerms: antenna count must be >= 1");
        if (!paths.is_infinite() && paths.value() < 1)
            throw invariant_error("TheoryTerms: path count must be >= 1");
        if (!(path_gain_mean > 0.0))
            throw invariant_error("TheoryTerms: path gain mean must be positive");
        if (path_gain_std < 0.0)
            throw invariant_error("TheoryTerms: path gain std must be non-negative");
        if (steering_second_moment_tx < 0.0 || steering_second_moment_tx > 1.0 ||
            steering_second_moment_rx < 0.0 || steering_second_moment_rx > 1.0)
            throw invariant_error("TheoryTerms: steering second moments must lie in [0, 1]");
    }

    double TheoryTerms::large_scale_bound() const
    {
        return mcht::large_scale_bound(paths, path_gain_mean, path_gain_std);
    }

    double cv_squared_closed(Count antennas, Count paths)
    {
        if (!antennas.is_infinite() && antennas.value() == 0)
            throw invariant_error("cv_squared_closed: antenna count must be >= 1");
        if (!paths.is_infinite() && paths.value() == 0)
            throw invariant_error("cv_squared_closed: path count must be >= 1");

        if (antennas.is_infinite() && paths.is_infinite())
            return 0.0;
        if (paths.is_infinite())
            return 1.0 / static_cast<double>(antennas.value());
        const double inv_p = 1.0 / static_cast<double>(paths.value());
        if (antennas.is_infinite())
            return inv_p;
        const double inv_m = 1.0 / static_cast<double>(antennas.value());
        return inv_m * (1.0 - inv_p) + inv_p;
    }

    double large_scale_bound(Count paths, double path_gain_mean, double path_gain_std)
    {
        if (!(path_gain_mean > 0.0))
            throw invariant_error("large_scale_bound: path gain mean must be positive");
        if (path_gain_std < 0.0)
            throw invariant_error("large_scale_bound: path gain std must be non-negative");
        if (!paths.is_infinite() && paths.value() == 0)
            throw invariant_error("large_scale_bound: path count must be >= 1");

        if (paths.is_infinite())
            return 0.0;
        const double ratio = path_gain_std / path_gain_mean;
        return ratio * ratio / static_cast<double>(paths.value());
    }

    StdSurface std_surface(std::span<const Count> m_grid, std::span<const Count> p_grid)
    {
        if (m_grid.empty() || p_grid.empty())
            throw invariant_error("std_surface: grids must be nonempty");

        StdSurface surf;
        surf.m_grid.assign(m_grid.begin(), m_grid.end());
        surf.p_grid.assign(p_grid.begin(), p_grid.end());
        surf.std_db.reserve(m_grid.size() * p_grid.size());
        for (const Count &m : m_grid)
            for (const Count &p : p_grid)
                surf.std_db.push_back(db10(std::sqrt(cv_squared_closed(m, p))));
        return surf;
    }

} // namespace mcht
