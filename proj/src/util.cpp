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

#include "mcht/util.hpp"

namespace mcht
{

    double pairwise_sum(std::span<const double> values)
    {
        const std::size_t n = values.size();
        if (n <= 64)
        {
            double s = 0.0;
            for (double v : values)
                s += v;
            return s;
        }
        const std::size_t half = n / 2;
        return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
    }

    mean_std sample_mean_std(std::span<const double> values)
    {
        mean_std out;
        const std::size_t n = values.size();
        if (n == 0)
            return out;
        out.mean = pairwise_sum(values) / static_cast<double>(n);

        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double d = values[i] - out.mean;
            sq[i] = d * d;
        }
        out.std = std::sqrt(pairwise_sum(sq) / static_cast<double>(n));
        return out;
    }

    std::uint64_t fnv1a64(std::span<const unsigned char> bytes)
    {
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char b : bytes)
        {
            h ^= static_cast<std::uint64_t>(b);
            h *= 1099511628211ull;
        }
        return h;
    }

    std::uint64_t fnv1a64(const std::string &text)
    {
        return fnv1a64(std::span<const unsigned char>(
            reinterpret_cast<const unsigned char *>(text.data()), text.size()));
    }

} // namespace mcht
