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

#include "mcht/channel_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mcht/errors.hpp"

namespace mcht
{

    ChannelTensor::ChannelTensor(std::size_t users, std::size_t snapshots, std::size_t freqs,
                                 std::size_t antennas, std::vector<cplx> samples,
                                 ChannelMeta meta, std::vector<std::uint8_t> snapshot_valid)
        : m_users(users), m_snapshots(snapshots), m_freqs(freqs), m_antennas(antennas),
          m_samples(std::move(samples)), m_meta(std::move(meta)),
          m_snapshot_valid(std::move(snapshot_valid))
    {
        validate();
    }

    void ChannelTensor::validate() const
    {
        if (m_users < 1 || m_snapshots < 1 || m_freqs < 1 || m_antennas < 1)
            throw invariant_error("channel tensor: all four dimensions must be >= 1");

        const std::size_t expected = m_users * m_snapshots * m_freqs * m_antennas;
        if (m_samples.size() != expected)
            throw invariant_error("channel tensor: sample count " + std::to_string(m_samples.size()) +
                                  " does not match K*N*F*M = " + std::to_string(expected));

        for (const cplx &v : m_samples)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw invariant_error("channel tensor: non-finite sample");

        if (!m_snapshot_valid.empty())
        {
            if (m_snapshot_valid.size() != m_users * m_snapshots)
                throw invariant_error("channel tensor: validity mask must have K*N entries");
            for (std::size_t k = 0; k < m_users; ++k)
                if (valid_snapshot_count(k) == 0)
                    throw invariant_error("channel tensor: user " + std::to_string(k) +
                                          " has no valid snapshots");
        }
    }

    std::size_t ChannelTensor::valid_snapshot_count(std::size_t k) const
    {
        if (m_snapshot_valid.empty())
            return m_snapshots;
        std::size_t c = 0;
        for (std::size_t n = 0; n < m_snapshots; ++n)
            if (m_snapshot_valid[k * m_snapshots + n] != 0)
                ++c;
        return c;
    }

    std::string order_kind_name(OrderKind kind)
    {
        switch (kind)
        {
        case OrderKind::original:
            return "original";
        case OrderKind::strongest_first:
            return "strongest_first";
        case OrderKind::weakest_first:
            return "weakest_first";
        case OrderKind::vertical_only:
            return "vertical_only";
        case OrderKind::horizontal_only:
            return "horizontal_only";
        case OrderKind::both_alternating:
            return "both_alternating";
        case OrderKind::explicit_order:
            return "explicit";
        }
        return "unknown";
    }

    OrderKind order_kind_from_name(const std::string &name)
    {
        for (OrderKind k : {OrderKind::original, OrderKind::strongest_first, OrderKind::weakest_first,
                            OrderKind::vertical_only, OrderKind::horizontal_only,
                            OrderKind::both_alternating, OrderKind::explicit_order})
            if (order_kind_name(k) == name)
                return k;
        throw usage_error("unknown selection order '" + name + "'");
    }

    void SubsetSelection::validate(std::size_t antennas_total) const
    {
        if (indices.empty())
            throw invariant_error("subset selection: empty");
        std::unordered_set<std::size_t> seen;
        for (std::size_t idx : indices)
        {
            if (idx >= antennas_total)
                throw invariant_error("subset selection: antenna index " + std::to_string(idx) +
                                      " out of range (M_total = " + std::to_string(antennas_total) + ")");
            if (!seen.insert(idx).second)
                throw invariant_error("subset selection: duplicate antenna index " + std::to_string(idx));
        }
    }

    SubsetSelection SubsetSelection::prefix(const SubsetSelection &full, std::size_t count)
    {
        if (count == 0 || count > full.indices.size())
            throw invariant_error("subset prefix: size out of range");
        SubsetSelection out;
        out.order = full.order;
        out.indices.assign(full.indices.begin(), full.indices.begin() + static_cast<std::ptrdiff_t>(count));
        return out;
    }

} // namespace mcht
