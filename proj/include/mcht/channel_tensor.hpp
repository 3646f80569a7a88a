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

#ifndef MCHT_CHANNEL_TENSOR_HPP
#define MCHT_CHANNEL_TENSOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mcht/util.hpp"

namespace mcht
{

    struct ChannelMeta
    {
        double carrier_freq_hz = 0.0;
        double bandwidth_hz = 0.0;
        double snapshot_rate_hz = 0.0;
        std::string scenario_label;
        std::string array_id;
    };

    // Complex channel transfer samples indexed (user k, snapshot n, frequency f,
    // antenna m), stored k-major then n, f, m. Immutable after construction.
    // An optional per-(user, snapshot) validity mask marks snapshots that must
    // be excluded from every sum (lost measurement snapshots).
    class ChannelTensor
    {
    public:
        ChannelTensor(std::size_t users, std::size_t snapshots, std::size_t freqs,
                      std::size_t antennas, std::vector<cplx> samples,
                      ChannelMeta meta = {}, std::vector<std::uint8_t> snapshot_valid = {});

        std::size_t users() const { return m_users; }
        std::size_t snapshots() const { return m_snapshots; }
        std::size_t freqs() const { return m_freqs; }
        std::size_t antennas() const { return m_antennas; }
        std::size_t size() const { return m_samples.size(); }

        const ChannelMeta &meta() const { return m_meta; }

        std::size_t index(std::size_t k, std::size_t n, std::size_t f, std::size_t m) const
        {
            return ((k * m_snapshots + n) * m_freqs + f) * m_antennas + m;
        }

        cplx operator()(std::size_t k, std::size_t n, std::size_t f, std::size_t m) const
        {
            return m_samples[index(k, n, f, m)];
        }

        std::span<const cplx> samples() const { return m_samples; }

        bool has_validity_mask() const { return !m_snapshot_valid.empty(); }

        bool snapshot_is_valid(std::size_t k, std::size_t n) const
        {
            return m_snapshot_valid.empty() || m_snapshot_valid[k * m_snapshots + n] != 0;
        }

        std::size_t valid_snapshot_count(std::size_t k) const;

        // Mask bytes (one 0/1 byte per user-snapshot, k-major), empty if absent.
        std::span<const std::uint8_t> validity_mask() const { return m_snapshot_valid; }

    private:
        void validate() const;

        std::size_t m_users, m_snapshots, m_freqs, m_antennas;
        std::vector<cplx> m_samples;
        ChannelMeta m_meta;
        std::vector<std::uint8_t> m_snapshot_valid;
    };

    enum class OrderKind
    {
        original,
        strongest_first,
        weakest_first,
        vertical_only,
        horizontal_only,
        both_alternating,
        explicit_order
    };

    std::string order_kind_name(OrderKind kind);
    OrderKind order_kind_from_name(const std::string &name);

    // Ordered antenna subset (0-based indices into the tensor antenna axis).
    struct SubsetSelection
    {
        std::vector<std::size_t> indices;
        OrderKind order = OrderKind::explicit_order;

        std::size_t size() const { return indices.size(); }

        // Throws invariant_error if empty, out of range or with duplicates.
        void validate(std::size_t antennas_total) const;

        static SubsetSelection prefix(const SubsetSelection &full, std::size_t count);
    };

    // Instantaneous channel gain per (snapshot, frequency) for one user and one
    // subset; unit mean by construction when produced by normalize + subset_gain.
    struct GainSeries
    {
        std::size_t snapshots = 0;
        std::size_t freqs = 0;
        std::size_t subset_size = 0;
        std::vector<double> values; // n-major, length snapshots * freqs

        double value(std::size_t n, std::size_t f) const { return values[n * freqs + f]; }
        std::size_t sample_count() const { return values.size(); }
    };

    // Std of normalized gain in dB versus subset size 1..max_size(), for the
    // selection order that produced it. hardening_db = std_db(last) - std_db(1);
    // negative values mean the channel hardens.
    struct HardeningCurve
    {
        std::vector<double> std_db; // index i -> subset size i + 1
        OrderKind order = OrderKind::explicit_order;
        double hardening_db = 0.0;

        std::size_t max_size() const { return std_db.size(); }
    };

} // namespace mcht

#endif
