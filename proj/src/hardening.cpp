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

#include "mcht/hardening.hpp"

#include <cmath>

#include "mcht/errors.hpp"

namespace mcht
{

    ChannelBlock extract_block(const ChannelTensor &tensor, std::size_t user,
                               const SubsetSelection &subset)
    {
        if (user >= tensor.users())
            throw invariant_error("user index out of range");
        subset.validate(tensor.antennas());

        ChannelBlock block;
        block.freqs = tensor.freqs();
        block.antennas = subset.size();
        block.snapshots = tensor.valid_snapshot_count(user);
        block.samples.reserve(block.snapshots * block.freqs * block.antennas);

        for (std::size_t n = 0; n < tensor.snapshots(); ++n)
        {
            if (!tensor.snapshot_is_valid(user, n))
                continue;
            for (std::size_t f = 0; f < tensor.freqs(); ++f)
                for (std::size_t m : subset.indices)
                    block.samples.push_back(tensor(user, n, f, m));
        }
        return block;
    }

    ChannelBlock normalize(ChannelBlock block)
    {
        const std::size_t count = block.samples.size();
        if (count == 0)
            throw invariant_error("normalize: empty block");

        const double total = pairwise_sum_map(std::span<const cplx>(block.samples),
                                              [](const cplx &v) { return std::norm(v); });
        if (!(total > 0.0))
            throw data_error("normalize: zero-energy block, normalization would divide by zero",
                             data_error_code::zero_energy);

        const double scale = 1.0 / std::sqrt(total / static_cast<double>(count));
        for (cplx &v : block.samples)
            v *= scale;
        block.applied_scale *= scale;
        return block;
    }

    ChannelBlock normalize(const ChannelTensor &tensor, std::size_t user,
                           const SubsetSelection &subset)
    {
        return normalize(extract_block(tensor, user, subset));
    }

    GainSeries subset_gain(const ChannelBlock &block)
    {
        GainSeries series;
        series.snapshots = block.snapshots;
        series.freqs = block.freqs;
        series.subset_size = block.antennas;
        series.values.resize(block.snapshots * block.freqs);

        const double inv_m = 1.0 / static_cast<double>(block.antennas);
        for (std::size_t s = 0; s < series.values.size(); ++s)
        {
            std::span<const cplx> row(block.samples.data() + s * block.antennas, block.antennas);
            series.values[s] = inv_m * pairwise_sum_map(row, [](const cplx &v) { return std::norm(v); });
        }
        return series;
    }

    GainStd std_gain(const GainSeries &series)
    {
        if (series.sample_count() < 2)
            throw invariant_error("std_gain: need at least two (snapshot, frequency) samples");

        const mean_std ms = sample_mean_std(series.values);
        GainStd out;
        out.std_linear = ms.std;
        out.std_db = db10(ms.std);
        return out;
    }

    double hardening_delta_db(double endpoint_db, double start_db)
    {
        if (std::isinf(endpoint_db) && std::isinf(start_db))
            return 0.0;
        return endpoint_db - start_db;
    }

    // For a prefix of size m with per-(n,f) raw energy E_m(n,f) = sum_{j<m} |h_j|^2
    // and total T_m = sum_{n,f} E_m, the normalized subset gain is
    //   G_m(n,f) = N F * E_m(n,f) / T_m,
    // identical to normalize -> subset_gain on that prefix. One sweep over the
    // antennas in selection order therefore yields the whole curve.
    HardeningCurve hardening_curve(const ChannelTensor &tensor, std::size_t user,
                                   const SubsetSelection &order)
    {
        if (user >= tensor.users())
            throw invariant_error("user index out of range");
        order.validate(tensor.antennas());

        const std::size_t freqs = tensor.freqs();
        const std::size_t n_valid = tensor.valid_snapshot_count(user);
        const std::size_t samples = n_valid * freqs;
        if (samples < 2)
            throw invariant_error("hardening_curve: need at least two (snapshot, frequency) samples");

        std::vector<std::size_t> valid_rows;
        valid_rows.reserve(n_valid);
        for (std::size_t n = 0; n < tensor.snapshots(); ++n)
            if (tensor.snapshot_is_valid(user, n))
                valid_rows.push_back(n);

        std::vector<double> energy(samples, 0.0);
        std::vector<double> gain(samples);

        HardeningCurve curve;
        curve.order = order.order;
        curve.std_db.reserve(order.size());

        for (std::size_t prefix = 0; prefix < order.size(); ++prefix)
        {
            const std::size_t m = order.indices[prefix];
            std::size_t row = 0;
            for (std::size_t n : valid_rows)
                for (std::size_t f = 0; f < freqs; ++f, ++row)
                    energy[row] += std::norm(tensor(user, n, f, m));

            const double total = pairwise_sum(energy);
            if (!(total > 0.0))
                throw data_error("hardening_curve: zero-energy prefix of size " +
                                     std::to_string(prefix + 1),
                                 data_error_code::zero_energy);

            const double scale = static_cast<double>(samples) / total;
            for (std::size_t s = 0; s < samples; ++s)
                gain[s] = energy[s] * scale;

            curve.std_db.push_back(db10(sample_mean_std(gain).std));
        }

        curve.hardening_db = hardening_delta_db(curve.std_db.back(), curve.std_db.front());
        return curve;
    }

    HardeningCurve hardening_curve(const ChannelTensor &tensor, std::size_t user,
                                   std::span<const SubsetSelection> per_size)
    {
        if (per_size.empty())
            throw invariant_error("hardening_curve: no subsets given");

        const SubsetSelection &full = per_size.back();
        if (full.size() != per_size.size())
            throw invariant_error("hardening_curve: subset sizes must be 1..M_max");

        for (std::size_t i = 0; i < per_size.size(); ++i)
        {
            if (per_size[i].size() != i + 1)
                throw invariant_error("hardening_curve: subset " + std::to_string(i) +
                                      " has size " + std::to_string(per_size[i].size()) +
                                      ", expected " + std::to_string(i + 1));
            for (std::size_t j = 0; j <= i; ++j)
                if (per_size[i].indices[j] != full.indices[j])
                    throw invariant_error("hardening_curve: subsets are not prefixes of one ordered selection");
        }
        return hardening_curve(tensor, user, full);
    }

} // namespace mcht
