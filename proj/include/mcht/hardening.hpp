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

#ifndef MCHT_HARDENING_HPP
#define MCHT_HARDENING_HPP

#include <span>
#include <vector>

#include "mcht/channel_tensor.hpp"

namespace mcht
{

    // One user's channel over an antenna subset, masked snapshots dropped.
    // Layout: snapshot-major, then frequency, then antenna.
    struct ChannelBlock
    {
        std::size_t snapshots = 0;
        std::size_t freqs = 0;
        std::size_t antennas = 0;
        std::vector<cplx> samples;
        double applied_scale = 1.0; // the single positive scalar 1/c applied by normalize

        cplx at(std::size_t n, std::size_t f, std::size_t m) const
        {
            return samples[(n * freqs + f) * antennas + m];
        }
    };

    // Extract the (user, subset) block without scaling. Masked snapshots are
    // removed, so block.snapshots is the number of valid snapshots.
    ChannelBlock extract_block(const ChannelTensor &tensor, std::size_t user,
                               const SubsetSelection &subset);

    // Scale a block by the single scalar that makes (1/(N F M)) sum |h|^2 = 1.
    // Throws data_error(zero_energy) if the block has no energy.
    ChannelBlock normalize(ChannelBlock block);

    ChannelBlock normalize(const ChannelTensor &tensor, std::size_t user,
                           const SubsetSelection &subset);

    // G(n,f) = (1/M) sum_m |h(n,f,m)|^2 over the block's antennas.
    GainSeries subset_gain(const ChannelBlock &block);

    struct GainStd
    {
        double std_linear = 0.0;
        double std_db = neg_inf; // -inf sentinel when std_linear == 0
    };

    // Std of the gain series about its mean, 1/(N F) convention.
    // Requires at least two (n,f) samples.
    GainStd std_gain(const GainSeries &series);

    // Std-of-gain curve over prefix subsets 1..order.size() of one ordered
    // selection, each prefix normalized independently. Exactly equivalent to
    // composing normalize -> subset_gain -> std_gain per prefix, but computed
    // in one pass over prefix energies.
    HardeningCurve hardening_curve(const ChannelTensor &tensor, std::size_t user,
                                   const SubsetSelection &order);

    // Same, from explicit per-size subsets. The subsets must form a prefix
    // chain of one ordered selection (sizes 1..M_max); anything else throws.
    HardeningCurve hardening_curve(const ChannelTensor &tensor, std::size_t user,
                                   std::span<const SubsetSelection> per_size);

    // hardening_db with the -inf sentinel collapsed: two -inf endpoints give 0.
    double hardening_delta_db(double endpoint_db, double start_db);

} // namespace mcht

#endif
