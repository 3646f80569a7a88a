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

// Reference channel generators. All of them are pure functions of
// (parameters, seed): rerunning with the same arguments is bit-identical on
// any platform.

#ifndef MCHT_SYNTH_HPP
#define MCHT_SYNTH_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "mcht/arrays.hpp"
#include "mcht/channel_tensor.hpp"
#include "mcht/hardening.hpp"
#include "mcht/rng.hpp"
#include "mcht/util.hpp"

namespace mcht
{

    // One physical propagation path.
    struct Path
    {
        cplx gain{};               // CN(0,1) by default
        vec3 direction{};          // unit departure direction
        double delay_s = 0.0;
        std::array<cplx, 4> pol{}; // 2x2 mixing, row-major (vv, vh, hv, hh)
    };

    struct PathSet
    {
        std::vector<Path> paths;
        void validate() const;
    };

    // Every sample independent CN(0,1) across users, snapshots, frequencies
    // and antennas.
    ChannelTensor gen_iid_gaussian(std::size_t users, std::size_t snapshots, std::size_t freqs,
                                   std::size_t antennas, std::uint64_t seed);

    // Degenerate single-bottleneck channel h_m(n,f) = g(n,f) a_m(n,f): the
    // shared scalar keeps the gain variance from averaging out, so growing M
    // buys almost no hardening.
    ChannelTensor gen_keyhole(std::size_t snapshots, std::size_t freqs, std::size_t antennas,
                              std::uint64_t seed);

    // Finite-scatterer ensemble: each snapshot is an independent redraw of P
    // paths with CN(0,1) gains, directions uniform on the sphere and delays
    // uniform in [0, tau_max]. H_m(f) = sum_p c_p a_m(dir_p) exp(-j2pi f tau_p)
    // with f the baseband offset across the bandwidth.
    ChannelTensor gen_finite_scatterer(std::size_t paths, const ArrayGeometry &geometry,
                                       std::size_t snapshots, std::size_t freqs,
                                       std::uint64_t seed, double bandwidth_hz = 40e6,
                                       double tau_max_s = 500e-9);

    // Independent paths for one finite-scatterer draw; exposed for tests.
    PathSet draw_path_set(std::size_t paths, rng_stream &rng, double tau_max_s);

    struct RunPlan
    {
        std::size_t runs = 10;
        std::uint64_t base_seed = 1;
        std::size_t max_parallel = 0; // 0 picks the hardware concurrency

        void validate() const;
        std::uint64_t run_seed(std::size_t run) const;
    };

    struct EnsembleResult
    {
        HardeningCurve mean_curve; // std_db averaged arithmetically per size
        std::vector<HardeningCurve> run_curves;
    };

    // Runs `generate` once per run (parallel across runs), orders antennas
    // per user with `order`, and averages the per-user hardening curves.
    EnsembleResult run_ensemble(
        const RunPlan &plan,
        const std::function<ChannelTensor(std::size_t run, std::uint64_t run_seed)> &generate,
        const std::function<SubsetSelection(const ChannelTensor &, std::size_t user)> &order);

} // namespace mcht

#endif
