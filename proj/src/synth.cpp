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

#include "mcht/synth.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <thread>

#include "mcht/errors.hpp"
#include "mcht/rng.hpp"

namespace mcht
{

    void PathSet::validate() const
    {
        if (paths.empty())
            throw invariant_error("PathSet: need at least one path");
        for (const Path &p : paths)
        {
            if (!(p.delay_s >= 0.0))
                throw invariant_error("PathSet: negative path delay");
            if (!std::isfinite(p.gain.real()) || !std::isfinite(p.gain.imag()))
                throw invariant_error("PathSet: non-finite path gain");
            if (std::abs(norm3(p.direction) - 1.0) > 1e-6)
                throw invariant_error("PathSet: direction must be a unit vector");
        }
    }

    namespace
    {
        void check_dims(std::size_t users, std::size_t snapshots, std::size_t freqs,
                        std::size_t antennas)
        {
            if (users < 1 || snapshots < 1 || freqs < 1 || antennas < 1)
                throw invariant_error("channel generator: all dimensions must be >= 1");
        }
    } // namespace

    ChannelTensor gen_iid_gaussian(std::size_t users, std::size_t snapshots, std::size_t freqs,
                                   std::size_t antennas, std::uint64_t seed)
    {
        check_dims(users, snapshots, freqs, antennas);

        std::vector<cplx> samples(users * snapshots * freqs * antennas);
        const std::size_t block = snapshots * freqs * antennas;
        for (std::size_t k = 0; k < users; ++k)
        {
            rng_stream rng = rng_stream(seed).derive(k);
            for (std::size_t i = 0; i < block; ++i)
                samples[k * block + i] = rng.cnormal();
        }

        ChannelMeta meta;
        meta.scenario_label = "iid_gaussian";
        return ChannelTensor(users, snapshots, freqs, antennas, std::move(samples), meta);
    }

    ChannelTensor gen_keyhole(std::size_t snapshots, std::size_t freqs, std::size_t antennas,
                              std::uint64_t seed)
    {
        check_dims(1, snapshots, freqs, antennas);

        std::vector<cplx> samples;
        samples.reserve(snapshots * freqs * antennas);
        rng_stream rng(seed);
        for (std::size_t n = 0; n < snapshots; ++n)
            for (std::size_t f = 0; f < freqs; ++f)
            {
                const cplx g = rng.cnormal();
                for (std::size_t m = 0; m < antennas; ++m)
                    samples.push_back(g * rng.cnormal());
            }

        ChannelMeta meta;
        meta.scenario_label = "keyhole";
        return ChannelTensor(1, snapshots, freqs, antennas, std::move(samples), meta);
    }

    PathSet draw_path_set(std::size_t paths, rng_stream &rng, double tau_max_s)
    {
        if (paths < 1)
            throw invariant_error("draw_path_set: need at least one path");
        if (!(tau_max_s >= 0.0))
            throw invariant_error("draw_path_set: tau_max must be non-negative");

        PathSet set;
        set.paths.resize(paths);
        for (Path &p : set.paths)
        {
            p.gain = rng.cnormal();
            p.direction = rng.unit_sphere();
            p.delay_s = rng.uniform(0.0, tau_max_s);
            p.pol = {cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(1.0, 0.0)};
        }
        return set;
    }

    ChannelTensor gen_finite_scatterer(std::size_t paths, const ArrayGeometry &geometry,
                                       std::size_t snapshots, std::size_t freqs,
                                       std::uint64_t seed, double bandwidth_hz, double tau_max_s)
    {
        geometry.validate();
        const std::size_t antennas = geometry.size();
        check_dims(1, snapshots, freqs, antennas);
        if (paths < 1)
            throw invariant_error("gen_finite_scatterer: need at least one path");
        if (!(bandwidth_hz > 0.0))
            throw invariant_error("gen_finite_scatterer: bandwidth must be positive");

        const double k_wave = two_pi * geometry.carrier_freq_hz / speed_of_light;
        const double f_step = freqs > 1 ? bandwidth_hz / static_cast<double>(freqs - 1) : 0.0;
        const double f_base = freqs > 1 ? -0.5 * bandwidth_hz : 0.0;

        std::vector<cplx> samples(snapshots * freqs * antennas, cplx(0.0, 0.0));
        std::vector<cplx> steer(paths * antennas);

        for (std::size_t n = 0; n < snapshots; ++n)
        {
            rng_stream rng = rng_stream(seed).derive(n);
            const PathSet set = draw_path_set(paths, rng, tau_max_s);

            for (std::size_t p = 0; p < paths; ++p)
                for (std::size_t m = 0; m < antennas; ++m)
                    steer[p * antennas + m] = std::polar(
                        1.0, -k_wave * dot(geometry.elements[m].position, set.paths[p].direction));

            cplx *snap = samples.data() + n * freqs * antennas;
            for (std::size_t f = 0; f < freqs; ++f)
            {
                const double f_off = f_base + f_step * static_cast<double>(f);
                cplx *row = snap + f * antennas;
                for (std::size_t p = 0; p < paths; ++p)
                {
                    const cplx w = set.paths[p].gain *
                                   std::polar(1.0, -two_pi * f_off * set.paths[p].delay_s);
                    const cplx *a = steer.data() + p * antennas;
                    for (std::size_t m = 0; m < antennas; ++m)
                        row[m] += w * a[m];
                }
            }
        }

        ChannelMeta meta;
        meta.carrier_freq_hz = geometry.carrier_freq_hz;
        meta.bandwidth_hz = bandwidth_hz;
        meta.scenario_label = "finite_scatterer_p" + std::to_string(paths);
        meta.array_id = geometry.array_id;
        return ChannelTensor(1, snapshots, freqs, antennas, std::move(samples), meta);
    }

    void RunPlan::validate() const
    {
        if (runs < 1)
            throw invariant_error("RunPlan: need at least one run");
    }

    std::uint64_t RunPlan::run_seed(std::size_t run) const
    {
        return rng_stream(base_seed).derive(run).key();
    }

    EnsembleResult run_ensemble(
        const RunPlan &plan,
        const std::function<ChannelTensor(std::size_t run, std::uint64_t run_seed)> &generate,
        const std::function<SubsetSelection(const ChannelTensor &, std::size_t user)> &order)
    {
        plan.validate();
        if (!generate || !order)
            throw invariant_error("run_ensemble: generator and order callbacks required");

        std::size_t workers = plan.max_parallel != 0
                                  ? plan.max_parallel
                                  : std::max<std::size_t>(1, std::thread::hardware_concurrency());
        workers = std::min(workers, plan.runs);

        std::vector<std::vector<HardeningCurve>> per_run(plan.runs);
        std::atomic<std::size_t> next{0};

        auto work = [&]()
        {
            for (;;)
            {
                const std::size_t r = next.fetch_add(1);
                if (r >= plan.runs)
                    return;
                const ChannelTensor tensor = generate(r, plan.run_seed(r));
                std::vector<HardeningCurve> curves;
                curves.reserve(tensor.users());
                for (std::size_t k = 0; k < tensor.users(); ++k)
                    curves.push_back(hardening_curve(tensor, k, order(tensor, k)));
                per_run[r] = std::move(curves);
            }
        };

        std::vector<std::future<void>> futures;
        for (std::size_t w = 1; w < workers; ++w)
            futures.push_back(std::async(std::launch::async, work));
        work();
        for (auto &f : futures)
            f.get();

        EnsembleResult result;
        for (auto &curves : per_run)
            for (auto &c : curves)
                result.run_curves.push_back(std::move(c));
        if (result.run_curves.empty())
            throw invariant_error("run_ensemble: no curves produced");

        const std::size_t len = result.run_curves.front().max_size();
        bool same_order = true;
        for (const HardeningCurve &c : result.run_curves)
        {
            if (c.max_size() != len)
                throw invariant_error("run_ensemble: runs disagree on antenna count");
            same_order = same_order && c.order == result.run_curves.front().order;
        }

        result.mean_curve.order = same_order ? result.run_curves.front().order
                                             : OrderKind::explicit_order;
        result.mean_curve.std_db.resize(len);
        const double inv = 1.0 / static_cast<double>(result.run_curves.size());
        for (std::size_t i = 0; i < len; ++i)
        {
            double s = 0.0;
            for (const HardeningCurve &c : result.run_curves)
                s += c.std_db[i];
            result.mean_curve.std_db[i] = s * inv;
        }
        result.mean_curve.hardening_db =
            hardening_delta_db(result.mean_curve.std_db.back(), result.mean_curve.std_db.front());
        return result;
    }

} // namespace mcht
