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

#include "mcht/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "mcht/errors.hpp"

namespace mcht
{

    namespace
    {
        constexpr double cdf_floor_db = -100.0;

        double floored_db(double linear)
        {
            return std::max(db10(linear), cdf_floor_db);
        }
    } // namespace

    std::vector<double> antenna_avg_gain(const ChannelTensor &tensor, std::size_t user)
    {
        if (user >= tensor.users())
            throw invariant_error("user index out of range");

        const std::size_t antennas = tensor.antennas();
        std::vector<double> sums(antennas, 0.0);
        std::size_t rows = 0;
        for (std::size_t n = 0; n < tensor.snapshots(); ++n)
        {
            if (!tensor.snapshot_is_valid(user, n))
                continue;
            ++rows;
            for (std::size_t f = 0; f < tensor.freqs(); ++f)
            {
                const std::size_t base = tensor.index(user, n, f, 0);
                const auto samples = tensor.samples();
                for (std::size_t m = 0; m < antennas; ++m)
                    sums[m] += std::norm(samples[base + m]);
            }
        }

        const double inv = 1.0 / static_cast<double>(rows * tensor.freqs());
        for (double &s : sums)
            s *= inv;
        return sums;
    }

    namespace
    {
        std::vector<std::size_t> indices_by_gain(const std::vector<double> &gain, bool descending)
        {
            std::vector<std::size_t> idx(gain.size());
            for (std::size_t i = 0; i < idx.size(); ++i)
                idx[i] = i;
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b)
                             {
                                 if (gain[a] != gain[b])
                                     return descending ? gain[a] > gain[b] : gain[a] < gain[b];
                                 return a < b;
                             });
            return idx;
        }

        const ArrayGeometry &require_geometry(const ArrayGeometry *geometry,
                                              const ChannelTensor &tensor, OrderKind kind)
        {
            if (geometry == nullptr)
                throw usage_error("selection order '" + order_kind_name(kind) +
                                  "' needs array geometry with polarization tags");
            if (geometry->size() != tensor.antennas())
                throw invariant_error("geometry element count does not match tensor antennas");
            return *geometry;
        }
    } // namespace

    SubsetSelection order_antennas(const ChannelTensor &tensor, std::size_t user, OrderKind kind,
                                   const ArrayGeometry *geometry)
    {
        if (user >= tensor.users())
            throw invariant_error("user index out of range");

        SubsetSelection sel;
        sel.order = kind;
        switch (kind)
        {
        case OrderKind::original:
            sel.indices.resize(tensor.antennas());
            for (std::size_t m = 0; m < tensor.antennas(); ++m)
                sel.indices[m] = m;
            break;
        case OrderKind::strongest_first:
            sel.indices = indices_by_gain(antenna_avg_gain(tensor, user), true);
            break;
        case OrderKind::weakest_first:
            sel.indices = indices_by_gain(antenna_avg_gain(tensor, user), false);
            break;
        case OrderKind::vertical_only:
            sel.indices = require_geometry(geometry, tensor, kind).indices_of(Polarization::vertical);
            break;
        case OrderKind::horizontal_only:
            sel.indices = require_geometry(geometry, tensor, kind).indices_of(Polarization::horizontal);
            break;
        case OrderKind::both_alternating:
        {
            const auto pairs = require_geometry(geometry, tensor, kind).pol_pairs();
            sel.indices.reserve(pairs.size());
            for (std::size_t i = 0; i < pairs.size(); ++i)
                sel.indices.push_back(i % 2 == 0 ? pairs[i].first : pairs[i].second);
            break;
        }
        case OrderKind::explicit_order:
            throw usage_error("explicit_order cannot be generated; supply indices directly");
        }

        sel.validate(tensor.antennas());
        return sel;
    }

    HardeningCurve hardening_curve(const ChannelTensor &tensor, std::size_t user, OrderKind kind,
                                   const ArrayGeometry *geometry)
    {
        return hardening_curve(tensor, user, order_antennas(tensor, user, kind, geometry));
    }

    double EmpiricalCdf::operator()(double x) const
    {
        const auto it = std::upper_bound(x_db.begin(), x_db.end(), x);
        if (it == x_db.begin())
            return 0.0;
        return prob[static_cast<std::size_t>(it - x_db.begin()) - 1];
    }

    EmpiricalCdf empirical_cdf(const GainSeries &series)
    {
        if (series.values.empty())
            throw invariant_error("empirical_cdf: empty series");

        std::vector<double> xs;
        xs.reserve(series.values.size());
        for (double v : series.values)
            xs.push_back(floored_db(v));
        std::sort(xs.begin(), xs.end());

        EmpiricalCdf cdf;
        const double inv_n = 1.0 / static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            if (!cdf.x_db.empty() && cdf.x_db.back() == xs[i])
                cdf.prob.back() = static_cast<double>(i + 1) * inv_n;
            else
            {
                cdf.x_db.push_back(xs[i]);
                cdf.prob.push_back(static_cast<double>(i + 1) * inv_n);
            }
        }
        return cdf;
    }

    double exponential_reference_cdf_db(double x_db)
    {
        return 1.0 - std::exp(-db10_inv(x_db));
    }

    double ks_distance(const EmpiricalCdf &cdf, const std::function<double(double)> &reference)
    {
        if (cdf.x_db.empty())
            throw invariant_error("ks_distance: empty CDF");

        double sup = 0.0;
        double prev = 0.0;
        for (std::size_t i = 0; i < cdf.x_db.size(); ++i)
        {
            const double ref = reference(cdf.x_db[i]);
            sup = std::max(sup, std::abs(cdf.prob[i] - ref));
            sup = std::max(sup, std::abs(prev - ref));
            prev = cdf.prob[i];
        }
        return sup;
    }

    GainMap gain_map(const ChannelTensor &tensor, std::size_t user)
    {
        const std::vector<double> gains = antenna_avg_gain(tensor, user);

        GainMap map;
        map.gain_db.reserve(gains.size());
        for (double g : gains)
            map.gain_db.push_back(db10(g));

        // Lower-median gain value, then the lowest antenna index holding it.
        std::vector<double> sorted = map.gain_db;
        std::nth_element(sorted.begin(), sorted.begin() + (sorted.size() - 1) / 2, sorted.end());
        const double median = sorted[(sorted.size() - 1) / 2];
        map.median_antenna = static_cast<std::size_t>(
            std::find(map.gain_db.begin(), map.gain_db.end(), median) - map.gain_db.begin());
        return map;
    }

    GainSpread time_freq_spread(const ChannelTensor &tensor, std::size_t user,
                                const SubsetSelection &subset)
    {
        const GainSeries series = subset_gain(normalize(tensor, user, subset));
        const std::size_t ns = series.snapshots;
        const std::size_t nf = series.freqs;
        if (ns < 1 || nf < 1)
            throw invariant_error("time_freq_spread: empty gain series");

        GainSpread spread;
        for (std::size_t f = 0; f < nf; ++f)
        {
            double lo = floored_db(series.value(0, f));
            double hi = lo;
            for (std::size_t n = 1; n < ns; ++n)
            {
                const double v = floored_db(series.value(n, f));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            spread.time_spread_db += hi - lo;
        }
        spread.time_spread_db /= static_cast<double>(nf);

        for (std::size_t n = 0; n < ns; ++n)
        {
            double lo = floored_db(series.value(n, 0));
            double hi = lo;
            for (std::size_t f = 1; f < nf; ++f)
            {
                const double v = floored_db(series.value(n, f));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            spread.freq_spread_db += hi - lo;
        }
        spread.freq_spread_db /= static_cast<double>(ns);
        return spread;
    }

    PolRatioStats pol_ratio_stats(const ChannelTensor &tensor, std::size_t user,
                                  const ArrayGeometry &geometry)
    {
        if (user >= tensor.users())
            throw invariant_error("user index out of range");
        if (geometry.size() != tensor.antennas())
            throw invariant_error("geometry element count does not match tensor antennas");

        const auto pairs = geometry.pol_pairs();
        std::vector<double> ratios;
        ratios.reserve(tensor.valid_snapshot_count(user) * tensor.freqs() * pairs.size());

        for (std::size_t n = 0; n < tensor.snapshots(); ++n)
        {
            if (!tensor.snapshot_is_valid(user, n))
                continue;
            for (std::size_t f = 0; f < tensor.freqs(); ++f)
                for (const auto &[v, h] : pairs)
                {
                    const double pv = std::norm(tensor(user, n, f, v));
                    const double ph = std::norm(tensor(user, n, f, h));
                    if (pv > 0.0 && ph > 0.0)
                        ratios.push_back(10.0 * std::log10(pv / ph));
                }
        }

        if (ratios.empty())
            throw data_error("pol_ratio_stats: no usable (V, H) samples");

        const mean_std ms = sample_mean_std(ratios);
        PolRatioStats stats;
        stats.mean_db = ms.mean;
        stats.std_db = ms.std;
        stats.samples = ratios.size();
        return stats;
    }

    std::vector<double> curve_delta(const HardeningCurve &curve)
    {
        if (curve.max_size() < 2)
            throw invariant_error("curve_delta: need a curve over at least two sizes");
        std::vector<double> delta(curve.max_size() - 1);
        for (std::size_t i = 0; i + 1 < curve.max_size(); ++i)
            delta[i] = curve.std_db[i + 1] - curve.std_db[i];
        return delta;
    }

    HardeningCurve average_curves(std::span<const HardeningCurve> curves)
    {
        if (curves.empty())
            throw invariant_error("average_curves: no curves");

        const std::size_t len = curves.front().max_size();
        bool same_order = true;
        for (const HardeningCurve &c : curves)
        {
            if (c.max_size() != len)
                throw invariant_error("average_curves: curves disagree on length");
            same_order = same_order && c.order == curves.front().order;
        }

        HardeningCurve mean;
        mean.order = same_order ? curves.front().order : OrderKind::explicit_order;
        mean.std_db.resize(len);
        const double inv = 1.0 / static_cast<double>(curves.size());
        for (std::size_t i = 0; i < len; ++i)
        {
            double s = 0.0;
            for (const HardeningCurve &c : curves)
                s += c.std_db[i];
            mean.std_db[i] = s * inv;
        }
        mean.hardening_db = hardening_delta_db(mean.std_db.back(), mean.std_db.front());
        return mean;
    }

    ScenarioSummary scenario_summary(const ChannelTensor &tensor)
    {
        double sum = 0.0;
        double peak = neg_inf;
        std::size_t count = 0;
        for (std::size_t k = 0; k < tensor.users(); ++k)
        {
            for (double g : antenna_avg_gain(tensor, k))
            {
                sum += g;
                peak = std::max(peak, g);
                ++count;
            }
        }

        ScenarioSummary summary;
        summary.mean_gain_db = db10(sum / static_cast<double>(count));
        summary.max_gain_db = db10(peak);
        return summary;
    }

    UserHardeningRank rank_users_by_hardening(const ChannelTensor &tensor, OrderKind kind,
                                              const ArrayGeometry *geometry)
    {
        UserHardeningRank rank;
        rank.hardening_db.reserve(tensor.users());
        for (std::size_t k = 0; k < tensor.users(); ++k)
            rank.hardening_db.push_back(hardening_curve(tensor, k, kind, geometry).hardening_db);

        for (std::size_t k = 1; k < rank.hardening_db.size(); ++k)
        {
            if (rank.hardening_db[k] < rank.hardening_db[rank.most_hardening])
                rank.most_hardening = k;
            if (rank.hardening_db[k] > rank.hardening_db[rank.least_hardening])
                rank.least_hardening = k;
        }
        return rank;
    }

} // namespace mcht
