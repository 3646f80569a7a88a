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

// Measurement-style analysis on channel tensors: antenna selection orders,
// hardening curves per order, gain CDFs against the Rayleigh reference,
// per-antenna gain maps, time/frequency gain spreads, polarization ratio
// statistics and cross-run aggregation.

#ifndef MCHT_ANALYSIS_HPP
#define MCHT_ANALYSIS_HPP

#include <functional>
#include <span>
#include <vector>

#include "mcht/arrays.hpp"
#include "mcht/channel_tensor.hpp"
#include "mcht/hardening.hpp"

namespace mcht
{

    // Per-antenna average linear gain over all valid snapshots and
    // frequencies; ranking always happens on this linear-power average.
    std::vector<double> antenna_avg_gain(const ChannelTensor &tensor, std::size_t user);

    // Builds the antenna visiting order for a selection kind. Gain ties are
    // broken by ascending antenna index. Polarization-restricted kinds need
    // the array geometry; both_alternating picks one polarization per
    // co-located position, alternating and starting with vertical.
    SubsetSelection order_antennas(const ChannelTensor &tensor, std::size_t user, OrderKind kind,
                                   const ArrayGeometry *geometry = nullptr);

    // order_antennas followed by the prefix hardening curve.
    HardeningCurve hardening_curve(const ChannelTensor &tensor, std::size_t user, OrderKind kind,
                                   const ArrayGeometry *geometry = nullptr);

    // Right-continuous step CDF over gain in dB. Gains are floored at
    // -100 dB so zero samples stay on the axis.
    struct EmpiricalCdf
    {
        std::vector<double> x_db; // ascending, unique
        std::vector<double> prob; // P(X <= x_db[i])

        double operator()(double x) const;
    };

    EmpiricalCdf empirical_cdf(const GainSeries &series);

    // Closed-form CDF of an exponential(lambda=1) gain evaluated at a dB
    // abscissa: 1 - exp(-10^(x/10)). The reference a Rayleigh channel's
    // normalized gain follows at M = 1.
    double exponential_reference_cdf_db(double x_db);

    // Kolmogorov-Smirnov sup distance between a step CDF and a continuous
    // reference, evaluated on both sides of every step.
    double ks_distance(const EmpiricalCdf &cdf, const std::function<double(double)> &reference);

    struct GainMap
    {
        std::vector<double> gain_db;  // un-normalized, per antenna
        std::size_t median_antenna;   // lowest index attaining the lower-median gain
    };

    GainMap gain_map(const ChannelTensor &tensor, std::size_t user);

    struct GainSpread
    {
        double time_spread_db = 0.0; // max-min over snapshots, averaged over frequency
        double freq_spread_db = 0.0; // max-min over frequency, averaged over snapshots
    };

    GainSpread time_freq_spread(const ChannelTensor &tensor, std::size_t user,
                                const SubsetSelection &subset);

    struct PolRatioStats
    {
        double mean_db = 0.0;
        double std_db = 0.0;
        std::size_t samples = 0; // (snapshot, frequency, pair) triples used
    };

    // V-over-H gain ratio in dB per (snapshot, frequency, co-located pair).
    // Samples where either polarization has exactly zero power are skipped.
    PolRatioStats pol_ratio_stats(const ChannelTensor &tensor, std::size_t user,
                                  const ArrayGeometry &geometry);

    // Step-wise change of std_db with subset size; entry i is the move from
    // size i+1 to size i+2 (non-positive for a monotone hardening curve).
    std::vector<double> curve_delta(const HardeningCurve &curve);

    // Arithmetic mean of std_db across curves at each size. All curves must
    // share a length; the order label survives only if they all agree.
    HardeningCurve average_curves(std::span<const HardeningCurve> curves);

    struct ScenarioSummary
    {
        double mean_gain_db = 0.0; // over all (user, antenna) average gains
        double max_gain_db = 0.0;
    };

    ScenarioSummary scenario_summary(const ChannelTensor &tensor);

    struct UserHardeningRank
    {
        std::vector<double> hardening_db; // per user
        std::size_t most_hardening = 0;   // smallest (most negative) value
        std::size_t least_hardening = 0;
    };

    UserHardeningRank rank_users_by_hardening(const ChannelTensor &tensor, OrderKind kind,
                                              const ArrayGeometry *geometry = nullptr);

} // namespace mcht

#endif
