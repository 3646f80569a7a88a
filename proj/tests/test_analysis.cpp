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

#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "mcht/analysis.hpp"
#include "mcht/errors.hpp"
#include "mcht/rng.hpp"
#include "mcht/synth.hpp"

using namespace mcht;

namespace
{

    // Tensor whose antenna m has constant amplitude amp[m] everywhere.
    ChannelTensor amplitude_tensor(const std::vector<double> &amp, std::size_t snapshots = 3,
                                   std::size_t freqs = 2)
    {
        std::vector<cplx> samples;
        samples.reserve(snapshots * freqs * amp.size());
        for (std::size_t n = 0; n < snapshots; ++n)
            for (std::size_t f = 0; f < freqs; ++f)
                for (double a : amp)
                    samples.emplace_back(a, 0.0);
        return ChannelTensor(1, snapshots, freqs, amp.size(), std::move(samples));
    }

    // Two-element toy geometry per position: even index vertical, odd
    // horizontal, co-located.
    ArrayGeometry paired_geometry(std::size_t positions)
    {
        ArrayGeometry geo;
        geo.array_id = "paired_toy";
        geo.carrier_freq_hz = 1e9;
        geo.wavelength_m = speed_of_light / 1e9;
        for (std::size_t i = 0; i < positions; ++i)
        {
            for (int pol = 0; pol < 2; ++pol)
            {
                ArrayElement e;
                e.position = {0.0, 0.0, double(i) * geo.wavelength_m / 2.0};
                e.boresight = {1.0, 0.0, 0.0};
                e.polarization = pol == 0 ? Polarization::vertical : Polarization::horizontal;
                e.port = 2 * i + pol + 1;
                geo.elements.push_back(e);
            }
        }
        return geo;
    }

}

TEST_CASE("antenna ranking orders by average gain with index tie break")
{
    const ChannelTensor t = amplitude_tensor({1.0, 3.0, 2.0, 3.0});

    const SubsetSelection strongest = order_antennas(t, 0, OrderKind::strongest_first);
    CHECK(strongest.indices == std::vector<std::size_t>{1, 3, 2, 0});
    CHECK(strongest.order == OrderKind::strongest_first);

    const SubsetSelection weakest = order_antennas(t, 0, OrderKind::weakest_first);
    CHECK(weakest.indices == std::vector<std::size_t>{0, 2, 1, 3});

    const SubsetSelection original = order_antennas(t, 0, OrderKind::original);
    CHECK(original.indices == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("strongest and weakest are exact reversals for distinct gains")
{
    const ChannelTensor t = amplitude_tensor({1.0, 3.0, 2.0, 2.5});
    std::vector<std::size_t> s = order_antennas(t, 0, OrderKind::strongest_first).indices;
    const std::vector<std::size_t> w = order_antennas(t, 0, OrderKind::weakest_first).indices;
    std::reverse(s.begin(), s.end());
    CHECK(s == w);
}

TEST_CASE("constant tensor orders equal ascending port index")
{
    const ChannelTensor t = amplitude_tensor({1.0, 1.0, 1.0});
    const std::vector<std::size_t> want = {0, 1, 2};
    CHECK(order_antennas(t, 0, OrderKind::strongest_first).indices == want);
    CHECK(order_antennas(t, 0, OrderKind::weakest_first).indices == want);
}

TEST_CASE("polarization restricted orders")
{
    const ArrayGeometry geo = paired_geometry(3); // elements V H V H V H
    const ChannelTensor t = amplitude_tensor({1.0, 2.0, 5.0, 6.0, 3.0, 4.0});

    const SubsetSelection v = order_antennas(t, 0, OrderKind::vertical_only, &geo);
    CHECK(v.indices == std::vector<std::size_t>{0, 2, 4}); // port order within polarization
    const SubsetSelection h = order_antennas(t, 0, OrderKind::horizontal_only, &geo);
    CHECK(h.indices == std::vector<std::size_t>{1, 3, 5});

    const SubsetSelection both = order_antennas(t, 0, OrderKind::both_alternating, &geo);
    CHECK(both.indices.size() == 3); // one element per co-located position
    // alternates V, H, V over the position-sorted pairs
    CHECK(both.indices == std::vector<std::size_t>{0, 3, 4});

    CHECK_THROWS_AS(order_antennas(t, 0, OrderKind::vertical_only), usage_error);
    CHECK_THROWS_AS(order_antennas(t, 0, OrderKind::explicit_order), usage_error);
}

TEST_CASE("order kind names round-trip")
{
    for (OrderKind k : {OrderKind::original, OrderKind::strongest_first, OrderKind::weakest_first,
                        OrderKind::vertical_only, OrderKind::horizontal_only,
                        OrderKind::both_alternating, OrderKind::explicit_order})
        CHECK(order_kind_from_name(order_kind_name(k)) == k);
    CHECK_THROWS_AS(order_kind_from_name("strangest_first"), usage_error);
}

TEST_CASE("curve endpoints agree for full-set orders")
{
    const ChannelTensor t = gen_iid_gaussian(1, 20, 6, 7, 44);
    const HardeningCurve a = hardening_curve(t, 0, OrderKind::original);
    const HardeningCurve b = hardening_curve(t, 0, OrderKind::strongest_first);
    const HardeningCurve c = hardening_curve(t, 0, OrderKind::weakest_first);
    CHECK(a.std_db.back() == doctest::Approx(b.std_db.back()).epsilon(1e-12));
    CHECK(a.std_db.back() == doctest::Approx(c.std_db.back()).epsilon(1e-12));
}

TEST_CASE("empirical cdf is a right-continuous step function")
{
    GainSeries s;
    s.snapshots = 1;
    s.freqs = 4;
    s.subset_size = 1;
    s.values = {1.0, 1.0, 4.0, 0.25}; // 0 dB, 0 dB, ~6 dB, ~-6 dB

    const EmpiricalCdf cdf = empirical_cdf(s);
    REQUIRE(cdf.x_db.size() == 3); // duplicates merge
    CHECK(cdf.prob.back() == doctest::Approx(1.0));
    CHECK(cdf(cdf.x_db[0] - 1.0) == 0.0);
    CHECK(cdf(cdf.x_db[0]) == doctest::Approx(0.25));
    CHECK(cdf(0.0) == doctest::Approx(0.75));
    CHECK(cdf(100.0) == doctest::Approx(1.0));
    // ascending, unique
    for (std::size_t i = 1; i < cdf.x_db.size(); ++i)
        CHECK(cdf.x_db[i] > cdf.x_db[i - 1]);
}

TEST_CASE("zero gains land on the -100 dB floor")
{
    GainSeries s;
    s.snapshots = 1;
    s.freqs = 3;
    s.subset_size = 1;
    s.values = {0.0, 1.0, 2.0};
    const EmpiricalCdf cdf = empirical_cdf(s);
    CHECK(cdf.x_db.front() == doctest::Approx(-100.0));
    CHECK(cdf(-100.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("exponential reference cdf")
{
    CHECK(exponential_reference_cdf_db(0.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(exponential_reference_cdf_db(-40.0) ==
          doctest::Approx(1.0 - std::exp(-1e-4)).epsilon(1e-12));
    CHECK(exponential_reference_cdf_db(20.0) == doctest::Approx(1.0 - std::exp(-100.0)));
    // monotone
    double prev = 0.0;
    for (double x = -30.0; x <= 30.0; x += 0.5)
    {
        const double v = exponential_reference_cdf_db(x);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("ks distance of matching distributions is small")
{
    rng_stream rng(8);
    GainSeries s;
    s.snapshots = 200;
    s.freqs = 50;
    s.subset_size = 1;
    for (std::size_t i = 0; i < 10000; ++i)
        s.values.push_back(rng.exponential(1.0));
    const EmpiricalCdf cdf = empirical_cdf(s);
    CHECK(ks_distance(cdf, exponential_reference_cdf_db) < 0.02);

    // and a deliberately wrong reference is far
    const double off = ks_distance(cdf, [](double x) { return exponential_reference_cdf_db(x - 6.0); });
    CHECK(off > 0.2);
}

TEST_CASE("gain map picks the lower median antenna at the lowest index")
{
    const ChannelTensor t = amplitude_tensor({2.0, 1.0, 3.0, 2.0, 5.0});
    const GainMap map = gain_map(t, 0);
    REQUIRE(map.gain_db.size() == 5);
    // gains 4, 1, 9, 4, 25; sorted 1 4 4 9 25, lower median 4, lowest index 0
    CHECK(map.median_antenna == 0);
    CHECK(map.gain_db[1] == doctest::Approx(0.0));
    CHECK(map.gain_db[2] == doctest::Approx(10.0 * std::log10(9.0)));

    const ChannelTensor flat = amplitude_tensor({1.0, 1.0, 1.0, 1.0});
    CHECK(gain_map(flat, 0).median_antenna == 0);
}

TEST_CASE("time and frequency spreads")
{
    // antenna gain varies over snapshots only: spread in time, flat in freq
    const std::size_t N = 3, F = 2;
    std::vector<cplx> samples;
    const double amps[3] = {1.0, 2.0, 4.0};
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t f = 0; f < F; ++f)
            samples.emplace_back(amps[n], 0.0);
    const ChannelTensor t(1, N, F, 1, std::move(samples));

    SubsetSelection sel;
    sel.indices = {0};
    const GainSpread spread = time_freq_spread(t, 0, sel);
    // normalized gains per snapshot: (1, 4, 16) * scale; ratio max/min = 16
    CHECK(spread.time_spread_db == doctest::Approx(10.0 * std::log10(16.0)));
    CHECK(spread.freq_spread_db == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("polarization ratio statistics on a constructed tensor")
{
    const ArrayGeometry geo = paired_geometry(2); // V H V H
    // V amplitudes 2, H amplitudes 1 -> every ratio 10 log10(4) dB, std 0
    const ChannelTensor t = amplitude_tensor({2.0, 1.0, 2.0, 1.0});
    const PolRatioStats stats = pol_ratio_stats(t, 0, geo);
    CHECK(stats.mean_db == doctest::Approx(10.0 * std::log10(4.0)));
    CHECK(stats.std_db == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(stats.samples == 2 * 3 * 2); // pairs * snapshots * freqs
}

TEST_CASE("polarization ratio skips zero-power samples")
{
    const ArrayGeometry geo = paired_geometry(1);
    const ChannelTensor t = amplitude_tensor({1.0, 0.0}); // H dead
    CHECK_THROWS_AS(pol_ratio_stats(t, 0, geo), data_error);
}

TEST_CASE("curve delta")
{
    HardeningCurve curve;
    curve.std_db = {0.0, -2.0, -3.0, -3.5};
    const std::vector<double> d = curve_delta(curve);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == doctest::Approx(-2.0));
    CHECK(d[1] == doctest::Approx(-1.0));
    CHECK(d[2] == doctest::Approx(-0.5));

    HardeningCurve too_short;
    too_short.std_db = {0.0};
    CHECK_THROWS_AS(curve_delta(too_short), invariant_error);
}

TEST_CASE("average curves")
{
    HardeningCurve a, b;
    a.std_db = {0.0, -2.0};
    a.order = OrderKind::original;
    b.std_db = {-1.0, -4.0};
    b.order = OrderKind::original;
    const std::vector<HardeningCurve> curves = {a, b};
    const HardeningCurve mean = average_curves(curves);
    CHECK(mean.std_db[0] == doctest::Approx(-0.5));
    CHECK(mean.std_db[1] == doctest::Approx(-3.0));
    CHECK(mean.order == OrderKind::original);
    CHECK(mean.hardening_db == doctest::Approx(-2.5));

    b.std_db = {-1.0};
    const std::vector<HardeningCurve> bad = {a, b};
    CHECK_THROWS_AS(average_curves(bad), invariant_error);
}

TEST_CASE("scenario summary aggregates user-antenna gains")
{
    const ChannelTensor t = amplitude_tensor({1.0, 2.0});
    const ScenarioSummary s = scenario_summary(t);
    // gains: 1 and 4 -> mean 2.5, max 4
    CHECK(s.mean_gain_db == doctest::Approx(10.0 * std::log10(2.5)));
    CHECK(s.max_gain_db == doctest::Approx(10.0 * std::log10(4.0)));
}

TEST_CASE("user hardening rank")
{
    // user 0 keyhole-ish (low hardening), user 1 gaussian (hardens)
    const std::size_t N = 60, F = 8, M = 12;
    rng_stream rng(12);
    std::vector<cplx> samples;
    samples.reserve(2 * N * F * M);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t f = 0; f < F; ++f)
        {
            const cplx shared = rng.cnormal();
            for (std::size_t m = 0; m < M; ++m)
                samples.push_back(shared);
        }
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t f = 0; f < F; ++f)
            for (std::size_t m = 0; m < M; ++m)
                samples.push_back(rng.cnormal());
    const ChannelTensor t(2, N, F, M, std::move(samples));

    const UserHardeningRank rank = rank_users_by_hardening(t, OrderKind::original);
    REQUIRE(rank.hardening_db.size() == 2);
    CHECK(rank.most_hardening == 1);
    CHECK(rank.least_hardening == 0);
    CHECK(rank.hardening_db[1] < rank.hardening_db[0]);
}
