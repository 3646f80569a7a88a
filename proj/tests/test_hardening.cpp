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

#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "mcht/errors.hpp"
#include "mcht/hardening.hpp"
#include "mcht/rng.hpp"

using namespace mcht;

namespace
{

    ChannelTensor random_tensor(std::size_t users, std::size_t snapshots, std::size_t freqs,
                                std::size_t antennas, std::uint64_t seed)
    {
        rng_stream rng(seed);
        std::vector<cplx> samples(users * snapshots * freqs * antennas);
        for (cplx &s : samples)
            s = rng.cnormal();
        return ChannelTensor(users, snapshots, freqs, antennas, std::move(samples));
    }

    SubsetSelection full_selection(std::size_t antennas)
    {
        SubsetSelection sel;
        sel.indices.resize(antennas);
        std::iota(sel.indices.begin(), sel.indices.end(), 0);
        sel.order = OrderKind::original;
        return sel;
    }

    // Reference pipeline: normalize the prefix block, compute the gain series
    // and take its std. One call per prefix size, quadratic but obvious.
    double naive_prefix_std_db(const ChannelTensor &t, std::size_t user,
                               const SubsetSelection &order, std::size_t size)
    {
        const SubsetSelection prefix = SubsetSelection::prefix(order, size);
        return std_gain(subset_gain(normalize(t, user, prefix))).std_db;
    }

}

TEST_CASE("extract_block drops masked snapshots")
{
    std::vector<cplx> samples(2 * 3 * 1 * 2, cplx(1.0, 0.0));
    std::vector<std::uint8_t> mask = {1, 0, 1, /* user 1: */ 1, 1, 1};
    const ChannelTensor t(2, 3, 1, 2, samples, {}, mask);

    const ChannelBlock b0 = extract_block(t, 0, full_selection(2));
    CHECK(b0.snapshots == 2);
    const ChannelBlock b1 = extract_block(t, 1, full_selection(2));
    CHECK(b1.snapshots == 3);
}

TEST_CASE("normalize gives unit mean square and records the scale")
{
    const ChannelTensor t = random_tensor(1, 4, 3, 5, 21);
    const ChannelBlock b = normalize(t, 0, full_selection(5));

    double energy = 0.0;
    for (const cplx &s : b.samples)
        energy += std::norm(s);
    const double mean_sq = energy / double(b.samples.size());
    CHECK(mean_sq == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.applied_scale > 0.0);
}

TEST_CASE("normalize rejects an all-zero block")
{
    std::vector<cplx> samples(1 * 2 * 2 * 2, cplx(0.0, 0.0));
    const ChannelTensor t(1, 2, 2, 2, samples);
    try
    {
        normalize(t, 0, full_selection(2));
        FAIL("expected data_error");
    }
    catch (const data_error &e)
    {
        CHECK(e.code() == data_error_code::zero_energy);
    }
}

TEST_CASE("subset_gain averages antenna power")
{
    // two antennas with |h| = 1 and |h| = 2 everywhere: G = (1 + 4) / 2
    std::vector<cplx> samples;
    for (int n = 0; n < 3; ++n)
        for (int f = 0; f < 2; ++f)
        {
            samples.emplace_back(1.0, 0.0);
            samples.emplace_back(0.0, 2.0);
        }
    const ChannelTensor t(1, 3, 2, 2, samples);
    const GainSeries g = subset_gain(extract_block(t, 0, full_selection(2)));
    REQUIRE(g.sample_count() == 6);
    for (double v : g.values)
        CHECK(v == doctest::Approx(2.5));
}

TEST_CASE("std_gain hand value and sentinel")
{
    GainSeries s;
    s.snapshots = 2;
    s.freqs = 2;
    s.subset_size = 1;
    s.values = {1.0, 2.0, 3.0, 4.0};
    const GainStd g = std_gain(s);
    // sample std about the mean 2.5 with 1/(N F) convention
    const double want = std::sqrt((2.25 + 0.25 + 0.25 + 2.25) / 4.0);
    CHECK(g.std_linear == doctest::Approx(want));
    CHECK(g.std_db == doctest::Approx(10.0 * std::log10(want)));

    s.values = {2.0, 2.0, 2.0, 2.0};
    CHECK(std_gain(s).std_db == neg_inf);

    s.snapshots = 1;
    s.freqs = 1;
    s.values = {1.0};
    CHECK_THROWS_AS(std_gain(s), invariant_error);
}

TEST_CASE("fast curve equals the naive per-prefix pipeline")
{
    rng_stream seeds(5);
    for (int rep = 0; rep < 10; ++rep)
    {
        const std::size_t antennas = 1 + seeds.uniform_index(7);
        const ChannelTensor t =
            random_tensor(1, 2 + seeds.uniform_index(4), 2 + seeds.uniform_index(4), antennas,
                          seeds.next_u64());

        SubsetSelection order = full_selection(t.antennas());
        // random permutation as the visiting order
        for (std::size_t i = order.indices.size(); i > 1; --i)
            std::swap(order.indices[i - 1], order.indices[seeds.uniform_index(i)]);
        order.order = OrderKind::explicit_order;

        const HardeningCurve fast = hardening_curve(t, 0, order);
        REQUIRE(fast.max_size() == t.antennas());
        for (std::size_t size = 1; size <= t.antennas(); ++size)
            CHECK(fast.std_db[size - 1] ==
                  doctest::Approx(naive_prefix_std_db(t, 0, order, size)).epsilon(1e-9));
        CHECK(fast.hardening_db ==
              doctest::Approx(fast.std_db.back() - fast.std_db.front()).epsilon(1e-12));
    }
}

TEST_CASE("per-size subsets must form a prefix chain")
{
    const ChannelTensor t = random_tensor(1, 3, 3, 4, 31);
    const SubsetSelection order = full_selection(4);

    std::vector<SubsetSelection> chain;
    for (std::size_t size = 1; size <= 4; ++size)
        chain.push_back(SubsetSelection::prefix(order, size));

    const HardeningCurve from_chain = hardening_curve(t, 0, chain);
    const HardeningCurve direct = hardening_curve(t, 0, order);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(from_chain.std_db[i] == doctest::Approx(direct.std_db[i]).epsilon(1e-12));

    std::swap(chain[2].indices[0], chain[2].indices[1]); // breaks the chain
    CHECK_THROWS_AS(hardening_curve(t, 0, chain), invariant_error);
}

TEST_CASE("scale invariance of the curve")
{
    const ChannelTensor t = random_tensor(1, 4, 4, 6, 41);
    std::vector<cplx> scaled(t.samples().begin(), t.samples().end());
    for (cplx &s : scaled)
        s *= 13.7;
    const ChannelTensor ts(1, 4, 4, 6, std::move(scaled));

    const SubsetSelection order = full_selection(6);
    const HardeningCurve a = hardening_curve(t, 0, order);
    const HardeningCurve b = hardening_curve(ts, 0, order);
    for (std::size_t i = 0; i < a.std_db.size(); ++i)
        CHECK(a.std_db[i] == doctest::Approx(b.std_db[i]).epsilon(1e-12));
}

TEST_CASE("hardening_delta_db collapses the double sentinel")
{
    CHECK(hardening_delta_db(-3.0, -1.0) == doctest::Approx(-2.0));
    CHECK(hardening_delta_db(neg_inf, neg_inf) == 0.0);
    CHECK(hardening_delta_db(neg_inf, -1.0) == neg_inf);
}

TEST_CASE("selection validate catches duplicates and range")
{
    SubsetSelection sel;
    sel.indices = {0, 1, 1};
    CHECK_THROWS_AS(sel.validate(4), invariant_error);
    sel.indices = {0, 5};
    CHECK_THROWS_AS(sel.validate(4), invariant_error);
    sel.indices = {};
    CHECK_THROWS_AS(sel.validate(4), invariant_error);
    sel.indices = {3, 0};
    CHECK_NOTHROW(sel.validate(4));
}

TEST_CASE("masked snapshots are excluded from the statistics")
{
    // user 0: snapshot 1 carries garbage but is masked out, so the curve must
    //         match the tensor that never had the garbage
    const std::size_t N = 4, F = 2, M = 3;
    rng_stream rng(77);
    std::vector<cplx> clean(N * F * M);
    for (cplx &s : clean)
        s = rng.cnormal();

    std::vector<cplx> dirty = clean;
    for (std::size_t f = 0; f < F; ++f)
        for (std::size_t m = 0; m < M; ++m)
            dirty[(1 * F + f) * M + m] = cplx(1e9, -1e9);

    std::vector<cplx> pruned;
    for (std::size_t n = 0; n < N; ++n)
    {
        if (n == 1)
            continue;
        for (std::size_t f = 0; f < F; ++f)
            for (std::size_t m = 0; m < M; ++m)
                pruned.push_back(clean[(n * F + f) * M + m]);
    }

    std::vector<std::uint8_t> mask = {1, 0, 1, 1};
    const ChannelTensor masked(1, N, F, M, dirty, {}, mask);
    const ChannelTensor reference(1, N - 1, F, M, pruned);

    const SubsetSelection order = full_selection(M);
    const HardeningCurve a = hardening_curve(masked, 0, order);
    const HardeningCurve b = hardening_curve(reference, 0, order);
    for (std::size_t i = 0; i < M; ++i)
        CHECK(a.std_db[i] == doctest::Approx(b.std_db[i]).epsilon(1e-12));
}
