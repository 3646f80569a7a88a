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
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>
#include <json.hpp>

#include "mcht/errors.hpp"
#include "mcht/gscm.hpp"
#include "mcht/hardening.hpp"

using namespace mcht;

namespace
{
    GscmConfig small_config()
    {
        GscmConfig c = default_indoor_config();
        c.snapshots = 6;
        c.freq_points = 5;
        c.clusters = 4;
        c.mpc_per_cluster = 5;
        return c;
    }

    ArrayGeometry small_array()
    {
        return build_linear(8, 2.6e9);
    }
}

TEST_CASE("config json round-trips every field")
{
    GscmConfig c = default_indoor_config();
    c.seed = 42;
    c.clusters = 7;
    c.shadowing_std_db = 5.5;
    c.k_factor_db = neg_inf;
    const GscmConfig back = gscm_config_from_json_text(gscm_config_json(c));
    CHECK(back.seed == 42);
    CHECK(back.clusters == 7);
    CHECK(back.shadowing_std_db == doctest::Approx(5.5));
    CHECK(back.k_factor_db == neg_inf);
    CHECK(back.name == c.name);
    CHECK(back.carrier_freq_hz == doctest::Approx(c.carrier_freq_hz));
    CHECK(back.taper_length_elements == c.taper_length_elements);
}

TEST_CASE("config text may carry comments")
{
    const std::string text = R"({
        // tuned by hand
        "name": "demo",
        "clusters": 3
    })";
    const GscmConfig c = gscm_config_from_json_text(text);
    CHECK(c.name == "demo");
    CHECK(c.clusters == 3);
    CHECK(c.snapshots == default_indoor_config().snapshots); // untouched default
}

TEST_CASE("config rejects unknown keys")
{
    try
    {
        gscm_config_from_json_text(R"({"clusterz": 3})");
        FAIL("expected data_error");
    }
    catch (const data_error &e)
    {
        CHECK(e.code() == data_error_code::malformed_config);
    }
}

TEST_CASE("config rejects wrong types and bad values")
{
    CHECK_THROWS_AS(gscm_config_from_json_text(R"({"clusters": "three"})"), data_error);
    CHECK_THROWS_AS(gscm_config_from_json_text(R"({"carrier_freq_hz": -1})"), data_error);
    CHECK_THROWS_AS(gscm_config_from_json_text(R"({"azimuth_spread_deg": 80})"), data_error);
    CHECK_THROWS_AS(gscm_config_from_json_text("not json at all"), data_error);
}

TEST_CASE("config file round-trip")
{
    const std::string path = (std::filesystem::temp_directory_path() / "mcht_cfg.json").string();
    GscmConfig c = default_indoor_config();
    c.name = "saved";
    c.users = 2;
    save_gscm_config(c, path);
    const GscmConfig back = load_gscm_config(path);
    CHECK(back.name == "saved");
    CHECK(back.users == 2);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_gscm_config(path), data_error);
}

TEST_CASE("taper window shape")
{
    const std::size_t L = 8;
    CHECK(array_taper(10.0, 10.0, L) == doctest::Approx(1.0));
    CHECK(array_taper(10.0 + L, 10.0, L) == doctest::Approx(0.0));
    CHECK(array_taper(10.0 - L, 10.0, L) == doctest::Approx(0.0));
    CHECK(array_taper(10.0 + L + 0.5, 10.0, L) == 0.0);
    CHECK(array_taper(10.0 + L / 2.0, 10.0, L) == doctest::Approx(0.5));

    // monotone non-increasing away from the center on both sides
    double prev = array_taper(10.0, 10.0, L);
    for (double d = 0.5; d <= L + 2.0; d += 0.5)
    {
        const double left = array_taper(10.0 - d, 10.0, L);
        const double right = array_taper(10.0 + d, 10.0, L);
        CHECK(left == doctest::Approx(right));
        CHECK(right <= prev + 1e-15);
        prev = right;
    }
}

TEST_CASE("scene generation is deterministic and seed sensitive")
{
    const GscmConfig c = small_config();
    const ArrayGeometry geo = small_array();

    GscmScene s1, s2;
    const ChannelTensor t1 = gen_gscm(c, geo, UserAntenna{}, &s1);
    const ChannelTensor t2 = gen_gscm(c, geo, UserAntenna{}, &s2);
    REQUIRE(t1.size() == t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i)
        CHECK(t1.samples()[i] == t2.samples()[i]);
    REQUIRE(s1.clusters.size() == s2.clusters.size());
    CHECK(s1.users[0].start == s2.users[0].start);

    GscmConfig c3 = c;
    c3.seed = c.seed + 1;
    const ChannelTensor t3 = gen_gscm(c3, geo, UserAntenna{});
    bool differs = false;
    for (std::size_t i = 0; i < t1.size() && !differs; ++i)
        differs = t1.samples()[i] != t3.samples()[i];
    CHECK(differs);
}

TEST_CASE("omni and directive runs share the scene")
{
    const GscmConfig c = small_config();
    const ArrayGeometry geo = small_array();

    UserAntenna directive;
    directive.kind = UserPatternKind::directive;

    GscmScene omni_scene, dir_scene;
    gen_gscm(c, geo, UserAntenna{}, &omni_scene);
    gen_gscm(c, geo, directive, &dir_scene);

    REQUIRE(omni_scene.clusters.size() == dir_scene.clusters.size());
    for (std::size_t i = 0; i < omni_scene.clusters.size(); ++i)
    {
        CHECK(omni_scene.clusters[i].centroid == dir_scene.clusters[i].centroid);
        CHECK(omni_scene.clusters[i].power == dir_scene.clusters[i].power);
        CHECK(omni_scene.clusters[i].taper_center == dir_scene.clusters[i].taper_center);
    }
    CHECK(omni_scene.users[0].start == dir_scene.users[0].start);
    CHECK(omni_scene.users[0].velocity == dir_scene.users[0].velocity);
    CHECK(omni_scene.users[0].antenna.kind == UserPatternKind::omni);
    CHECK(dir_scene.users[0].antenna.kind == UserPatternKind::directive);
}

TEST_CASE("user trajectory matches speed and rate")
{
    const GscmConfig c = small_config();
    GscmScene scene;
    gen_gscm(c, small_array(), UserAntenna{}, &scene);
    const GscmUser &u = scene.users[0];
    CHECK(norm3(u.velocity) == doctest::Approx(c.user_speed_mps));
    CHECK(u.start[2] == doctest::Approx(c.user_height_m));
    const double dist = std::hypot(u.start[0], u.start[1]);
    CHECK(dist >= c.user_distance_min_m);
    CHECK(dist <= c.user_distance_max_m);
}

TEST_CASE("cluster geometry respects the config bounds")
{
    const GscmConfig c = small_config();
    GscmScene scene;
    gen_gscm(c, small_array(), UserAntenna{}, &scene);
    REQUIRE(scene.clusters.size() == c.clusters);
    for (const GscmCluster &cl : scene.clusters)
    {
        const double dist = std::hypot(cl.centroid[0], cl.centroid[1]);
        CHECK(dist >= c.cluster_distance_min_m - 1e-9);
        CHECK(dist <= c.scene_radius_m + 1e-9);
        CHECK(cl.power > 0.0);
        CHECK(cl.mpcs.size() == c.mpc_per_cluster);
        for (const GscmMpc &mpc : cl.mpcs)
        {
            CHECK(mpc.excess_delay_s >= 0.0);
            CHECK(mpc.excess_delay_s <= c.tau_max_ns * 1e-9 + 1e-15);
        }
    }
}

TEST_CASE("directive tensor differs from omni on the same scene")
{
    const GscmConfig c = small_config();
    const ArrayGeometry geo = small_array();
    UserAntenna directive;
    directive.kind = UserPatternKind::directive;

    const ChannelTensor omni = gen_gscm(c, geo, UserAntenna{});
    const ChannelTensor dir = gen_gscm(c, geo, directive);
    bool differs = false;
    for (std::size_t i = 0; i < omni.size() && !differs; ++i)
        differs = omni.samples()[i] != dir.samples()[i];
    CHECK(differs);
}

TEST_CASE("a user outside every visibility region yields a zero channel")
{
    GscmConfig c = small_config();
    c.k_factor_db = neg_inf; // no LOS floor
    c.vr_radius_m = 1e-6;    // nobody sees any cluster
    const ChannelTensor t = gen_gscm(c, small_array(), UserAntenna{});

    double energy = 0.0;
    for (const cplx &s : t.samples())
        energy += std::norm(s);
    CHECK(energy == 0.0);

    // downstream analysis reports it as unusable data
    SubsetSelection sel;
    sel.indices = {0, 1};
    try
    {
        normalize(t, 0, sel);
        FAIL("expected data_error");
    }
    catch (const data_error &e)
    {
        CHECK(e.code() == data_error_code::zero_energy);
    }
}

TEST_CASE("pure LOS channel has flat gain over frequency")
{
    GscmConfig c = small_config();
    c.vr_radius_m = 1e-6;   // no clusters visible
    c.k_factor_db = 10.0;   // LOS only
    const ChannelTensor t = gen_gscm(c, small_array(), UserAntenna{});
    for (std::size_t n = 0; n < t.snapshots(); ++n)
        for (std::size_t m = 0; m < t.antennas(); ++m)
        {
            const double first = std::abs(t(0, n, 0, m));
            CHECK(first > 0.0);
            for (std::size_t f = 1; f < t.freqs(); ++f)
                CHECK(std::abs(t(0, n, f, m)) == doctest::Approx(first).epsilon(1e-9));
        }
}

TEST_CASE("meta reflects the config")
{
    const GscmConfig c = small_config();
    const ChannelTensor t = gen_gscm(c, small_array(), UserAntenna{});
    CHECK(t.meta().carrier_freq_hz == doctest::Approx(c.carrier_freq_hz));
    CHECK(t.meta().bandwidth_hz == doctest::Approx(c.bandwidth_hz));
    CHECK(t.meta().snapshot_rate_hz == doctest::Approx(c.snapshot_rate_hz));
    CHECK(t.meta().scenario_label == c.name);
    CHECK(t.meta().array_id == "linear_8");
    CHECK(t.users() == c.users);
    CHECK(t.snapshots() == c.snapshots);
    CHECK(t.freqs() == c.freq_points);
    CHECK(t.antennas() == 8);
}

TEST_CASE("multi-user scenes place every user")
{
    GscmConfig c = small_config();
    c.users = 3;
    GscmScene scene;
    const ChannelTensor t = gen_gscm(c, small_array(), UserAntenna{}, &scene);
    CHECK(t.users() == 3);
    REQUIRE(scene.users.size() == 3);
    for (const GscmUser &u : scene.users)
    {
        const double dist = std::hypot(u.start[0], u.start[1]);
        CHECK(dist >= c.user_distance_min_m);
        CHECK(dist <= c.user_distance_max_m);
    }
    // users are at distinct positions
    CHECK(norm3({scene.users[0].start[0] - scene.users[1].start[0],
                 scene.users[0].start[1] - scene.users[1].start[1],
                 scene.users[0].start[2] - scene.users[1].start[2]}) > 1e-6);
}

TEST_CASE("config validate rejects nonsense")
{
    GscmConfig c = default_indoor_config();
    c.clusters = 0;
    CHECK_THROWS_AS(c.validate(), invariant_error);
    c = default_indoor_config();
    c.azimuth_spread_deg = 60.0;
    CHECK_THROWS_AS(c.validate(), invariant_error);
    c = default_indoor_config();
    c.user_distance_min_m = 11.0; // above max
    CHECK_THROWS_AS(c.validate(), invariant_error);
    c = default_indoor_config();
    c.freq_points = 0;
    CHECK_THROWS_AS(c.validate(), invariant_error);

    // the same nonsense arriving as config text is a data problem
    try
    {
        gscm_config_from_json_text(R"({"clusters": 0})");
        FAIL("expected data_error");
    }
    catch (const data_error &e)
    {
        CHECK(e.code() == data_error_code::malformed_config);
    }
}

#ifdef MCHT_CONFIG_DIR
TEST_CASE("shipped indoor config matches the built-in defaults")
{
    const GscmConfig shipped =
        load_gscm_config(std::string(MCHT_CONFIG_DIR) + "/indoor_closely_spaced_2_6ghz.json");
    const std::string want = gscm_config_json(default_indoor_config());
    CHECK(gscm_config_json(shipped) == want);
}
#endif
