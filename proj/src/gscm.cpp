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

#include "mcht/gscm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mcht/errors.hpp"
#include "mcht/rng.hpp"

namespace mcht
{

    namespace
    {
        // Key-path tags for the deterministic stream hierarchy.
        constexpr std::uint64_t tag_clusters = 1;
        constexpr std::uint64_t tag_users = 2;
        constexpr std::uint64_t tag_orientation = 3;
    } // namespace

    void GscmConfig::validate() const
    {
        if (users < 1 || clusters < 1 || mpc_per_cluster < 1)
            throw invariant_error("GscmConfig: users, clusters and mpc_per_cluster must be >= 1");
        if (freq_points < 1 || snapshots < 1)
            throw invariant_error("GscmConfig: freq_points and snapshots must be >= 1");
        if (taper_length_elements < 1)
            throw invariant_error("GscmConfig: taper_length_elements must be >= 1");
        if (!(carrier_freq_hz > 0.0) || !(bandwidth_hz > 0.0) || !(snapshot_rate_hz > 0.0))
            throw invariant_error("GscmConfig: carrier, bandwidth and snapshot rate must be positive");
        if (!(user_speed_mps >= 0.0))
            throw invariant_error("GscmConfig: user speed must be non-negative");
        if (!(user_distance_min_m > 0.0) || user_distance_max_m < user_distance_min_m)
            throw invariant_error("GscmConfig: user distance range must satisfy 0 < min <= max");
        if (!(cluster_distance_min_m > 0.0) || scene_radius_m < cluster_distance_min_m)
            throw invariant_error("GscmConfig: cluster distance range must satisfy 0 < min <= scene radius");
        if (!(cluster_height_spread_m >= 0.0))
            throw invariant_error("GscmConfig: cluster height spread must be non-negative");
        if (azimuth_spread_deg < 0.0 || azimuth_spread_deg >= 60.0 ||
            elevation_spread_deg < 0.0 || elevation_spread_deg >= 60.0)
            throw invariant_error("GscmConfig: angular spreads must lie in [0, 60) degrees");
        if (delay_spread_ns < 0.0 || tau_max_ns < 0.0 || !(delay_decay_ns > 0.0))
            throw invariant_error("GscmConfig: delay parameters must be non-negative, decay positive");
        if (shadowing_std_db < 0.0 || xpd_db < 0.0)
            throw invariant_error("GscmConfig: shadowing std and XPD must be non-negative");
        if (std::isnan(k_factor_db) || k_factor_db == std::numeric_limits<double>::infinity())
            throw invariant_error("GscmConfig: K-factor must be finite or -inf");
        if (vr_radius_m < 0.0 || vr_center_spread_m < 0.0)
            throw invariant_error("GscmConfig: visibility-region sizes must be non-negative");
        if (bs_front_to_back_db < 0.0 || !std::isfinite(bs_front_to_back_db) ||
            !(bs_pattern_exponent > 0.0))
            throw invariant_error("GscmConfig: element pattern parameters out of range");
    }

    GscmConfig default_indoor_config()
    {
        return GscmConfig{};
    }

    namespace
    {
        const std::vector<std::string> &config_keys()
        {
            static const std::vector<std::string> keys = {
                "name", "seed", "carrier_freq_hz", "bandwidth_hz", "freq_points", "snapshots",
                "snapshot_rate_hz", "user_speed_mps", "users", "user_distance_min_m",
                "user_distance_max_m", "user_height_m", "cluster_distance_min_m",
                "scene_radius_m", "cluster_height_spread_m", "clusters", "mpc_per_cluster",
                "azimuth_spread_deg", "elevation_spread_deg", "delay_spread_ns",
                "delay_decay_ns", "tau_max_ns", "shadowing_std_db", "xpd_db", "k_factor_db",
                "vr_radius_m", "vr_center_spread_m", "taper_length_elements",
                "bs_front_to_back_db", "bs_pattern_exponent"};
            return keys;
        }

        double json_number(const nlohmann::json &j, const char *key, double fallback)
        {
            if (!j.contains(key))
                return fallback;
            const auto &v = j.at(key);
            if (!v.is_number())
                throw data_error(std::string("config field '") + key + "' must be a number",
                                 data_error_code::malformed_config);
            return v.get<double>();
        }

        std::uint64_t json_count(const nlohmann::json &j, const char *key, std::uint64_t fallback)
        {
            if (!j.contains(key))
                return fallback;
            const auto &v = j.at(key);
            if (!v.is_number_unsigned())
                throw data_error(std::string("config field '") + key +
                                     "' must be a non-negative integer",
                                 data_error_code::malformed_config);
            return v.get<std::uint64_t>();
        }

        // k_factor_db is the one field that may be -inf; JSON spells that null.
        double json_k_factor(const nlohmann::json &j, const char *key, double fallback)
        {
            if (!j.contains(key))
                return fallback;
            const auto &v = j.at(key);
            if (v.is_null())
                return neg_inf;
            if (!v.is_number())
                throw data_error(std::string("config field '") + key +
                                     "' must be a number or null",
                                 data_error_code::malformed_config);
            return v.get<double>();
        }
    } // namespace

    std::string gscm_config_json(const GscmConfig &c, int indent)
    {
        nlohmann::json j;
        j["name"] = c.name;
        j["seed"] = c.seed;
        j["carrier_freq_hz"] = c.carrier_freq_hz;
        j["bandwidth_hz"] = c.bandwidth_hz;
        j["freq_points"] = c.freq_points;
        j["snapshots"] = c.snapshots;
        j["snapshot_rate_hz"] = c.snapshot_rate_hz;
        j["user_speed_mps"] = c.user_speed_mps;
        j["users"] = c.users;
        j["user_distance_min_m"] = c.user_distance_min_m;
        j["user_distance_max_m"] = c.user_distance_max_m;
        j["user_height_m"] = c.user_height_m;
        j["cluster_distance_min_m"] = c.cluster_distance_min_m;
        j["scene_radius_m"] = c.scene_radius_m;
        j["cluster_height_spread_m"] = c.cluster_height_spread_m;
        j["clusters"] = c.clusters;
        j["mpc_per_cluster"] = c.mpc_per_cluster;
        j["azimuth_spread_deg"] = c.azimuth_spread_deg;
        j["elevation_spread_deg"] = c.elevation_spread_deg;
        j["delay_spread_ns"] = c.delay_spread_ns;
        j["delay_decay_ns"] = c.delay_decay_ns;
        j["tau_max_ns"] = c.tau_max_ns;
        j["shadowing_std_db"] = c.shadowing_std_db;
        j["xpd_db"] = c.xpd_db;
        if (std::isinf(c.k_factor_db))
            j["k_factor_db"] = nullptr;
        else
            j["k_factor_db"] = c.k_factor_db;
        j["vr_radius_m"] = c.vr_radius_m;
        j["vr_center_spread_m"] = c.vr_center_spread_m;
        j["taper_length_elements"] = c.taper_length_elements;
        j["bs_front_to_back_db"] = c.bs_front_to_back_db;
        j["bs_pattern_exponent"] = c.bs_pattern_exponent;
        return j.dump(indent);
    }

    GscmConfig gscm_config_from_json_text(const std::string &text)
    {
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw data_error(std::string("config is not valid JSON: ") + e.what(),
                             data_error_code::malformed_config);
        }
        if (!j.is_object())
            throw data_error("config root must be a JSON object",
                             data_error_code::malformed_config);

        const auto &known = config_keys();
        for (auto it = j.begin(); it != j.end(); ++it)
            if (std::find(known.begin(), known.end(), it.key()) == known.end())
                throw data_error("unknown config field '" + it.key() + "'",
                                 data_error_code::malformed_config);

        GscmConfig c;
        if (j.contains("name"))
        {
            if (!j.at("name").is_string())
                throw data_error("config field 'name' must be a string",
                                 data_error_code::malformed_config);
            c.name = j.at("name").get<std::string>();
        }
        c.seed = json_count(j, "seed", c.seed);
        c.carrier_freq_hz = json_number(j, "carrier_freq_hz", c.carrier_freq_hz);
        c.bandwidth_hz = json_number(j, "bandwidth_hz", c.bandwidth_hz);
        c.freq_points = json_count(j, "freq_points", c.freq_points);
        c.snapshots = json_count(j, "snapshots", c.snapshots);
        c.snapshot_rate_hz = json_number(j, "snapshot_rate_hz", c.snapshot_rate_hz);
        c.user_speed_mps = json_number(j, "user_speed_mps", c.user_speed_mps);
        c.users = json_count(j, "users", c.users);
        c.user_distance_min_m = json_number(j, "user_distance_min_m", c.user_distance_min_m);
        c.user_distance_max_m = json_number(j, "user_distance_max_m", c.user_distance_max_m);
        c.user_height_m = json_number(j, "user_height_m", c.user_height_m);
        c.cluster_distance_min_m = json_number(j, "cluster_distance_min_m", c.cluster_distance_min_m);
        c.scene_radius_m = json_number(j, "scene_radius_m", c.scene_radius_m);
        c.cluster_height_spread_m = json_number(j, "cluster_height_spread_m", c.cluster_height_spread_m);
        c.clusters = json_count(j, "clusters", c.clusters);
        c.mpc_per_cluster = json_count(j, "mpc_per_cluster", c.mpc_per_cluster);
        c.azimuth_spread_deg = json_number(j, "azimuth_spread_deg", c.azimuth_spread_deg);
        c.elevation_spread_deg = json_number(j, "elevation_spread_deg", c.elevation_spread_deg);
        c.delay_spread_ns = json_number(j, "delay_spread_ns", c.delay_spread_ns);
        c.delay_decay_ns = json_number(j, "delay_decay_ns", c.delay_decay_ns);
        c.tau_max_ns = json_number(j, "tau_max_ns", c.tau_max_ns);
        c.shadowing_std_db = json_number(j, "shadowing_std_db", c.shadowing_std_db);
        c.xpd_db = json_number(j, "xpd_db", c.xpd_db);
        c.k_factor_db = json_k_factor(j, "k_factor_db", c.k_factor_db);
        c.vr_radius_m = json_number(j, "vr_radius_m", c.vr_radius_m);
        c.vr_center_spread_m = json_number(j, "vr_center_spread_m", c.vr_center_spread_m);
        c.taper_length_elements = json_count(j, "taper_length_elements", c.taper_length_elements);
        c.bs_front_to_back_db = json_number(j, "bs_front_to_back_db", c.bs_front_to_back_db);
        c.bs_pattern_exponent = json_number(j, "bs_pattern_exponent", c.bs_pattern_exponent);

        try
        {
            c.validate();
        }
        catch (const invariant_error &e)
        {
            throw data_error(std::string("config violates invariants: ") + e.what(),
                             data_error_code::malformed_config);
        }
        return c;
    }

    GscmConfig load_gscm_config(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw data_error("cannot open config file '" + path + "'",
                             data_error_code::malformed_config);
        std::ostringstream buf;
        buf << in.rdbuf();
        return gscm_config_from_json_text(buf.str());
    }

    void save_gscm_config(const GscmConfig &config, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw data_error("cannot open '" + path + "' for writing");
        out << gscm_config_json(config) << '\n';
        if (!out)
            throw data_error("failed writing config to '" + path + "'");
    }

    double array_taper(double element_index, double center, std::size_t taper_length)
    {
        if (taper_length < 1)
            throw invariant_error("array_taper: taper length must be >= 1");
        const double l = static_cast<double>(taper_length);
        const double d = std::abs(element_index - center);
        if (d >= l)
            return 0.0;
        const double c = std::cos(0.5 * pi * d / l);
        return c * c;
    }

    namespace
    {
        double horizontal_distance(const vec3 &a, const vec3 &b)
        {
            const double dx = a[0] - b[0];
            const double dy = a[1] - b[1];
            return std::sqrt(dx * dx + dy * dy);
        }

        GscmScene draw_scene(const GscmConfig &config, std::size_t antennas,
                             const UserAntenna &user_template)
        {
            GscmScene scene;
            scene.users.resize(config.users);
            for (std::size_t k = 0; k < config.users; ++k)
            {
                GscmUser &u = scene.users[k];
                rng_stream us = rng_stream(config.seed).derive(tag_users, k);

                // Area-uniform radius in the allowed annulus.
                const double r2_min = config.user_distance_min_m * config.user_distance_min_m;
                const double r2_max = config.user_distance_max_m * config.user_distance_max_m;
                const double r = std::sqrt(us.uniform(r2_min, r2_max));
                const double az = us.uniform(-pi, pi);
                u.start = {r * std::cos(az), r * std::sin(az), config.user_height_m};

                const double heading = us.uniform(-pi, pi);
                u.velocity = {config.user_speed_mps * std::cos(heading),
                              config.user_speed_mps * std::sin(heading), 0.0};

                if (user_template.kind == UserPatternKind::directive)
                {
                    rng_stream os = rng_stream(config.seed).derive(tag_orientation, k);
                    const double initial = os.uniform(-pi, pi);
                    const double total = os.uniform(-pi, pi);
                    u.antenna = UserAntenna::make_directive(config.snapshots, initial, total);
                    u.antenna.front_to_back_db = user_template.front_to_back_db;
                    u.antenna.exponent = user_template.exponent;
                    u.antenna.tilt_rad = user_template.tilt_rad;
                }
                else
                {
                    u.antenna = UserAntenna::make_omni(config.snapshots);
                }
            }

            const double sigma_shadow = config.shadowing_std_db;
            const double eps = db10_inv(-config.xpd_db); // cross-polar power fraction
            const double pol_norm = 1.0 / std::sqrt(1.0 + eps);
            const double az_spread = config.azimuth_spread_deg * pi / 180.0;
            const double el_spread = config.elevation_spread_deg * pi / 180.0;

            scene.clusters.resize(config.clusters);
            for (std::size_t c = 0; c < config.clusters; ++c)
            {
                GscmCluster &cl = scene.clusters[c];
                rng_stream cs = rng_stream(config.seed).derive(tag_clusters, c);

                const double dist = cs.uniform(config.cluster_distance_min_m, config.scene_radius_m);
                const double az = cs.uniform(-pi, pi);
                const double z = cs.uniform(-config.cluster_height_spread_m,
                                            config.cluster_height_spread_m);
                cl.centroid = {dist * std::cos(az), dist * std::sin(az), z};

                const double shadow = db10_inv(cs.normal(0.0, sigma_shadow));

                // Power decay over the through-cluster propagation delay,
                // taken at the cluster's anchor user.
                const vec3 &anchor = scene.users[c % config.users].start;
                const vec3 to_user{anchor[0] - cl.centroid[0], anchor[1] - cl.centroid[1],
                                   anchor[2] - cl.centroid[2]};
                const double tau_c = (norm3(cl.centroid) + norm3(to_user)) / speed_of_light;
                cl.power = shadow * std::exp(-tau_c / (config.delay_decay_ns * 1e-9));

                const double vr_r = config.vr_center_spread_m * std::sqrt(cs.uniform());
                const double vr_az = cs.uniform(-pi, pi);
                cl.vr_center = {anchor[0] + vr_r * std::cos(vr_az),
                                anchor[1] + vr_r * std::sin(vr_az), config.user_height_m};

                cl.taper_center = cs.uniform(0.0, static_cast<double>(antennas));

                const double sigma_h = dist * std::tan(az_spread);
                const double sigma_v = dist * std::tan(el_spread);
                const double amp = std::sqrt(cl.power / static_cast<double>(config.mpc_per_cluster));

                cl.mpcs.resize(config.mpc_per_cluster);
                for (std::size_t p = 0; p < config.mpc_per_cluster; ++p)
                {
                    GscmMpc &mpc = cl.mpcs[p];
                    const cplx co = cs.cnormal();
                    const cplx cross = cs.cnormal();
                    mpc.point = {cl.centroid[0] + cs.normal(0.0, sigma_h),
                                 cl.centroid[1] + cs.normal(0.0, sigma_h),
                                 cl.centroid[2] + cs.normal(0.0, sigma_v)};
                    // Scatter points must stay clear of the array at the origin.
                    if (norm3(mpc.point) < 0.25)
                        mpc.point = cl.centroid;
                    mpc.excess_delay_s =
                        std::min(cs.exponential(config.delay_spread_ns * 1e-9),
                                 config.tau_max_ns * 1e-9);
                    // Alternate the primary polarization; the cross-polar leak
                    // carries the XPD fraction of the power.
                    const cplx g_co = co * amp * pol_norm;
                    const cplx g_cross = cross * amp * pol_norm * std::sqrt(eps);
                    if (p % 2 == 0)
                    {
                        mpc.gain_v = g_co;
                        mpc.gain_h = g_cross;
                    }
                    else
                    {
                        mpc.gain_v = g_cross;
                        mpc.gain_h = g_co;
                    }
                }
            }

            for (std::size_t k = 0; k < config.users; ++k)
                for (std::size_t c = 0; c < config.clusters; ++c)
                    if (horizontal_distance(scene.users[k].start, scene.clusters[c].vr_center) <=
                        config.vr_radius_m)
                        scene.users[k].active_clusters.push_back(c);

            return scene;
        }
    } // namespace

    ChannelTensor gen_gscm(const GscmConfig &config, const ArrayGeometry &geometry,
                           const UserAntenna &user_template, GscmScene *scene_out)
    {
        config.validate();
        geometry.validate();

        const std::size_t M = geometry.size();
        const std::size_t N = config.snapshots;
        const std::size_t F = config.freq_points;
        const std::size_t K = config.users;

        GscmScene scene = draw_scene(config, M, user_template);

        const ElementPattern bs{config.bs_front_to_back_db, config.bs_pattern_exponent};
        const double k_wave = two_pi * config.carrier_freq_hz / speed_of_light;
        const double f_step = F > 1 ? config.bandwidth_hz / static_cast<double>(F - 1) : 0.0;
        const double f_base = F > 1 ? -0.5 * config.bandwidth_hz : 0.0;
        const double k_lin = db10_inv(config.k_factor_db);
        constexpr double inv_sqrt2 = 0.7071067811865476;

        std::vector<cplx> samples(K * N * F * M, cplx(0.0, 0.0));

        struct flat_path
        {
            const GscmMpc *mpc;
            double bs_dist;
            double taper_center;
        };

        std::vector<flat_path> paths;
        std::vector<cplx> S;
        std::vector<cplx> los_row(M);

        for (std::size_t k = 0; k < K; ++k)
        {
            const GscmUser &user = scene.users[k];

            paths.clear();
            for (std::size_t c : user.active_clusters)
                for (const GscmMpc &mpc : scene.clusters[c].mpcs)
                    paths.push_back({&mpc, norm3(mpc.point), scene.clusters[c].taper_center});

            // Snapshot-independent per-(path, element) factor: MPC gain for
            // the element polarization, taper, element pattern and steering.
            S.assign(paths.size() * M, cplx(0.0, 0.0));
            for (std::size_t i = 0; i < paths.size(); ++i)
            {
                const GscmMpc &mpc = *paths[i].mpc;
                const vec3 dir = normalized(mpc.point);
                cplx *row = S.data() + i * M;
                for (std::size_t m = 0; m < M; ++m)
                {
                    const ArrayElement &e = geometry.elements[m];
                    const cplx g = e.polarization == Polarization::vertical ? mpc.gain_v
                                                                            : mpc.gain_h;
                    const double w =
                        std::sqrt(array_taper(static_cast<double>(m), paths[i].taper_center,
                                              config.taper_length_elements)) *
                        bs.amplitude(dot(e.boresight, dir));
                    row[m] = g * w * std::polar(1.0, -k_wave * dot(e.position, dir));
                }
            }

            // LOS amplitude calibrated so its element-averaged power is
            // K_lin times the realized diffuse element-averaged power.
            double los_scale = 0.0;
            if (k_lin > 0.0)
            {
                double diffuse = 0.0;
                for (const cplx &s : S)
                    diffuse += std::norm(s);
                diffuse /= static_cast<double>(M);

                const vec3 dir0 = normalized(user.start);
                double los_ref = 0.0;
                for (std::size_t m = 0; m < M; ++m)
                {
                    const double a =
                        inv_sqrt2 * bs.amplitude(dot(geometry.elements[m].boresight, dir0));
                    los_ref += a * a;
                }
                los_ref /= static_cast<double>(M);
                los_scale = diffuse > 0.0 ? std::sqrt(k_lin * diffuse / los_ref) : 1.0;
            }

            const double dt = 1.0 / config.snapshot_rate_hz;
            for (std::size_t n = 0; n < N; ++n)
            {
                const double t = static_cast<double>(n) * dt;
                const vec3 u_n{user.start[0] + user.velocity[0] * t,
                               user.start[1] + user.velocity[1] * t,
                               user.start[2] + user.velocity[2] * t};
                cplx *snap = samples.data() + ((k * N + n) * F) * M;

                for (std::size_t i = 0; i < paths.size(); ++i)
                {
                    const GscmMpc &mpc = *paths[i].mpc;
                    const vec3 to_point{mpc.point[0] - u_n[0], mpc.point[1] - u_n[1],
                                        mpc.point[2] - u_n[2]};
                    const double dist_u = norm3(to_point);
                    const double tau = (paths[i].bs_dist + dist_u) / speed_of_light +
                                       mpc.excess_delay_s;
                    const vec3 arrival{to_point[0] / dist_u, to_point[1] / dist_u,
                                       to_point[2] / dist_u};
                    const double psi = pattern_gain(user.antenna, n, arrival);

                    cplx e = std::polar(psi, -two_pi * (config.carrier_freq_hz + f_base) * tau);
                    const cplx step = std::polar(1.0, -two_pi * f_step * tau);
                    const cplx *row = S.data() + i * M;
                    for (std::size_t f = 0; f < F; ++f)
                    {
                        cplx *out = snap + f * M;
                        const cplx w = e;
                        for (std::size_t m = 0; m < M; ++m)
                            out[m] += w * row[m];
                        e *= step;
                    }
                }

                if (los_scale > 0.0)
                {
                    const vec3 dep = normalized(u_n);
                    const double tau = norm3(u_n) / speed_of_light;
                    const vec3 arrival{-dep[0], -dep[1], -dep[2]};
                    const double psi = pattern_gain(user.antenna, n, arrival);
                    for (std::size_t m = 0; m < M; ++m)
                    {
                        const ArrayElement &el = geometry.elements[m];
                        los_row[m] = los_scale * inv_sqrt2 *
                                     bs.amplitude(dot(el.boresight, dep)) *
                                     std::polar(1.0, -k_wave * dot(el.position, dep));
                    }
                    cplx e = std::polar(psi, -two_pi * (config.carrier_freq_hz + f_base) * tau);
                    const cplx step = std::polar(1.0, -two_pi * f_step * tau);
                    for (std::size_t f = 0; f < F; ++f)
                    {
                        cplx *out = snap + f * M;
                        const cplx w = e;
                        for (std::size_t m = 0; m < M; ++m)
                            out[m] += w * los_row[m];
                        e *= step;
                    }
                }
            }
        }

        if (scene_out)
            *scene_out = std::move(scene);

        ChannelMeta meta;
        meta.carrier_freq_hz = config.carrier_freq_hz;
        meta.bandwidth_hz = config.bandwidth_hz;
        meta.snapshot_rate_hz = config.snapshot_rate_hz;
        meta.scenario_label = config.name;
        meta.array_id = geometry.array_id;
        return ChannelTensor(K, N, F, M, std::move(samples), meta);
    }

} // namespace mcht
