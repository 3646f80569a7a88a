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

// Simplified geometry-based stochastic channel model in the COST 2100
// style, with the massive-MIMO extensions that matter for hardening
// studies: user-plane cluster visibility regions, a cluster gain taper
// along the array axis, per-cluster shadowing and XPD, and an optional LOS
// component set by a K-factor. Clusters are bundles of discrete scatter
// points with exponential excess delays; visibility regions stay fixed
// within a run. Cluster lifetimes, DMC and multi-link correlation are out
// of scope.

#ifndef MCHT_GSCM_HPP
#define MCHT_GSCM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mcht/arrays.hpp"
#include "mcht/channel_tensor.hpp"
#include "mcht/util.hpp"

namespace mcht
{

    struct GscmConfig
    {
        std::string name = "indoor_closely_spaced_2_6ghz";
        std::uint64_t seed = 1;

        // RF and sampling
        double carrier_freq_hz = 2.6e9;
        double bandwidth_hz = 40e6;
        std::size_t freq_points = 129;
        std::size_t snapshots = 300;
        double snapshot_rate_hz = 50.0;
        double user_speed_mps = 0.25;

        // Scene layout, base station at the origin
        std::size_t users = 2;
        double user_distance_min_m = 3.0;
        double user_distance_max_m = 10.0;
        double user_height_m = -1.0;
        double cluster_distance_min_m = 2.0;
        double scene_radius_m = 12.0;
        double cluster_height_spread_m = 2.0;

        // Clusters. Spreads and shadowing are tuned so a 128-port cylinder
        // leaves a visible residual gain variance at full aperture: clusters
        // are compact enough that the array cannot average within one, and
        // unequal enough that only a handful carry most of the power.
        std::size_t clusters = 8;
        std::size_t mpc_per_cluster = 20;
        double azimuth_spread_deg = 3.0;
        double elevation_spread_deg = 5.0;
        double delay_spread_ns = 40.0;
        double delay_decay_ns = 200.0; // cluster power falls as exp(-delay/decay)
        double tau_max_ns = 500.0;     // cap on per-path excess delay
        double shadowing_std_db = 5.0;
        double xpd_db = 8.0;
        double k_factor_db = 0.0;      // -inf disables the LOS component

        // Visibility
        double vr_radius_m = 5.0;
        double vr_center_spread_m = 6.5;
        std::size_t taper_length_elements = 32;

        // Base-station element pattern
        double bs_front_to_back_db = 10.0;
        double bs_pattern_exponent = 2.0;

        void validate() const;
    };

    // Stand-in parameter set for a closely spaced indoor deployment at
    // 2.6 GHz; values are plausible defaults, not fitted to measurements.
    GscmConfig default_indoor_config();

    std::string gscm_config_json(const GscmConfig &config, int indent = 2);
    GscmConfig gscm_config_from_json_text(const std::string &text);
    GscmConfig load_gscm_config(const std::string &path); // JSON, // comments allowed
    void save_gscm_config(const GscmConfig &config, const std::string &path);

    struct GscmMpc
    {
        vec3 point{};          // scatter point, meters
        cplx gain_v{};         // amplitude toward vertical elements
        cplx gain_h{};
        double excess_delay_s = 0.0;
    };

    struct GscmCluster
    {
        vec3 centroid{};
        double power = 1.0;        // linear, decay and shadowing applied
        vec3 vr_center{};          // in the user plane
        double taper_center = 0.0; // element-index axis
        std::vector<GscmMpc> mpcs;
    };

    struct GscmUser
    {
        vec3 start{};
        vec3 velocity{};
        std::vector<std::size_t> active_clusters;
        UserAntenna antenna;
    };

    struct GscmScene
    {
        std::vector<GscmCluster> clusters;
        std::vector<GscmUser> users;
    };

    // Raised-cosine power weight of a cluster over the element-index axis:
    // cos^2(pi (m - center) / (2 L)) inside |m - center| <= L, zero outside.
    // No wraparound at the array ends.
    double array_taper(double element_index, double center, std::size_t taper_length);

    // Synthesizes the transfer tensor for config.users users sharing one
    // cluster scene. The user argument provides the antenna kind and pattern
    // shape; each user's initial orientation and total rotation are drawn
    // uniformly from a stream separate from the scene, so omni and directive
    // runs with the same seed see identical scenes. Scene draws are keyed
    // hierarchically (cluster, then path), so enlarging the scene never
    // reshuffles existing clusters.
    ChannelTensor gen_gscm(const GscmConfig &config, const ArrayGeometry &geometry,
                           const UserAntenna &user_template, GscmScene *scene_out = nullptr);

} // namespace mcht

#endif
