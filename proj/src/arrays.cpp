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

#include "mcht/arrays.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_set>

#include <json.hpp>

#include "mcht/errors.hpp"
#include "mcht/rng.hpp"

namespace mcht
{

    char polarization_letter(Polarization p)
    {
        return p == Polarization::vertical ? 'V' : 'H';
    }

    std::vector<std::size_t> ArrayGeometry::indices_of(Polarization p) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i].polarization == p)
                out.push_back(i);
        return out;
    }

    namespace
    {
        // Positions quantized to a nanometer so co-location survives the
        // trigonometry used to lay elements out.
        std::array<std::int64_t, 3> position_key(const vec3 &p)
        {
            return {static_cast<std::int64_t>(std::llround(p[0] * 1e9)),
                    static_cast<std::int64_t>(std::llround(p[1] * 1e9)),
                    static_cast<std::int64_t>(std::llround(p[2] * 1e9))};
        }
    } // namespace

    std::vector<std::pair<std::size_t, std::size_t>> ArrayGeometry::pol_pairs() const
    {
        const std::vector<std::size_t> v_idx = indices_of(Polarization::vertical);
        const std::vector<std::size_t> h_idx = indices_of(Polarization::horizontal);
        if (v_idx.empty() || h_idx.empty())
            throw data_error("array '" + array_id + "' has no co-located V/H pairing: one polarization is absent");

        std::map<std::array<std::int64_t, 3>, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
        for (std::size_t i = 0; i < elements.size(); ++i)
        {
            auto &group = groups[position_key(elements[i].position)];
            (elements[i].polarization == Polarization::vertical ? group.first : group.second).push_back(i);
        }

        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (const auto &[key, group] : groups)
        {
            const std::size_t n = std::min(group.first.size(), group.second.size());
            for (std::size_t i = 0; i < n; ++i)
                pairs.emplace_back(group.first[i], group.second[i]);
        }
        if (!pairs.empty())
        {
            std::sort(pairs.begin(), pairs.end());
            return pairs;
        }

        // No dual-polarized positions: pair each V element with the nearest
        // still-unpaired H element, in port order.
        std::vector<bool> taken(elements.size(), false);
        for (std::size_t v : v_idx)
        {
            std::size_t best = elements.size();
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t h : h_idx)
            {
                if (taken[h])
                    continue;
                const vec3 &a = elements[v].position;
                const vec3 &b = elements[h].position;
                const vec3 diff{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
                const double d = dot(diff, diff);
                if (d < best_d)
                {
                    best_d = d;
                    best = h;
                }
            }
            if (best == elements.size())
                break;
            taken[best] = true;
            pairs.emplace_back(v, best);
        }
        return pairs;
    }

    void ArrayGeometry::validate() const
    {
        if (elements.empty())
            throw invariant_error("ArrayGeometry: no elements");
        if (!(wavelength_m > 0.0) || !(carrier_freq_hz > 0.0))
            throw invariant_error("ArrayGeometry: carrier frequency and wavelength must be positive");

        std::unordered_set<std::size_t> ports;
        for (const ArrayElement &e : elements)
        {
            if (e.port < 1 || e.port > elements.size() || !ports.insert(e.port).second)
                throw invariant_error("ArrayGeometry: port labels must be unique in 1..M");
            if (std::abs(norm3(e.boresight) - 1.0) > 1e-9)
                throw invariant_error("ArrayGeometry: boresight must be a unit vector");
            for (double c : e.position)
                if (!std::isfinite(c))
                    throw invariant_error("ArrayGeometry: non-finite element position");
        }
    }

    ArrayGeometry build_cylindrical()
    {
        constexpr std::size_t rings = 4;
        constexpr std::size_t positions = 16;

        ArrayGeometry geo;
        geo.array_id = "cylindrical_128";
        geo.carrier_freq_hz = 2.6e9;
        geo.wavelength_m = speed_of_light / geo.carrier_freq_hz;

        const double spacing = 0.5 * geo.wavelength_m;
        // Adjacent dual-polarized patches sit lambda/2 apart along the arc.
        const double radius = static_cast<double>(positions) * spacing / two_pi;

        geo.elements.reserve(rings * positions * 2);
        for (std::size_t g = 0; g < rings; ++g)
        {
            const double z = (static_cast<double>(g) - 1.5) * spacing;
            for (std::size_t i = 0; i < positions; ++i)
            {
                const double phi = two_pi * static_cast<double>(i) / static_cast<double>(positions);
                ArrayElement e;
                e.position = {radius * std::cos(phi), radius * std::sin(phi), z};
                e.boresight = {std::cos(phi), std::sin(phi), 0.0};
                e.port = 32 * g + 2 * i + 1;
                e.polarization = Polarization::vertical;
                geo.elements.push_back(e);
                e.port += 1;
                e.polarization = Polarization::horizontal;
                geo.elements.push_back(e);
            }
        }
        geo.validate();
        return geo;
    }

    CylPort cylindrical_port_layout(std::size_t port)
    {
        if (port < 1 || port > 128)
            throw invariant_error("cylindrical port must lie in 1..128");
        const std::size_t idx = port - 1;
        CylPort out;
        out.ring = idx / 32;
        out.position = (idx % 32) / 2;
        out.polarization = (idx % 2 == 0) ? Polarization::vertical : Polarization::horizontal;
        return out;
    }

    std::size_t cylindrical_port_index(const CylPort &layout)
    {
        if (layout.ring >= 4 || layout.position >= 16)
            throw invariant_error("cylindrical layout out of range");
        return 32 * layout.ring + 2 * layout.position +
               (layout.polarization == Polarization::vertical ? 1 : 2);
    }

    ArrayGeometry build_planar()
    {
        constexpr std::size_t rows = 4;
        constexpr std::size_t cols = 25;

        ArrayGeometry geo;
        geo.array_id = "planar_100";
        geo.carrier_freq_hz = 3.7e9;
        geo.wavelength_m = speed_of_light / geo.carrier_freq_hz;

        const double d = 0.5 * geo.wavelength_m;
        geo.elements.reserve(rows * cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
            {
                ArrayElement e;
                e.position = {0.0, (static_cast<double>(c) - 12.0) * d,
                              (static_cast<double>(r) - 1.5) * d};
                e.boresight = {1.0, 0.0, 0.0};
                e.port = r * cols + c + 1;
                // Checkerboard: alternates along every row, row starts
                // staggered, which lands exactly 50 elements per polarization.
                e.polarization = ((r + c) % 2 == 0) ? Polarization::vertical : Polarization::horizontal;
                geo.elements.push_back(e);
            }
        geo.validate();
        return geo;
    }

    ArrayGeometry build_linear(std::size_t count, double carrier_freq_hz)
    {
        if (count < 1)
            throw invariant_error("build_linear: element count must be >= 1");
        if (!(carrier_freq_hz > 0.0))
            throw invariant_error("build_linear: carrier frequency must be positive");

        ArrayGeometry geo;
        geo.array_id = "linear_" + std::to_string(count);
        geo.carrier_freq_hz = carrier_freq_hz;
        geo.wavelength_m = speed_of_light / carrier_freq_hz;

        const double d = 0.5 * geo.wavelength_m;
        geo.elements.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            ArrayElement e;
            e.position = {0.0, 0.0, static_cast<double>(i) * d};
            e.boresight = {1.0, 0.0, 0.0};
            e.port = i + 1;
            e.polarization = Polarization::vertical;
            geo.elements.push_back(e);
        }
        geo.validate();
        return geo;
    }

    std::vector<cplx> steering_vector(const ArrayGeometry &geometry, const vec3 &direction,
                                      double frequency_hz)
    {
        if (std::abs(norm3(direction) - 1.0) > 1e-6)
            throw invariant_error("steering_vector: direction must be a unit vector");
        if (!(frequency_hz > 0.0))
            throw invariant_error("steering_vector: frequency must be positive");

        const double k = two_pi * frequency_hz / speed_of_light;
        std::vector<cplx> a;
        a.reserve(geometry.size());
        for (const ArrayElement &e : geometry.elements)
            a.push_back(std::polar(1.0, -k * dot(e.position, direction)));
        return a;
    }

    double ElementPattern::power_gain(double cos_off_boresight) const
    {
        const double c = std::clamp(cos_off_boresight, -1.0, 1.0);
        const double back = db10_inv(-front_to_back_db);
        return back + (1.0 - back) * std::pow(0.5 * (1.0 + c), exponent);
    }

    double ElementPattern::amplitude(double cos_off_boresight) const
    {
        return std::sqrt(power_gain(cos_off_boresight));
    }

    UserAntenna UserAntenna::make_omni(std::size_t snapshots)
    {
        UserAntenna u;
        u.kind = UserPatternKind::omni;
        u.azimuth_rad.assign(snapshots, 0.0);
        return u;
    }

    UserAntenna UserAntenna::make_directive(std::size_t snapshots, double initial_azimuth_rad,
                                            double total_rotation_rad)
    {
        if (snapshots < 1)
            throw invariant_error("UserAntenna: need at least one snapshot");
        UserAntenna u;
        u.kind = UserPatternKind::directive;
        u.azimuth_rad.resize(snapshots);
        for (std::size_t n = 0; n < snapshots; ++n)
        {
            const double t = snapshots > 1
                                 ? static_cast<double>(n) / static_cast<double>(snapshots - 1)
                                 : 0.0;
            u.azimuth_rad[n] = initial_azimuth_rad + total_rotation_rad * t;
        }
        return u;
    }

    void UserAntenna::validate() const
    {
        if (front_to_back_db < 0.0 || !std::isfinite(front_to_back_db))
            throw invariant_error("UserAntenna: front-to-back ratio must be finite and non-negative");
        if (!(exponent > 0.0) || !std::isfinite(exponent))
            throw invariant_error("UserAntenna: pattern exponent must be positive");
        if (kind == UserPatternKind::directive && azimuth_rad.empty())
            throw invariant_error("UserAntenna: directive pattern without orientation trajectory");
        for (double a : azimuth_rad)
            if (!std::isfinite(a))
                throw invariant_error("UserAntenna: non-finite trajectory azimuth");
    }

    double pattern_gain(const UserAntenna &user, std::size_t snapshot, const vec3 &direction)
    {
        if (user.kind == UserPatternKind::omni)
            return 1.0;
        if (snapshot >= user.azimuth_rad.size())
            throw invariant_error("pattern_gain: trajectory not defined at snapshot " +
                                  std::to_string(snapshot));

        const double az = user.azimuth_rad[snapshot];
        const double ct = std::cos(user.tilt_rad);
        const vec3 boresight{ct * std::cos(az), ct * std::sin(az), std::sin(user.tilt_rad)};
        const ElementPattern pattern{user.front_to_back_db, user.exponent};
        return pattern.amplitude(dot(boresight, normalized(direction)));
    }

    double estimate_steering_second_moment(const ArrayGeometry &geometry, double frequency_hz,
                                           std::size_t direction_pairs, std::uint64_t seed)
    {
        if (direction_pairs < 1)
            throw invariant_error("estimate_steering_second_moment: need at least one pair");

        rng_stream rng(seed);
        const double inv_m = 1.0 / static_cast<double>(geometry.size());
        const double k = two_pi * frequency_hz / speed_of_light;

        std::vector<double> samples;
        samples.reserve(direction_pairs);
        for (std::size_t p = 0; p < direction_pairs; ++p)
        {
            const vec3 d1 = rng.unit_sphere();
            const vec3 d2 = rng.unit_sphere();
            // <a(d1), a(d2)> = sum_m exp(-j k <pos_m, d1 - d2>)
            const vec3 diff{d1[0] - d2[0], d1[1] - d2[1], d1[2] - d2[2]};
            cplx inner(0.0, 0.0);
            for (const ArrayElement &e : geometry.elements)
                inner += std::polar(1.0, -k * dot(e.position, diff));
            samples.push_back(std::norm(inner * inv_m));
        }
        return pairwise_sum(samples) / static_cast<double>(direction_pairs);
    }

    std::string geometry_json(const ArrayGeometry &geometry, int indent)
    {
        nlohmann::json root;
        root["array_id"] = geometry.array_id;
        root["carrier_freq_hz"] = geometry.carrier_freq_hz;
        root["wavelength_m"] = geometry.wavelength_m;
        nlohmann::json elems = nlohmann::json::array();
        for (const ArrayElement &e : geometry.elements)
        {
            nlohmann::json j;
            j["port"] = e.port;
            j["position_m"] = {e.position[0], e.position[1], e.position[2]};
            j["boresight"] = {e.boresight[0], e.boresight[1], e.boresight[2]};
            j["polarization"] = std::string(1, polarization_letter(e.polarization));
            elems.push_back(std::move(j));
        }
        root["elements"] = std::move(elems);
        return root.dump(indent);
    }

} // namespace mcht
