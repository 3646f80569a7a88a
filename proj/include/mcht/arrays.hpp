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

// Antenna array geometry, element ordering and polarization layout for the
// two reference base-station arrays (dual-polarized cylinder with 128 ports
// at 2.6 GHz, single-polarized 4x25 planar patch array at 3.7 GHz), plus
// steering vectors and parametric element / user antenna patterns.

#ifndef MCHT_ARRAYS_HPP
#define MCHT_ARRAYS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcht/util.hpp"

namespace mcht
{

    enum class Polarization
    {
        vertical,
        horizontal
    };

    char polarization_letter(Polarization p); // 'V' or 'H'

    struct ArrayElement
    {
        vec3 position{};      // meters
        vec3 boresight{};     // unit vector
        Polarization polarization = Polarization::vertical;
        std::size_t port = 0; // 1-based label as printed on the array
    };

    // Element i of the vector drives tensor antenna index i; port = i + 1.
    struct ArrayGeometry
    {
        std::string array_id;
        double carrier_freq_hz = 0.0;
        double wavelength_m = 0.0;
        std::vector<ArrayElement> elements;

        std::size_t size() const { return elements.size(); }

        std::vector<std::size_t> indices_of(Polarization p) const;

        // Co-located (vertical, horizontal) element index pairs. Falls back
        // to greedy nearest-neighbour pairing for arrays without dual
        // polarized positions; throws data_error when one polarization is
        // missing entirely.
        std::vector<std::pair<std::size_t, std::size_t>> pol_pairs() const;

        void validate() const;
    };

    // 4 rings of 16 dual-polarized patches, lambda/2 arc and ring spacing,
    // ports numbered from the lower ring up, odd ports vertical.
    ArrayGeometry build_cylindrical();

    struct CylPort
    {
        std::size_t ring = 0;     // 0 = lower
        std::size_t position = 0; // 0..15 around the circumference
        Polarization polarization = Polarization::vertical;
    };

    CylPort cylindrical_port_layout(std::size_t port); // 1-based port
    std::size_t cylindrical_port_index(const CylPort &layout);

    // 4 x 25 single-polarized patches on a lambda/2 grid, polarization
    // alternating along every row with row-staggered starts (50 V, 50 H).
    ArrayGeometry build_planar();

    // lambda/2 uniform linear array along z, all vertical. Test workhorse.
    ArrayGeometry build_linear(std::size_t count, double carrier_freq_hz);

    // Element m gets phase exp(-j 2 pi (f/c) <position_m, direction>), unit
    // magnitude. Direction must be a unit vector.
    std::vector<cplx> steering_vector(const ArrayGeometry &geometry, const vec3 &direction,
                                      double frequency_hz);

    // Parametric patch pattern: power gain b + (1-b)((1+cos psi)/2)^q where
    // psi is the angle off boresight and b sets the front-to-back ratio.
    struct ElementPattern
    {
        double front_to_back_db = 10.0;
        double exponent = 2.0;

        double power_gain(double cos_off_boresight) const;
        double amplitude(double cos_off_boresight) const;
    };

    enum class UserPatternKind
    {
        omni,
        directive
    };

    struct UserAntenna
    {
        UserPatternKind kind = UserPatternKind::omni;
        double front_to_back_db = 15.0;
        double exponent = 2.0;
        double tilt_rad = 0.25 * pi;
        std::vector<double> azimuth_rad; // pattern heading per snapshot

        static UserAntenna make_omni(std::size_t snapshots);

        // Heading interpolated linearly so that the last snapshot sits at
        // exactly initial + total rotation.
        static UserAntenna make_directive(std::size_t snapshots, double initial_azimuth_rad,
                                          double total_rotation_rad);

        void validate() const;
    };

    // Real amplitude weight of the user antenna toward `direction` at
    // snapshot n; omni is 1 everywhere.
    double pattern_gain(const UserAntenna &user, std::size_t snapshot, const vec3 &direction);

    // Monte Carlo estimate of E|<a(d1), a(d2)>/M|^2 over independent uniform
    // sphere directions; about 1/M for spread-out geometries.
    double estimate_steering_second_moment(const ArrayGeometry &geometry, double frequency_hz,
                                           std::size_t direction_pairs, std::uint64_t seed);

    // Positions, polarizations and ordering as JSON text for plotting.
    std::string geometry_json(const ArrayGeometry &geometry, int indent = 2);

} // namespace mcht

#endif
