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

// Artifact serialization: fixed-schema CSV emitters for curves, CDFs, gain
// maps and theory surfaces, plus the per-run manifest. Numbers use %.17g so
// values survive a text round-trip; -inf dB renders as an empty CSV field
// (null in JSON, which the JSON library emits for non-finite numbers).

#ifndef MCHT_REPORT_HPP
#define MCHT_REPORT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mcht/analysis.hpp"
#include "mcht/theory.hpp"

namespace mcht
{

    // Temp-file plus rename; never leaves a half-written artifact behind.
    void atomic_write_text(const std::string &path, const std::string &content);

    std::string format_value(double v); // %.17g, empty string for -inf

    std::string curve_csv(const HardeningCurve &curve);   // m,std_db
    std::string delta_csv(std::span<const double> delta); // m,delta_db from m = 2
    std::string cdf_csv(const EmpiricalCdf &cdf);         // x_db,F
    std::string map_csv(const GainMap &map);              // port,gain_db (ports 1-based)
    std::string surface_csv(const StdSurface &surface);   // m,p_<count>,...

    struct RunManifest
    {
        std::string command;
        std::vector<std::string> args;       // resolved flag spellings
        std::uint64_t seed = 0;
        std::vector<std::uint64_t> run_seeds;
        std::string config_text;             // resolved config, hashed into the manifest
    };

    std::string manifest_json(const RunManifest &manifest);

} // namespace mcht

#endif
