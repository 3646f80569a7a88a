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

#include "mcht/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mcht/errors.hpp"

namespace mcht
{

    void atomic_write_text(const std::string &path, const std::string &content)
    {
        const std::filesystem::path target(path);
        std::filesystem::path tmp = target;
        tmp += ".tmp";

        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw data_error("cannot open '" + tmp.string() + "' for writing");
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            if (!out)
            {
                std::error_code ec;
                std::filesystem::remove(tmp, ec);
                throw data_error("failed writing '" + tmp.string() + "'");
            }
        }

        std::error_code ec;
        std::filesystem::rename(tmp, target, ec);
        if (ec)
        {
            std::filesystem::remove(tmp, ec);
            throw data_error("cannot move artifact into place at '" + path + "'");
        }
    }

    std::string format_value(double v)
    {
        if (std::isinf(v) && v < 0.0)
            return std::string();
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    std::string curve_csv(const HardeningCurve &curve)
    {
        std::string out = "m,std_db\n";
        for (std::size_t i = 0; i < curve.std_db.size(); ++i)
        {
            out += std::to_string(i + 1);
            out += ',';
            out += format_value(curve.std_db[i]);
            out += '\n';
        }
        return out;
    }

    std::string delta_csv(std::span<const double> delta)
    {
        std::string out = "m,delta_db\n";
        for (std::size_t i = 0; i < delta.size(); ++i)
        {
            out += std::to_string(i + 2);
            out += ',';
            out += format_value(delta[i]);
            out += '\n';
        }
        return out;
    }

    std::string cdf_csv(const EmpiricalCdf &cdf)
    {
        std::string out = "x_db,F\n";
        for (std::size_t i = 0; i < cdf.x_db.size(); ++i)
        {
            out += format_value(cdf.x_db[i]);
            out += ',';
            out += format_value(cdf.prob[i]);
            out += '\n';
        }
        return out;
    }

    std::string map_csv(const GainMap &map)
    {
        std::string out = "port,gain_db\n";
        for (std::size_t m = 0; m < map.gain_db.size(); ++m)
        {
            out += std::to_string(m + 1);
            out += ',';
            out += format_value(map.gain_db[m]);
            out += '\n';
        }
        return out;
    }

    std::string surface_csv(const StdSurface &surface)
    {
        std::string out = "m";
        for (const Count &p : surface.p_grid)
            out += ",p_" + p.str();
        out += '\n';
        for (std::size_t i = 0; i < surface.m_grid.size(); ++i)
        {
            out += surface.m_grid[i].str();
            for (std::size_t j = 0; j < surface.p_grid.size(); ++j)
            {
                out += ',';
                out += format_value(surface.at(i, j));
            }
            out += '\n';
        }
        return out;
    }

    std::string manifest_json(const RunManifest &manifest)
    {
        nlohmann::json j;
        j["tool"] = "mcht";
        j["version"] = mcht_version;
        j["command"] = manifest.command;
        j["args"] = manifest.args;
        j["seed"] = manifest.seed;
        j["run_seeds"] = manifest.run_seeds;

        char hash[20];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(manifest.config_text)));
        j["config_fnv1a64"] = hash;
        return j.dump(2) + "\n";
    }

} // namespace mcht
