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

// Command-line front end: closed-form hardening surfaces, channel tensor
// synthesis, tensor analysis and figure-style reproduction bundles. Every
// run drops a manifest (seeds, config hash, version) into the output
// directory so it can be re-run bit-identically.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcht/analysis.hpp"
#include "mcht/arrays.hpp"
#include "mcht/errors.hpp"
#include "mcht/gscm.hpp"
#include "mcht/report.hpp"
#include "mcht/synth.hpp"
#include "mcht/tensor_io.hpp"
#include "mcht/theory.hpp"

namespace
{

    using namespace mcht;

    struct GlobalOpts
    {
        std::string out_dir = ".";
        std::string format = "csv";
        std::uint64_t seed = 1;
        bool seed_given = false;
    };

    std::filesystem::path ensure_out_dir(const GlobalOpts &g)
    {
        std::filesystem::path dir(g.out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec && !std::filesystem::is_directory(dir))
            throw data_error("cannot create output directory '" + g.out_dir + "'");
        return dir;
    }

    void write_manifest(const GlobalOpts &g, RunManifest manifest)
    {
        manifest.seed = g.seed;
        atomic_write_text((ensure_out_dir(g) / "manifest.json").string(),
                          manifest_json(manifest));
    }

    nlohmann::json curve_json_rows(const HardeningCurve &curve)
    {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < curve.std_db.size(); ++i)
            rows.push_back({{"m", i + 1}, {"std_db", curve.std_db[i]}});
        return rows;
    }

    // Curves and similar tabular artifacts honor --format; summaries and
    // manifests are always JSON.
    void write_curve_artifact(const GlobalOpts &g, const std::string &stem,
                              const HardeningCurve &curve)
    {
        const auto dir = ensure_out_dir(g);
        if (g.format == "json")
            atomic_write_text((dir / (stem + ".json")).string(), curve_json_rows(curve).dump(2) + "\n");
        else
            atomic_write_text((dir / (stem + ".csv")).string(), curve_csv(curve));
    }

    void write_text_artifact(const GlobalOpts &g, const std::string &name, const std::string &text)
    {
        atomic_write_text((ensure_out_dir(g) / name).string(), text);
    }

    ArrayGeometry geometry_from_name(const std::string &name, std::size_t antennas,
                                     double carrier_freq_hz)
    {
        if (name == "cylindrical")
            return build_cylindrical();
        if (name == "planar")
            return build_planar();
        if (name == "linear")
            return build_linear(antennas, carrier_freq_hz > 0.0 ? carrier_freq_hz : 2.6e9);
        throw usage_error("unknown array '" + name + "' (expected cylindrical, planar or linear)");
    }

    // Geometry recovery from tensor metadata, for analyses that need
    // polarization tags without an explicit --array flag.
    std::optional<ArrayGeometry> geometry_from_id(const std::string &array_id,
                                                  std::size_t antennas, double carrier_freq_hz)
    {
        if (array_id == "cylindrical_128")
            return build_cylindrical();
        if (array_id == "planar_100")
            return build_planar();
        if (array_id.rfind("linear_", 0) == 0)
            return build_linear(antennas, carrier_freq_hz > 0.0 ? carrier_freq_hz : 2.6e9);
        return std::nullopt;
    }

    std::vector<std::string> canonical_args(const std::vector<std::pair<std::string, std::string>> &kv)
    {
        std::vector<std::string> args;
        args.reserve(kv.size());
        for (const auto &[k, v] : kv)
            args.push_back("--" + k + "=" + v);
        return args;
    }

    // ---- theory ----------------------------------------------------------

    int cmd_theory(const GlobalOpts &g, std::size_t m_max, const std::vector<std::string> &p_list)
    {
        if (m_max < 1)
            throw usage_error("--m-max must be at least 1");
        if (p_list.empty())
            throw usage_error("--p-list must name at least one path count");

        std::vector<Count> m_grid;
        m_grid.reserve(m_max);
        for (std::size_t m = 1; m <= m_max; ++m)
            m_grid.emplace_back(m);
        std::vector<Count> p_grid;
        p_grid.reserve(p_list.size());
        for (const std::string &p : p_list)
            p_grid.push_back(parse_count(p));

        const StdSurface surface = std_surface(m_grid, p_grid);

        const auto dir = ensure_out_dir(g);
        if (g.format == "json")
        {
            nlohmann::json j;
            j["m_grid"] = nlohmann::json::array();
            for (const Count &m : m_grid)
                j["m_grid"].push_back(m.str());
            j["p_grid"] = nlohmann::json::array();
            for (const Count &p : p_grid)
                j["p_grid"].push_back(p.str());
            j["std_db"] = nlohmann::json::array();
            for (std::size_t i = 0; i < m_grid.size(); ++i)
            {
                nlohmann::json row = nlohmann::json::array();
                for (std::size_t jj = 0; jj < p_grid.size(); ++jj)
                    row.push_back(surface.at(i, jj));
                j["std_db"].push_back(row);
            }
            atomic_write_text((dir / "surface.json").string(), j.dump(2) + "\n");
        }
        else
        {
            atomic_write_text((dir / "surface.csv").string(), surface_csv(surface));
        }

        RunManifest manifest;
        manifest.command = "theory";
        std::string plist_text;
        for (const std::string &p : p_list)
            plist_text += (plist_text.empty() ? "" : ",") + p;
        manifest.args = canonical_args({{"m-max", std::to_string(m_max)}, {"p-list", plist_text}});
        manifest.config_text = plist_text + "|m_max=" + std::to_string(m_max);
        write_manifest(g, std::move(manifest));
        return 0;
    }

    // ---- synth -----------------------------------------------------------

    struct SynthOpts
    {
        std::string model = "gaussian";
        std::string out = "tensor.mcht";
        std::string array = "cylindrical";
        std::string config_path;
        std::string user_pattern = "omni";
        std::size_t users = 1, snapshots = 300, freqs = 129, antennas = 128;
        std::size_t paths = 10;
        double bandwidth_hz = 40e6;
        double tau_max_ns = 500.0;
    };

    int cmd_synth(const GlobalOpts &g, const SynthOpts &o)
    {
        if (!g.seed_given)
            throw usage_error("synth requires --seed");

        nlohmann::json resolved;
        resolved["model"] = o.model;
        resolved["seed"] = g.seed;

        ChannelTensor tensor = [&]() -> ChannelTensor
        {
            if (o.model == "gaussian")
            {
                resolved["users"] = o.users;
                resolved["snapshots"] = o.snapshots;
                resolved["freqs"] = o.freqs;
                resolved["antennas"] = o.antennas;
                return gen_iid_gaussian(o.users, o.snapshots, o.freqs, o.antennas, g.seed);
            }
            if (o.model == "keyhole")
            {
                resolved["snapshots"] = o.snapshots;
                resolved["freqs"] = o.freqs;
                resolved["antennas"] = o.antennas;
                return gen_keyhole(o.snapshots, o.freqs, o.antennas, g.seed);
            }
            if (o.model == "scatterer")
            {
                const ArrayGeometry geo = geometry_from_name(o.array, o.antennas, 0.0);
                resolved["paths"] = o.paths;
                resolved["array"] = geo.array_id;
                resolved["snapshots"] = o.snapshots;
                resolved["freqs"] = o.freqs;
                resolved["bandwidth_hz"] = o.bandwidth_hz;
                resolved["tau_max_ns"] = o.tau_max_ns;
                return gen_finite_scatterer(o.paths, geo, o.snapshots, o.freqs, g.seed,
                                            o.bandwidth_hz, o.tau_max_ns * 1e-9);
            }
            if (o.model == "gscm")
            {
                GscmConfig config = o.config_path.empty() ? default_indoor_config()
                                                          : load_gscm_config(o.config_path);
                config.seed = g.seed;
                const ArrayGeometry geo = geometry_from_name(o.array, o.antennas,
                                                             config.carrier_freq_hz);
                UserAntenna user;
                if (o.user_pattern == "directive")
                    user.kind = UserPatternKind::directive;
                else if (o.user_pattern != "omni")
                    throw usage_error("unknown user pattern '" + o.user_pattern + "'");
                resolved = nlohmann::json::parse(gscm_config_json(config));
                resolved["model"] = "gscm";
                resolved["array"] = geo.array_id;
                resolved["user_pattern"] = o.user_pattern;
                return gen_gscm(config, geo, user);
            }
            throw usage_error("unknown model '" + o.model +
                              "' (expected gaussian, keyhole, scatterer or gscm)");
        }();

        write_tensor(tensor, o.out);
        atomic_write_text(o.out + ".config.json", resolved.dump(2) + "\n");

        RunManifest manifest;
        manifest.command = "synth";
        manifest.args = canonical_args({{"model", o.model}, {"out", o.out}});
        manifest.config_text = resolved.dump();
        write_manifest(g, std::move(manifest));
        return 0;
    }

    // ---- analyze ---------------------------------------------------------

    struct AnalyzeOpts
    {
        std::string tensor_path;
        std::size_t user = 0;
        std::string order = "strongest_first";
        std::vector<std::string> outputs = {"curve"};
        std::string array = "auto";
    };

    int cmd_analyze(const GlobalOpts &g, const AnalyzeOpts &o)
    {
        const ChannelTensor tensor = read_tensor(o.tensor_path);
        if (o.user >= tensor.users())
            throw usage_error("--user " + std::to_string(o.user) + " out of range (tensor has " +
                              std::to_string(tensor.users()) + " users)");

        const OrderKind kind = order_kind_from_name(o.order);

        std::optional<ArrayGeometry> geometry;
        if (o.array == "auto")
            geometry = geometry_from_id(tensor.meta().array_id, tensor.antennas(),
                                        tensor.meta().carrier_freq_hz);
        else if (o.array != "none")
            geometry = geometry_from_name(o.array, tensor.antennas(),
                                          tensor.meta().carrier_freq_hz);
        const ArrayGeometry *geo = geometry ? &*geometry : nullptr;

        const SubsetSelection selection = order_antennas(tensor, o.user, kind, geo);

        nlohmann::json summary;
        summary["tensor"] = o.tensor_path;
        summary["user"] = o.user;
        summary["order"] = order_kind_name(kind);
        summary["scenario_label"] = tensor.meta().scenario_label;

        for (const std::string &output : o.outputs)
        {
            if (output == "curve")
            {
                const HardeningCurve curve = hardening_curve(tensor, o.user, selection);
                write_curve_artifact(g, "curve", curve);
                summary["hardening_db"] = curve.hardening_db;
                summary["std_db_m1"] = curve.std_db.front();
                summary["std_db_full"] = curve.std_db.back();
            }
            else if (output == "cdf")
            {
                const ChannelBlock block = normalize(tensor, o.user, selection);
                write_text_artifact(g, g.format == "json" ? "cdf.json" : "cdf.csv",
                                    [&]
                                    {
                                        const EmpiricalCdf cdf = empirical_cdf(subset_gain(block));
                                        if (g.format != "json")
                                            return cdf_csv(cdf);
                                        nlohmann::json rows = nlohmann::json::array();
                                        for (std::size_t i = 0; i < cdf.x_db.size(); ++i)
                                            rows.push_back({{"x_db", cdf.x_db[i]},
                                                            {"F", cdf.prob[i]}});
                                        return rows.dump(2) + "\n";
                                    }());
            }
            else if (output == "map")
            {
                const GainMap map = gain_map(tensor, o.user);
                if (g.format == "json")
                {
                    nlohmann::json rows = nlohmann::json::array();
                    for (std::size_t m = 0; m < map.gain_db.size(); ++m)
                        rows.push_back({{"port", m + 1}, {"gain_db", map.gain_db[m]}});
                    write_text_artifact(g, "map.json", rows.dump(2) + "\n");
                }
                else
                    write_text_artifact(g, "map.csv", map_csv(map));
                summary["median_port"] = map.median_antenna + 1;
            }
            else if (output == "spread")
            {
                const GainSpread spread = time_freq_spread(tensor, o.user, selection);
                summary["time_spread_db"] = spread.time_spread_db;
                summary["freq_spread_db"] = spread.freq_spread_db;
            }
            else if (output == "polstats")
            {
                if (geo == nullptr)
                    throw usage_error("polstats needs array geometry; pass --array");
                const PolRatioStats stats = pol_ratio_stats(tensor, o.user, *geo);
                summary["pol_ratio_mean_db"] = stats.mean_db;
                summary["pol_ratio_std_db"] = stats.std_db;
                summary["pol_ratio_samples"] = stats.samples;
            }
            else
                throw usage_error("unknown output '" + output +
                                  "' (expected curve, cdf, map, spread or polstats)");
        }

        write_text_artifact(g, "summary.json", summary.dump(2) + "\n");

        RunManifest manifest;
        manifest.command = "analyze";
        manifest.args = canonical_args(
            {{"tensor", o.tensor_path}, {"user", std::to_string(o.user)}, {"order", o.order}});
        manifest.config_text = summary.dump();
        write_manifest(g, std::move(manifest));
        return 0;
    }

    // ---- reproduce -------------------------------------------------------

    struct ReproduceOpts
    {
        std::string figure;
        std::size_t runs = 10;
        std::size_t parallel = 0;
    };

    HardeningCurve gscm_mean_curve(const GscmConfig &base, const ArrayGeometry &geo,
                                   UserPatternKind kind, const RunPlan &plan,
                                   std::vector<std::uint64_t> &seeds_out)
    {
        UserAntenna user;
        user.kind = kind;

        auto generate = [&](std::size_t, std::uint64_t run_seed)
        {
            GscmConfig config = base;
            config.seed = run_seed;
            return gen_gscm(config, geo, user);
        };
        auto order = [](const ChannelTensor &t, std::size_t k)
        { return order_antennas(t, k, OrderKind::strongest_first); };

        seeds_out.clear();
        for (std::size_t r = 0; r < plan.runs; ++r)
            seeds_out.push_back(plan.run_seed(r));
        return run_ensemble(plan, generate, order).mean_curve;
    }

    int cmd_reproduce(const GlobalOpts &g, const ReproduceOpts &o)
    {
        RunManifest manifest;
        manifest.command = "reproduce";
        manifest.args = canonical_args({{"figure", o.figure}, {"runs", std::to_string(o.runs)}});

        if (o.figure == "fig5")
        {
            std::vector<Count> m_grid;
            for (std::size_t m = 1; m <= 128; ++m)
                m_grid.emplace_back(m);
            const std::vector<Count> p_grid = {Count(1),  Count(2),  Count(3),  Count(5),
                                               Count(10), Count(20), Count(50), Count(100),
                                               Count::inf()};
            write_text_artifact(g, "fig5_surface.csv", surface_csv(std_surface(m_grid, p_grid)));
            manifest.config_text = "fig5";
            write_manifest(g, std::move(manifest));
            return 0;
        }

        if (o.figure == "fig7" || o.figure == "fig8")
        {
            const GscmConfig config = [&]
            {
                GscmConfig c = default_indoor_config();
                c.seed = g.seed;
                return c;
            }();
            const ArrayGeometry geo = build_cylindrical();
            const ChannelTensor tensor = gen_gscm(config, geo, UserAntenna{});
            const ChannelTensor gauss = gen_iid_gaussian(1, tensor.snapshots(), tensor.freqs(),
                                                         tensor.antennas(), g.seed);

            const std::vector<OrderKind> kinds =
                o.figure == "fig7"
                    ? std::vector<OrderKind>{OrderKind::original, OrderKind::strongest_first,
                                             OrderKind::weakest_first}
                    : std::vector<OrderKind>{OrderKind::vertical_only, OrderKind::horizontal_only,
                                             OrderKind::both_alternating};

            write_curve_artifact(g, o.figure + "_gaussian",
                                 hardening_curve(gauss, 0, OrderKind::original));
            for (OrderKind kind : kinds)
                write_curve_artifact(g, o.figure + "_" + order_kind_name(kind),
                                     hardening_curve(tensor, 0, kind, &geo));

            manifest.config_text = gscm_config_json(config, -1);
            write_manifest(g, std::move(manifest));
            return 0;
        }

        if (o.figure == "fig14" || o.figure == "fig15")
        {
            GscmConfig config = default_indoor_config();
            const ArrayGeometry geo = build_cylindrical();

            RunPlan plan;
            plan.runs = o.runs;
            plan.base_seed = g.seed;
            plan.max_parallel = o.parallel;

            std::vector<std::uint64_t> seeds;
            const HardeningCurve omni =
                gscm_mean_curve(config, geo, UserPatternKind::omni, plan, seeds);
            const HardeningCurve directive =
                gscm_mean_curve(config, geo, UserPatternKind::directive, plan, seeds);

            if (o.figure == "fig14")
            {
                write_curve_artifact(g, "fig14_omni", omni);
                write_curve_artifact(g, "fig14_directive", directive);
            }
            else
            {
                write_text_artifact(g, "fig15_omni_delta.csv", delta_csv(curve_delta(omni)));
                write_text_artifact(g, "fig15_directive_delta.csv",
                                    delta_csv(curve_delta(directive)));
            }

            manifest.run_seeds = seeds;
            manifest.config_text = gscm_config_json(config, -1);
            write_manifest(g, std::move(manifest));
            return 0;
        }

        throw usage_error("unknown figure '" + o.figure +
                          "' (expected fig5, fig7, fig8, fig14 or fig15)");
    }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"massive MIMO channel hardening synthesis and analysis toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out-dir", g.out_dir, "Directory for artifacts")->capture_default_str();
    app.add_option("--format", g.format, "Artifact format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    auto *seed_opt = app.add_option("--seed", g.seed, "Random seed");

    std::size_t theory_m_max = 128;
    std::vector<std::string> theory_p_list = {"1", "3", "10", "30", "100", "inf"};
    CLI::App *theory = app.add_subcommand("theory", "Closed-form hardening std surface");
    theory->add_option("--m-max", theory_m_max, "Largest antenna count")->capture_default_str();
    theory->add_option("--p-list", theory_p_list, "Path counts (integers or 'inf')")
        ->delimiter(',')
        ->capture_default_str();

    SynthOpts so;
    CLI::App *synth = app.add_subcommand("synth", "Synthesize a channel tensor file");
    synth->add_option("--model", so.model, "gaussian, keyhole, scatterer or gscm")
        ->capture_default_str();
    synth->add_option("--out", so.out, "Output tensor path")->capture_default_str();
    synth->add_option("-K,--users", so.users, "Users")->capture_default_str();
    synth->add_option("-N,--snapshots", so.snapshots, "Snapshots")->capture_default_str();
    synth->add_option("-F,--freqs", so.freqs, "Frequency points")->capture_default_str();
    synth->add_option("-M,--antennas", so.antennas, "Antennas")->capture_default_str();
    synth->add_option("-P,--paths", so.paths, "Paths (scatterer model)")->capture_default_str();
    synth->add_option("--array", so.array, "cylindrical, planar or linear")
        ->capture_default_str();
    synth->add_option("--bandwidth", so.bandwidth_hz, "Bandwidth in Hz (scatterer)")
        ->capture_default_str();
    synth->add_option("--tau-max", so.tau_max_ns, "Delay cap in ns (scatterer)")
        ->capture_default_str();
    synth->add_option("--config", so.config_path, "GSCM config JSON path");
    synth->add_option("--user-pattern", so.user_pattern, "omni or directive (gscm)")
        ->capture_default_str();

    AnalyzeOpts ao;
    CLI::App *analyze = app.add_subcommand("analyze", "Analyze a channel tensor file");
    analyze->add_option("--tensor", ao.tensor_path, "Tensor file path")->required();
    analyze->add_option("--user", ao.user, "User index")->capture_default_str();
    analyze->add_option("--order", ao.order, "Antenna selection order")->capture_default_str();
    analyze->add_option("--outputs", ao.outputs, "curve, cdf, map, spread, polstats")
        ->delimiter(',')
        ->capture_default_str();
    analyze->add_option("--array", ao.array, "auto, cylindrical, planar, linear or none")
        ->capture_default_str();

    ReproduceOpts ro;
    CLI::App *reproduce = app.add_subcommand("reproduce", "Reproduce a figure-style bundle");
    reproduce->add_option("--figure", ro.figure, "fig5, fig7, fig8, fig14 or fig15")->required();
    reproduce->add_option("--runs", ro.runs, "Ensemble runs")->capture_default_str();
    reproduce->add_option("--parallel", ro.parallel, "Max parallel runs (0 = hardware)")
        ->capture_default_str();

    for (CLI::App *sub : {theory, synth, analyze, reproduce})
        sub->fallthrough();

    try
    {
        app.parse(argc, argv);
        g.seed_given = seed_opt->count() > 0;

        if (theory->parsed())
            return cmd_theory(g, theory_m_max, theory_p_list);
        if (synth->parsed())
            return cmd_synth(g, so);
        if (analyze->parsed())
            return cmd_analyze(g, ao);
        if (reproduce->parsed())
            return cmd_reproduce(g, ro);
        throw mcht::usage_error("no subcommand given");
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return static_cast<int>(mcht::exit_code::usage);
    }
    catch (const mcht::usage_error &e)
    {
        std::cerr << "usage error: " << e.what() << "\n";
        return static_cast<int>(mcht::exit_code::usage);
    }
    catch (const mcht::data_error &e)
    {
        std::cerr << "data error: " << e.what() << "\n";
        return static_cast<int>(mcht::exit_code::data);
    }
    catch (const mcht::invariant_error &e)
    {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return static_cast<int>(mcht::exit_code::invariant);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(mcht::exit_code::invariant);
    }
}
