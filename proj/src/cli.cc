// Copyright 2026 The fusionsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fusionsim/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fusionsim/verification.h"

namespace fusionsim {

namespace {

constexpr std::array<std::string_view, 7> kCommands{"fuse",         "histogram", "hom-scan", "mermin",
                                                    "correlations", "graph",     "resources"};

double radians(double deg) {
    return deg * kPi / 180.0;
}

nlohmann::json noise_json(const Config &c) {
    NoiseModel n = c.noise();
    nlohmann::json j;
    j["overlap"] = n.overlap ? nlohmann::json(*n.overlap) : nlohmann::json(nullptr);
    j["white_noise"] = n.white_noise;
    j["delay_fs"] = c.delay_fs ? nlohmann::json(*c.delay_fs) : nlohmann::json(nullptr);
    j["coherence_time_fs"] = n.coherence_time_fs;
    j["effective_overlap"] = n.effective_overlap();
    j["detector_outcome"] = c.detector_outcome;
    return j;
}

QubitState fused_state(const Config &c) {
    return fuse_type1(c.noise(), c.detector_outcome).state;
}

RunReport fuse_report(const Config &c) {
    FusionRun run = fuse_type1(c.noise(), c.detector_outcome);
    const std::array<AnalyzerSetting, 3> zzz{AnalyzerSetting::pauli_z(), AnalyzerSetting::pauli_z(),
                                             AnalyzerSetting::pauli_z()};
    RunReport r;
    r.experiment = "fuse";
    r.seed = c.seed;
    r.shots = c.shots;
    r.layout = ReportLayout::kOutcomes;
    r.channels = {"p"};
    r.settings["labels"] = run.state.labels();
    auto probs = outcome_probabilities(run.state, zzz);
    auto names = outcome_labels(zzz);
    for (std::size_t i = 0; i < probs.size(); i++) {
        r.points.push_back({names[i], std::nullopt});
        r.probabilities.push_back({probs[i]});
    }
    if (c.shots > 0) {
        auto counts = sample_multinomial(probs, c.shots, stream_seed(c.seed, 0));
        for (auto n : counts) {
            r.counts.push_back({n});
        }
    }
    r.statistics["success_probability"] = run.success_probability;
    r.statistics["outcome_probability"] = run.outcome_probability;
    r.statistics["fidelity_to_cluster"] = fidelity(run.state, ideal_cluster(c.detector_outcome));
    r.statistics["purity"] = run.state.purity();
    r.statistics["trace"] = run.state.trace();
    return r;
}

std::pair<GraphState, GraphState> split_component(const GraphState &g, Label photon) {
    std::set<Label> reps{g.find(photon)};
    std::vector<Label> frontier{g.find(photon)};
    while (!frontier.empty()) {
        Label v = frontier.back();
        frontier.pop_back();
        for (Label n : g.neighbors(v)) {
            if (reps.insert(g.find(n)).second) {
                frontier.push_back(g.find(n));
            }
        }
    }
    GraphState rest;
    GraphState component;
    for (const auto &[rep, photons] : g.vertices()) {
        (reps.count(rep) ? component : rest).add_vertex(photons);
    }
    for (const auto &[a, b] : g.edges()) {
        (reps.count(a) ? component : rest).add_edge(a, b);
    }
    return {rest, component};
}

std::string byproduct_text(const std::vector<Byproduct> &bs) {
    std::string out;
    for (const auto &b : bs) {
        out += (out.empty() ? "" : " ") + std::string(1, b.pauli) + std::to_string(b.photon);
    }
    return out.empty() ? "none" : out;
}

std::string join(const std::vector<std::string> &items, std::string_view sep) {
    std::string out;
    for (const auto &s : items) {
        out += (out.empty() ? "" : std::string(sep)) + s;
    }
    return out;
}

Label graph_label(std::string_view op, const std::string &token) {
    try {
        std::size_t used = 0;
        int v = std::stoi(token, &used);
        if (used == token.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw ConfigError("graph_ops: '" + std::string(op) + "' expects integer arguments, got '" + token + "'");
}

}  // namespace

std::vector<std::string_view> cli_commands() {
    return {kCommands.begin(), kCommands.end()};
}

RunReport run_graph_program(std::string_view program) {
    GraphState g;
    std::vector<std::string> notes;
    std::string text(program);
    std::stringstream ops(text);
    std::string op_text;
    while (std::getline(ops, op_text, ';')) {
        std::stringstream words(op_text);
        std::vector<std::string> w;
        for (std::string t; words >> t;) {
            w.push_back(t);
        }
        if (w.empty()) {
            continue;
        }
        const std::string &op = w[0];
        auto expect = [&](std::size_t n) {
            if (w.size() != n) {
                throw ConfigError("graph_ops: '" + op + "' takes " + std::to_string(n - 1) + " arguments");
            }
        };
        try {
            if (op == "path") {
                expect(3);
                GraphState chain = path(graph_label(op, w[1]), graph_label(op, w[2]));
                for (Label p : chain.physical_labels()) {
                    if (g.contains(p)) {
                        throw ConfigError("graph_ops: photon " + std::to_string(p) + " already exists");
                    }
                }
                for (const auto &[_, photons] : chain.vertices()) {
                    g.add_vertex(photons);
                }
                for (const auto &[a, b] : chain.edges()) {
                    g.add_edge(a, b);
                }
            } else if (op == "fuse") {
                expect(4);
                Label a = graph_label(op, w[1]);
                Label b = graph_label(op, w[2]);
                if (w[3] != "success" && w[3] != "failure") {
                    throw ConfigError("graph_ops: fuse outcome must be success or failure");
                }
                if (!g.contains(a) || !g.contains(b)) {
                    throw ConfigError("graph_ops: fuse on a missing photon");
                }
                auto [rest, right] = split_component(g, b);
                if (!rest.contains(a)) {
                    throw ConfigError("graph_ops: fuse needs photons from two separate clusters");
                }
                g = fuse(rest, right, a, b, w[3] == "success");
            } else if (op == "measure_z" || op == "measure_x") {
                expect(2);
                Label p = graph_label(op, w[1]);
                if (!g.contains(p)) {
                    throw ConfigError("graph_ops: " + op + " on missing photon " + w[1]);
                }
                bool x = op == "measure_x";
                notes.push_back(op + " " + w[1] + " opposite outcome: " +
                                byproduct_text(x ? measure_x_byproducts(g, p) : measure_z_byproducts(g, p)));
                g = x ? measure_x(g, p) : measure_z(g, p);
            } else {
                throw ConfigError("graph_ops: unknown op '" + op + "'");
            }
        } catch (const ConfigError &) {
            throw;
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("graph_ops: ") + e.what());
        }
    }

    RunReport r;
    r.experiment = "graph";
    r.layout = ReportLayout::kSummary;
    r.settings["graph_ops"] = std::string(program);
    r.annotations["adjacency"] = g.to_adjacency_text();
    r.annotations["byproducts"] = join(notes, "\n");
    r.annotations["stabilizers"] = join(stabilizers(g), " ");
    r.annotations["encoding_stabilizers"] = join(encoding_stabilizers(g), " ");
    r.statistics["num_vertices"] = static_cast<double>(g.num_vertices());
    r.statistics["num_photons"] = static_cast<double>(g.physical_labels().size());
    r.statistics["num_edges"] = static_cast<double>(g.edges().size());
    const auto n = g.physical_labels().size();
    if (n > 0 && n <= static_cast<std::size_t>(kMaxBuildQubits)) {
        QubitState s = build_state(g);
        double worst = 1;
        for (const auto &word : stabilizers(g)) {
            worst = std::min(worst, expectation(s, word));
        }
        for (const auto &word : encoding_stabilizers(g)) {
            worst = std::min(worst, expectation(s, word));
        }
        r.statistics["min_stabilizer_expectation"] = worst;
    }
    return r;
}

RunReport run_command(std::string_view command, const Config &c) {
    try {
        c.noise().validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    RunReport r;
    if (command == "fuse") {
        r = fuse_report(c);
    } else if (command == "histogram") {
        auto bases = c.bases_or_default();
        r = polarization_histogram(fused_state(c), bases, c.shots, c.seed);
    } else if (command == "hom-scan") {
        auto delays = c.delays_or_default();
        r = hom_scan(delays, c.noise(), c.shots, c.seed);
    } else if (command == "mermin") {
        r = mermin_report(mermin_test(cluster_to_ghz(fused_state(c)), c.shots, c.seed, c.sigma_k));
    } else if (command == "correlations") {
        std::vector<double> swept;
        for (double deg : c.swept_angles_or_default()) {
            swept.push_back(radians(deg));
        }
        r = correlation_scan(fused_state(c), kPhoton3, AnalyzerSetting::from_pauli(c.measured_basis), c.kept_outcome,
                             Polarizer{kPhoton1, radians(c.fixed_angle_deg)}, kPhoton4, swept, c.shots, c.seed);
    } else if (command == "graph") {
        r = run_graph_program(c.graph_ops);
    } else if (command == "resources") {
        CostEstimate est = estimate_cost(c.target_length, c.strategy, c.trials, c.seed);
        r.experiment = "resources";
        r.seed = c.seed;
        r.layout = ReportLayout::kSummary;
        r.settings["target_length"] = c.target_length;
        r.settings["strategy"] = std::string(strategy_name(c.strategy));
        r.settings["trials"] = c.trials;
        r.statistics["mean_bell_pairs"] = est.mean_bell_pairs;
        r.statistics["standard_error"] = est.standard_error;
        r.statistics["trials"] = static_cast<double>(est.trials);
        return r;
    } else {
        throw ConfigError("unknown command '" + std::string(command) + "'");
    }
    if (command != "graph") {
        r.settings["noise"] = noise_json(c);
    }
    return r;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Type-I fusion cluster-state simulator"};
    std::string command;
    std::string config_path;
    std::string out_path;
    std::string csv_path;
    app.add_option("command", command, "fuse | histogram | hom-scan | mermin | correlations | graph | resources")
        ->required();
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--out", out_path, "write JSON here instead of stdout");
    auto *csv = app.add_option("--csv", csv_path, "also write CSV (default: --out path with .csv)")->expected(0, 1);

    std::map<std::string, std::string> overrides;
    std::vector<std::pair<std::string, CLI::Option *>> flags;
    for (auto key : config_keys()) {
        std::string flag(key);
        std::replace(flag.begin(), flag.end(), '_', '-');
        flags.emplace_back(std::string(key), app.add_option("--" + flag, overrides[std::string(key)]));
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    RunReport report;
    try {
        if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
            throw ConfigError("unknown command '" + command + "'");
        }
        Config config = config_path.empty() ? Config{} : load_config(config_path);
        for (const auto &[key, opt] : flags) {
            if (opt->count() > 0) {
                set_config_value(config, key, overrides[key]);
            }
        }
        finalize_config(config);
        for (const auto &w : config.warnings) {
            err << "warning: " << w << "\n";
        }
        if (csv->count() > 0 && csv_path.empty()) {
            if (out_path.empty()) {
                throw ConfigError("--csv without a path needs --out");
            }
            csv_path = std::filesystem::path(out_path).replace_extension(".csv").string();
        }
        report = run_command(command, config);
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ContractViolation &e) {
        err << "validation failure: " << e.what() << "\n";
        return kExitValidationFailure;
    } catch (const std::invalid_argument &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception &e) {
        err << "validation failure: " << e.what() << "\n";
        return kExitValidationFailure;
    }

    auto problems = validate_report(report);
    if (auto t = report.statistics.find("trace"); t != report.statistics.end() && std::abs(t->second - 1) > 1e-10) {
        problems.push_back("state trace drifted to " + std::to_string(t->second));
    }
    if (!problems.empty()) {
        for (const auto &p : problems) {
            err << "validation failure: " << p << "\n";
        }
        return kExitValidationFailure;
    }

    const std::string json = emit_json(report);
    if (out_path.empty()) {
        out << json;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << json;
        if (!f) {
            err << "error: cannot write " << out_path << "\n";
            return kExitConfigError;
        }
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        f << emit_csv(report);
        if (!f) {
            err << "error: cannot write " << csv_path << "\n";
            return kExitConfigError;
        }
    }
    return kExitOk;
}

}  // namespace fusionsim
