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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>

#include "fusionsim/cli.h"
#include "fusionsim/graph.h"
#include "fusionsim/tabletop.h"
#include "fusionsim/verification.h"

namespace py = pybind11;
using namespace fusionsim;

namespace {

std::string run_json(const std::string &command, const std::map<std::string, std::string> &overrides) {
    Config config;
    for (const auto &[key, value] : overrides) {
        set_config_value(config, key, value);
    }
    finalize_config(config);
    return emit_json(run_command(command, config));
}

}  // namespace

PYBIND11_MODULE(_fusionsim, m) {
    m.doc() = "Type-I fusion cluster-state simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("run_json", &run_json, py::arg("command"), py::arg("overrides") = std::map<std::string, std::string>{},
          "Runs a CLI command with string-valued config overrides and returns the report JSON.");
    m.def("config_keys", [] {
        std::vector<std::string> out;
        for (auto k : config_keys()) {
            out.emplace_back(k);
        }
        return out;
    });
    m.def("commands", [] {
        std::vector<std::string> out;
        for (auto c : cli_commands()) {
            out.emplace_back(c);
        }
        return out;
    });
    m.def("main", [](const std::vector<std::string> &args) {
        std::ostringstream out;
        std::ostringstream err;
        int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });

    m.def(
        "fuse",
        [](double overlap, double white_noise, int outcome) {
            FusionRun r = fuse_type1(NoiseModel{overlap, white_noise}, outcome);
            py::dict d;
            d["success_probability"] = r.success_probability;
            d["outcome_probability"] = r.outcome_probability;
            d["fidelity_to_cluster"] = fidelity(r.state, ideal_cluster(outcome));
            d["purity"] = r.state.purity();
            d["labels"] = r.state.labels();
            return d;
        },
        py::arg("overlap") = 1.0, py::arg("white_noise") = 0.0, py::arg("outcome") = 1);

    m.def(
        "mermin_abs",
        [](double overlap, double white_noise) {
            auto state = cluster_to_ghz(fuse_type1(NoiseModel{overlap, white_noise}, 1).state);
            return mermin_test(state, 0, 0).abs_a;
        },
        py::arg("overlap") = 1.0, py::arg("white_noise") = 0.0);

    m.def(
        "estimate_cost",
        [](int target_length, const std::string &strategy, std::uint64_t trials, std::uint64_t seed) {
            CostEstimate e = estimate_cost(target_length, parse_strategy(strategy), trials, seed);
            return py::make_tuple(e.mean_bell_pairs, e.standard_error);
        },
        py::arg("target_length"), py::arg("strategy") = "discard-remnants", py::arg("trials") = 10000,
        py::arg("seed") = 1);

    m.def(
        "graph_adjacency", [](const std::string &program) { return run_graph_program(program).annotations.at("adjacency"); },
        py::arg("program"));

    m.def("sample_multinomial", [](const std::vector<double> &p, std::uint64_t shots, std::uint64_t seed) {
        return sample_multinomial(p, shots, seed);
    });
}
