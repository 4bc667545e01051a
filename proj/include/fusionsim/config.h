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

// Run configuration: a flat "key = value" text file ('#' starts a comment).
// Angles are given in degrees and lists are comma separated.

#ifndef FUSIONSIM_CONFIG_H
#define FUSIONSIM_CONFIG_H

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fusionsim/graph.h"
#include "fusionsim/qubit.h"
#include "fusionsim/tabletop.h"

namespace fusionsim {

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Config {
    std::optional<double> overlap;
    double white_noise = 0;
    std::optional<double> delay_fs;
    double coherence_time_fs = kDefaultCoherenceTimeFs;

    std::uint64_t shots = 10000;
    std::uint64_t seed = 1;

    std::vector<AnalyzerSetting> bases;  // empty: (X, Z, X)
    std::vector<double> delays_fs;       // empty: -1500 .. 1500 fs in 150 fs steps
    int detector_outcome = 1;
    double sigma_k = 3;

    char measured_basis = 'Z';
    int kept_outcome = 1;
    double fixed_angle_deg = 45;
    std::vector<double> swept_angles_deg;  // empty: 0 .. 180 in 10 degree steps

    std::string graph_ops = "path 2 1; path 2 3; fuse 2 3 success; measure_x 3";

    int target_length = 3;
    GrowthStrategy strategy = GrowthStrategy::kDiscardRemnants;
    std::uint64_t trials = 100000;

    /// Non-fatal notes, e.g. overlap overriding delay_fs.
    std::vector<std::string> warnings;

    NoiseModel noise() const;
    std::vector<AnalyzerSetting> bases_or_default() const;
    std::vector<double> delays_or_default() const;
    std::vector<double> swept_angles_or_default() const;
};

std::vector<std::string_view> config_keys();

/// Parses and range-checks one value. Throws ConfigError naming the key.
void set_config_value(Config &config, std::string_view key, std::string_view value);

/// Cross-key checks after all values are in (precedence warnings).
void finalize_config(Config &config);

Config parse_config(std::istream &in);
Config load_config(const std::string &path);

}  // namespace fusionsim

#endif
