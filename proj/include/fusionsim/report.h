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

#ifndef FUSIONSIM_REPORT_H
#define FUSIONSIM_REPORT_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fusionsim {

/// How the probability table of a report is organized.
///   kOutcomes: one row per outcome, a single channel; rows form one distribution.
///   kScan:     one row per scan point; each row's channels form a distribution.
///   kSummary:  no distribution, statistics only.
enum class ReportLayout { kOutcomes, kScan, kSummary };

struct ReportPoint {
    std::string label;
    std::optional<double> coordinate;
    bool operator==(const ReportPoint &) const = default;
};

/// Record of one experiment run.
///
/// JSON schema (keys sorted):
///   annotations   object of strings (verdicts, adjacency text, ...)
///   channels      array of channel names
///   counts        array of per-point count arrays; empty when shots == 0
///   experiment    string
///   layout        "outcomes" | "scan" | "summary"
///   points        array of {"label", "coordinate"} (coordinate may be null)
///   probabilities array of per-point probability arrays (exact)
///   seed, shots   integers
///   settings      object echoing every input parameter
///   statistics    object of derived scalars
struct RunReport {
    std::string experiment;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    nlohmann::json settings = nlohmann::json::object();
    ReportLayout layout = ReportLayout::kSummary;
    std::vector<std::string> channels;
    std::vector<ReportPoint> points;
    std::vector<std::vector<double>> probabilities;
    std::vector<std::vector<std::uint64_t>> counts;
    std::map<std::string, double> statistics;
    std::map<std::string, std::string> annotations;

    bool operator==(const RunReport &) const = default;
};

nlohmann::json to_json(const RunReport &report);
RunReport report_from_json(const nlohmann::json &j);

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string emit_json(const RunReport &report);
/// Header row then one row per point: label, coordinate, one probability
/// column per channel, then one "n:<channel>" count column per channel when
/// counts are present. Numbers use '.' and the shortest round-trip form.
std::string emit_csv(const RunReport &report);

/// Checks the layout invariants (distributions sum to 1, counts sum to shots,
/// table shapes agree). Returns human-readable problems; empty when valid.
std::vector<std::string> validate_report(const RunReport &report, double tolerance = 1e-10);

}  // namespace fusionsim

#endif
