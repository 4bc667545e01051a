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

#include "fusionsim/report.h"

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fusionsim {

namespace {

std::string_view layout_name(ReportLayout layout) {
    switch (layout) {
        case ReportLayout::kOutcomes:
            return "outcomes";
        case ReportLayout::kScan:
            return "scan";
        case ReportLayout::kSummary:
            return "summary";
    }
    return "summary";
}

ReportLayout parse_layout(const std::string &name) {
    if (name == "outcomes") {
        return ReportLayout::kOutcomes;
    }
    if (name == "scan") {
        return ReportLayout::kScan;
    }
    if (name == "summary") {
        return ReportLayout::kSummary;
    }
    throw std::invalid_argument("unknown report layout '" + name + "'");
}

std::string format_number(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf, end);
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

nlohmann::json to_json(const RunReport &report) {
    nlohmann::json j = nlohmann::json::object();
    j["experiment"] = report.experiment;
    j["seed"] = report.seed;
    j["shots"] = report.shots;
    j["settings"] = report.settings;
    j["layout"] = layout_name(report.layout);
    j["channels"] = report.channels;
    nlohmann::json points = nlohmann::json::array();
    for (const auto &p : report.points) {
        nlohmann::json point{{"label", p.label}};
        point["coordinate"] = p.coordinate ? nlohmann::json(*p.coordinate) : nlohmann::json(nullptr);
        points.push_back(std::move(point));
    }
    j["points"] = std::move(points);
    j["probabilities"] = report.probabilities;
    j["counts"] = report.counts;
    j["statistics"] = report.statistics;
    j["annotations"] = report.annotations;
    return j;
}

RunReport report_from_json(const nlohmann::json &j) {
    RunReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.shots = j.at("shots").get<std::uint64_t>();
    r.settings = j.at("settings");
    r.layout = parse_layout(j.at("layout").get<std::string>());
    r.channels = j.at("channels").get<std::vector<std::string>>();
    for (const auto &p : j.at("points")) {
        ReportPoint point{p.at("label").get<std::string>(), std::nullopt};
        if (!p.at("coordinate").is_null()) {
            point.coordinate = p.at("coordinate").get<double>();
        }
        r.points.push_back(std::move(point));
    }
    r.probabilities = j.at("probabilities").get<std::vector<std::vector<double>>>();
    r.counts = j.at("counts").get<std::vector<std::vector<std::uint64_t>>>();
    r.statistics = j.at("statistics").get<std::map<std::string, double>>();
    r.annotations = j.at("annotations").get<std::map<std::string, std::string>>();
    return r;
}

std::string emit_json(const RunReport &report) {
    return to_json(report).dump(2) + "\n";
}

std::string emit_csv(const RunReport &report) {
    const bool with_counts = !report.counts.empty();
    std::string out = "label,coordinate";
    for (const auto &c : report.channels) {
        out += "," + csv_field(c);
    }
    if (with_counts) {
        for (const auto &c : report.channels) {
            out += "," + csv_field("n:" + c);
        }
    }
    out += "\n";
    for (std::size_t i = 0; i < report.points.size(); i++) {
        const auto &p = report.points[i];
        out += csv_field(p.label) + ",";
        if (p.coordinate) {
            out += format_number(*p.coordinate);
        }
        for (double x : report.probabilities.at(i)) {
            out += "," + format_number(x);
        }
        if (with_counts) {
            for (auto n : report.counts.at(i)) {
                out += "," + std::to_string(n);
            }
        }
        out += "\n";
    }
    return out;
}

std::vector<std::string> validate_report(const RunReport &report, double tolerance) {
    std::vector<std::string> problems;
    if (report.layout == ReportLayout::kSummary) {
        return problems;
    }
    const std::size_t rows = report.points.size();
    if (report.probabilities.size() != rows) {
        problems.push_back("probability table has " + std::to_string(report.probabilities.size()) +
                           " rows for " + std::to_string(rows) + " points");
        return problems;
    }
    if (!report.counts.empty() && report.counts.size() != rows) {
        problems.push_back("count table row count does not match points");
        return problems;
    }
    for (std::size_t i = 0; i < rows; i++) {
        if (report.probabilities[i].size() != report.channels.size()) {
            problems.push_back("row " + std::to_string(i) + " has the wrong number of channels");
        }
        for (double p : report.probabilities[i]) {
            if (!(p >= -tolerance && p <= 1 + tolerance)) {
                problems.push_back("row " + std::to_string(i) + " has probability " + format_number(p));
            }
        }
    }
    auto check_sum = [&](double total, const std::string &where) {
        if (std::abs(total - 1.0) > tolerance) {
            problems.push_back(where + " probabilities sum to " + format_number(total));
        }
    };
    auto check_counts = [&](std::uint64_t total, const std::string &where) {
        if (total != report.shots) {
            problems.push_back(where + " counts sum to " + std::to_string(total) + ", expected " +
                               std::to_string(report.shots));
        }
    };
    if (report.layout == ReportLayout::kOutcomes) {
        double total = 0;
        std::uint64_t n = 0;
        for (std::size_t i = 0; i < rows; i++) {
            total += std::accumulate(report.probabilities[i].begin(), report.probabilities[i].end(), 0.0);
            if (!report.counts.empty()) {
                n += std::accumulate(report.counts[i].begin(), report.counts[i].end(), std::uint64_t{0});
            }
        }
        check_sum(total, "outcome");
        if (!report.counts.empty()) {
            check_counts(n, "outcome");
        }
    } else {
        for (std::size_t i = 0; i < rows; i++) {
            std::string where = "point " + std::to_string(i);
            check_sum(std::accumulate(report.probabilities[i].begin(), report.probabilities[i].end(), 0.0), where);
            if (!report.counts.empty()) {
                check_counts(std::accumulate(report.counts[i].begin(), report.counts[i].end(), std::uint64_t{0}),
                             where);
            }
        }
    }
    return problems;
}

}  // namespace fusionsim
