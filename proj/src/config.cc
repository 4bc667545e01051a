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

#include "fusionsim/config.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

namespace fusionsim {

namespace {

constexpr std::array<std::string_view, 18> kKeys{
    "overlap",        "white_noise",     "delay_fs",         "coherence_time_fs", "shots",
    "seed",           "bases",           "delays_fs",        "detector_outcome",  "sigma_k",
    "measured_basis", "kept_outcome",    "fixed_angle_deg",  "swept_angles_deg",  "graph_ops",
    "target_length",  "strategy",        "trials",
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(std::string_view key, const std::string &message) {
    throw ConfigError(std::string(key) + ": " + message);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double x = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(x)) {
        fail(key, "expected a finite number, got '" + std::string(text) + "'");
    }
    return x;
}

std::int64_t parse_int(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    std::int64_t x = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        fail(key, "expected an integer, got '" + std::string(text) + "'");
    }
    return x;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t x = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        fail(key, "expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return x;
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> out;
    while (true) {
        auto comma = text.find(',');
        out.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
    std::vector<double> out;
    for (auto item : split_list(text)) {
        out.push_back(parse_double(key, item));
    }
    return out;
}

double in_unit_interval(std::string_view key, std::string_view text) {
    double x = parse_double(key, text);
    if (x < 0 || x > 1) {
        fail(key, "value " + std::string(trim(text)) + " outside [0, 1]");
    }
    return x;
}

int parse_sign(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "+" || text == "1" || text == "+1") {
        return 1;
    }
    if (text == "-" || text == "-1") {
        return -1;
    }
    fail(key, "expected +1 or -1, got '" + std::string(text) + "'");
}

std::vector<double> linspace_step(double first, double last, double step) {
    std::vector<double> out;
    const auto n = static_cast<int>(std::lround((last - first) / step));
    for (int k = 0; k <= n; k++) {
        out.push_back(first + step * k);
    }
    return out;
}

}  // namespace

NoiseModel Config::noise() const {
    NoiseModel n;
    n.overlap = overlap;
    n.white_noise = white_noise;
    n.delay_fs = overlap ? std::nullopt : delay_fs;
    n.coherence_time_fs = coherence_time_fs;
    return n;
}

std::vector<AnalyzerSetting> Config::bases_or_default() const {
    if (!bases.empty()) {
        return bases;
    }
    return {AnalyzerSetting::pauli_x(), AnalyzerSetting::pauli_z(), AnalyzerSetting::pauli_x()};
}

std::vector<double> Config::delays_or_default() const {
    return delays_fs.empty() ? linspace_step(-1500, 1500, 150) : delays_fs;
}

std::vector<double> Config::swept_angles_or_default() const {
    return swept_angles_deg.empty() ? linspace_step(0, 180, 10) : swept_angles_deg;
}

std::vector<std::string_view> config_keys() {
    return {kKeys.begin(), kKeys.end()};
}

void set_config_value(Config &c, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "overlap") {
        c.overlap = in_unit_interval(key, value);
    } else if (key == "white_noise") {
        c.white_noise = in_unit_interval(key, value);
    } else if (key == "delay_fs") {
        c.delay_fs = parse_double(key, value);
    } else if (key == "coherence_time_fs") {
        c.coherence_time_fs = parse_double(key, value);
        if (!(c.coherence_time_fs > 0)) {
            fail(key, "must be > 0");
        }
    } else if (key == "shots") {
        c.shots = parse_uint(key, value);
    } else if (key == "seed") {
        c.seed = parse_uint(key, value);
    } else if (key == "bases") {
        c.bases.clear();
        for (auto item : split_list(value)) {
            if (item.size() == 1 && std::string_view("xyzXYZ").find(item[0]) != std::string_view::npos) {
                c.bases.push_back(AnalyzerSetting::from_pauli(static_cast<char>(std::toupper(item[0]))));
            } else {
                c.bases.push_back(AnalyzerSetting::linear(parse_double(key, item) * kPi / 180));
            }
        }
        if (c.bases.size() != 3) {
            fail(key, "expected 3 analyzer settings, got " + std::to_string(c.bases.size()));
        }
    } else if (key == "delays_fs") {
        c.delays_fs = parse_list(key, value);
    } else if (key == "detector_outcome") {
        c.detector_outcome = parse_sign(key, value);
    } else if (key == "sigma_k") {
        c.sigma_k = parse_double(key, value);
        if (!(c.sigma_k >= 0)) {
            fail(key, "must be >= 0");
        }
    } else if (key == "measured_basis") {
        if (value.size() != 1 || std::string_view("xzXZ").find(value[0]) == std::string_view::npos) {
            fail(key, "expected x or z, got '" + std::string(value) + "'");
        }
        c.measured_basis = static_cast<char>(std::toupper(value[0]));
    } else if (key == "kept_outcome") {
        c.kept_outcome = parse_sign(key, value);
    } else if (key == "fixed_angle_deg") {
        c.fixed_angle_deg = parse_double(key, value);
    } else if (key == "swept_angles_deg") {
        c.swept_angles_deg = parse_list(key, value);
    } else if (key == "graph_ops") {
        c.graph_ops = std::string(value);
    } else if (key == "target_length") {
        auto n = parse_int(key, value);
        if (n < 2 || n > 1000) {
            fail(key, "value " + std::to_string(n) + " outside [2, 1000]");
        }
        c.target_length = static_cast<int>(n);
    } else if (key == "strategy") {
        try {
            c.strategy = parse_strategy(value);
        } catch (const std::invalid_argument &) {
            fail(key, "expected discard-remnants or recycle, got '" + std::string(value) + "'");
        }
    } else if (key == "trials") {
        c.trials = parse_uint(key, value);
        if (c.trials < 1) {
            fail(key, "must be >= 1");
        }
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

void finalize_config(Config &c) {
    c.warnings.clear();
    if (c.overlap && c.delay_fs) {
        c.warnings.push_back("both overlap and delay_fs are set; using overlap");
    }
}

Config parse_config(std::istream &in) {
    Config c;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::string_view s = line;
        s = trim(s.substr(0, s.find('#')));
        if (s.empty()) {
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        set_config_value(c, trim(s.substr(0, eq)), s.substr(eq + 1));
    }
    finalize_config(c);
    return c;
}

Config load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    return parse_config(f);
}

}  // namespace fusionsim
