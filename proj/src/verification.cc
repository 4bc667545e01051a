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

#include "fusionsim/verification.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace fusionsim {

namespace {

nlohmann::json setting_json(const AnalyzerSetting &s) {
    switch (s.kind) {
        case AnalyzerSetting::Kind::kPauliX:
            return "x";
        case AnalyzerSetting::Kind::kPauliY:
            return "y";
        case AnalyzerSetting::Kind::kPauliZ:
            return "z";
        case AnalyzerSetting::Kind::kLinear:
            return {{"linear_deg", s.theta * 180 / kPi}};
        case AnalyzerSetting::Kind::kGeneral:
            return {{"theta_deg", s.theta * 180 / kPi}, {"phi_deg", s.phi * 180 / kPi}};
    }
    return nullptr;
}

double parity_expectation(std::span<const double> probabilities) {
    double e = 0;
    for (std::size_t i = 0; i < probabilities.size(); i++) {
        e += (std::popcount(i) % 2 ? -1.0 : 1.0) * probabilities[i];
    }
    return e;
}

double parity_expectation(std::span<const std::uint64_t> counts, std::uint64_t shots) {
    double e = 0;
    for (std::size_t i = 0; i < counts.size(); i++) {
        e += (std::popcount(i) % 2 ? -1.0 : 1.0) * static_cast<double>(counts[i]);
    }
    return e / static_cast<double>(shots);
}

double to_degrees(double rad) {
    return rad * 180.0 / kPi;
}

}  // namespace

std::vector<std::uint64_t> sample_multinomial(std::span<const double> probabilities, std::uint64_t shots,
                                              std::uint64_t seed) {
    if (probabilities.empty()) {
        throw std::invalid_argument("sample_multinomial: no outcomes");
    }
    double total = 0;
    for (double p : probabilities) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("sample_multinomial: non-finite probability");
        }
        total += std::max(p, 0.0);
    }
    if (!(total > 0)) {
        throw std::invalid_argument("sample_multinomial: probabilities sum to zero");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> counts(probabilities.size(), 0);
    std::uint64_t remaining = shots;
    double remaining_mass = total;
    for (std::size_t i = 0; i + 1 < probabilities.size() && remaining > 0; i++) {
        double p = std::max(probabilities[i], 0.0);
        double q = remaining_mass > 0 ? std::clamp(p / remaining_mass, 0.0, 1.0) : 1.0;
        std::binomial_distribution<std::uint64_t> draw(remaining, q);
        counts[i] = q >= 1.0 ? remaining : draw(rng);
        remaining -= counts[i];
        remaining_mass -= p;
    }
    counts.back() += remaining;
    return counts;
}

std::vector<std::string> outcome_labels(std::span<const AnalyzerSetting> bases) {
    const std::size_t n = bases.size();
    std::vector<std::string> out;
    out.reserve(std::size_t{1} << n);
    for (std::size_t i = 0; i < (std::size_t{1} << n); i++) {
        std::string label;
        for (std::size_t q = 0; q < n; q++) {
            label += bases[q].symbols()[(i >> (n - 1 - q)) & 1];
        }
        out.push_back(std::move(label));
    }
    return out;
}

double significance(double value, double sigma, double threshold) {
    if (!(sigma > 0)) {
        throw std::invalid_argument("significance requires a positive sigma");
    }
    return (std::abs(value) - threshold) / sigma;
}

double fringe_visibility(std::span<const double> curve) {
    if (curve.empty()) {
        throw std::invalid_argument("fringe_visibility: empty curve");
    }
    auto [lo, hi] = std::minmax_element(curve.begin(), curve.end());
    double sum = *hi + *lo;
    return sum > 0 ? (*hi - *lo) / sum : 0.0;
}

RunReport polarization_histogram(const QubitState &state, std::span<const AnalyzerSetting> bases,
                                 std::uint64_t shots, std::uint64_t seed, std::span<const std::string> desired) {
    std::vector<double> probs = outcome_probabilities(state, bases);
    std::vector<std::string> labels = outcome_labels(bases);

    RunReport r;
    r.experiment = "histogram";
    r.seed = seed;
    r.shots = shots;
    r.layout = ReportLayout::kOutcomes;
    r.channels = {"p"};
    nlohmann::json bases_json = nlohmann::json::array();
    for (const auto &b : bases) {
        bases_json.push_back(setting_json(b));
    }
    r.settings["bases"] = bases_json;
    r.settings["labels"] = state.labels();

    std::vector<bool> is_desired(probs.size(), false);
    const double uniform = 1.0 / static_cast<double>(probs.size());
    for (std::size_t i = 0; i < probs.size(); i++) {
        if (desired.empty()) {
            is_desired[i] = probs[i] > uniform + 1e-12;
        } else {
            is_desired[i] = std::find(desired.begin(), desired.end(), labels[i]) != desired.end();
        }
    }
    std::string desired_names;
    for (std::size_t i = 0; i < probs.size(); i++) {
        r.points.push_back({labels[i], std::nullopt});
        r.probabilities.push_back({probs[i]});
        if (is_desired[i]) {
            desired_names += (desired_names.empty() ? "" : ",") + labels[i];
        }
    }
    r.annotations["desired"] = desired_names;

    const auto n_desired = static_cast<double>(std::count(is_desired.begin(), is_desired.end(), true));
    const double n_undesired = static_cast<double>(probs.size()) - n_desired;
    double p_desired = 0;
    double p_undesired = 0;
    for (std::size_t i = 0; i < probs.size(); i++) {
        (is_desired[i] ? p_desired : p_undesired) += probs[i];
    }
    if (n_desired > 0 && n_undesired > 0 && p_undesired > 0) {
        r.statistics["snr"] = (p_desired / n_desired) / (p_undesired / n_undesired);
    }

    if (shots > 0) {
        std::vector<std::uint64_t> counts = sample_multinomial(probs, shots, stream_seed(seed, 0));
        double d = 0;
        double u = 0;
        for (std::size_t i = 0; i < counts.size(); i++) {
            r.counts.push_back({counts[i]});
            (is_desired[i] ? d : u) += static_cast<double>(counts[i]);
        }
        if (n_desired > 0 && n_undesired > 0 && u > 0 && d > 0) {
            double snr = (d / n_desired) / (u / n_undesired);
            r.statistics["snr_sampled"] = snr;
            // Delta method for a ratio of multinomial cells.
            r.statistics["snr_sampled_error"] = snr * std::sqrt(1.0 / d + 1.0 / u);
        }
    }
    return r;
}

RunReport hom_scan(std::span<const double> delays_fs, const NoiseModel &noise, std::uint64_t shots,
                   std::uint64_t seed) {
    noise.validate();
    const double cap = noise.overlap.value_or(1.0);
    const std::array<AnalyzerSetting, 3> bases{AnalyzerSetting::pauli_z(), AnalyzerSetting::pauli_x(),
                                               AnalyzerSetting::pauli_z()};
    const auto labels = outcome_labels(bases);
    const auto index_of = [&](std::string_view name) {
        return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), name) - labels.begin());
    };
    const std::size_t plus = index_of("H+H");
    const std::size_t minus = index_of("H-H");

    auto probabilities_at = [&](double delay) {
        NoiseModel point = noise;
        point.overlap = cap * overlap_from_delay(delay, noise.coherence_time_fs);
        point.delay_fs.reset();
        return outcome_probabilities(fuse_type1(point, +1).state, bases);
    };

    RunReport r;
    r.experiment = "hom-scan";
    r.seed = seed;
    r.shots = shots;
    r.layout = ReportLayout::kScan;
    r.channels = labels;
    r.settings["delays_fs"] = std::vector<double>(delays_fs.begin(), delays_fs.end());
    r.settings["overlap_cap"] = cap;
    r.settings["white_noise"] = noise.white_noise;
    r.settings["coherence_time_fs"] = noise.coherence_time_fs;

    std::size_t nearest = 0;
    for (std::size_t k = 0; k < delays_fs.size(); k++) {
        r.points.push_back({"delay", delays_fs[k]});
        r.probabilities.push_back(probabilities_at(delays_fs[k]));
        if (shots > 0) {
            r.counts.push_back(sample_multinomial(r.probabilities.back(), shots, stream_seed(seed, k)));
        }
        if (std::abs(delays_fs[k]) < std::abs(delays_fs[nearest])) {
            nearest = k;
        }
    }
    auto zero = probabilities_at(0.0);
    r.statistics["visibility"] = (zero[plus] - zero[minus]) / (zero[plus] + zero[minus]);
    if (shots > 0 && !delays_fs.empty()) {
        auto np = static_cast<double>(r.counts[nearest][plus]);
        auto nm = static_cast<double>(r.counts[nearest][minus]);
        if (np + nm > 0) {
            r.statistics["visibility_sampled"] = (np - nm) / (np + nm);
            r.statistics["visibility_sampled_delay_fs"] = delays_fs[nearest];
        }
    }
    return r;
}

std::string_view verdict_name(MerminVerdict v) {
    switch (v) {
        case MerminVerdict::kNone:
            return "none";
        case MerminVerdict::kLocalRealismViolated:
            return "local_realism_violated";
        case MerminVerdict::kGenuineTripartite:
            return "genuine_tripartite";
    }
    return "none";
}

MerminVerdict classify_mermin(double abs_a, double sigma, double k) {
    double lower = abs_a - k * sigma;
    if (lower > kBiseparableBound) {
        return MerminVerdict::kGenuineTripartite;
    }
    if (lower > kLocalRealismBound) {
        return MerminVerdict::kLocalRealismViolated;
    }
    return MerminVerdict::kNone;
}

MerminResult mermin_test(const QubitState &state, std::uint64_t shots, std::uint64_t seed, double sigma_k) {
    if (state.num_qubits() != 3) {
        throw std::invalid_argument("mermin_test expects a three-photon state");
    }
    MerminResult m;
    m.shots = shots;
    m.seed = seed;
    m.sigma_k = sigma_k;
    double variance = 0;
    for (std::size_t t = 0; t < kMerminTerms.size(); t++) {
        std::array<AnalyzerSetting, 3> bases;
        for (std::size_t q = 0; q < 3; q++) {
            bases[q] = AnalyzerSetting::from_pauli(kMerminTerms[t][q]);
        }
        m.probabilities[t] = outcome_probabilities(state, bases);
        m.exact_terms[t] = parity_expectation(m.probabilities[t]);
        if (shots > 0) {
            m.counts[t] = sample_multinomial(m.probabilities[t], shots, stream_seed(seed, t));
            m.term_expectations[t] = parity_expectation(m.counts[t], shots);
            variance += (1.0 - m.term_expectations[t] * m.term_expectations[t]) / static_cast<double>(shots);
        } else {
            m.term_expectations[t] = m.exact_terms[t];
        }
    }
    auto combine = [](const std::array<double, 4> &e) { return e[0] + e[1] + e[2] - e[3]; };
    m.exact_a = combine(m.exact_terms);
    m.a_value = combine(m.term_expectations);
    m.abs_a = std::abs(m.a_value);
    m.sigma = std::sqrt(std::max(variance, 0.0));
    m.verdict = classify_mermin(m.abs_a, m.sigma, sigma_k);
    return m;
}

RunReport mermin_report(const MerminResult &m) {
    RunReport r;
    r.experiment = "mermin";
    r.seed = m.seed;
    r.shots = m.shots;
    r.layout = ReportLayout::kScan;
    r.settings["sigma_k"] = m.sigma_k;
    for (std::size_t i = 0; i < 8; i++) {
        std::string bits;
        for (int q = 2; q >= 0; q--) {
            bits += ((i >> q) & 1) ? '1' : '0';
        }
        r.channels.push_back(bits);
    }
    for (std::size_t t = 0; t < kMerminTerms.size(); t++) {
        std::string term(kMerminTerms[t]);
        r.points.push_back({term, std::nullopt});
        r.probabilities.push_back(m.probabilities[t]);
        if (m.shots > 0) {
            r.counts.push_back(m.counts[t]);
        }
        r.statistics[term] = m.term_expectations[t];
        r.statistics["exact_" + term] = m.exact_terms[t];
    }
    r.statistics["a_value"] = m.a_value;
    r.statistics["abs_a"] = m.abs_a;
    r.statistics["exact_a"] = m.exact_a;
    r.statistics["exact_abs_a"] = std::abs(m.exact_a);
    r.statistics["sigma"] = m.sigma;
    if (m.sigma > 0) {
        r.statistics["significance_local_realism"] = significance(m.a_value, m.sigma, kLocalRealismBound);
        r.statistics["significance_genuine"] = significance(m.a_value, m.sigma, kBiseparableBound);
    }
    r.annotations["verdict"] = std::string(verdict_name(m.verdict));
    return r;
}

RunReport correlation_scan(const QubitState &state, Label measured, const AnalyzerSetting &setting,
                           int kept_outcome, Polarizer fixed, Label swept_photon,
                           std::span<const double> swept_angles, std::uint64_t shots, std::uint64_t seed) {
    if (state.num_qubits() != 3) {
        throw std::invalid_argument("correlation_scan expects a three-photon state");
    }
    if (measured == fixed.photon || measured == swept_photon || fixed.photon == swept_photon) {
        throw std::invalid_argument("correlation_scan: measured, fixed and swept photons must differ");
    }
    if (kept_outcome != 1 && kept_outcome != -1) {
        throw std::invalid_argument("correlation_scan: kept outcome must be +1 or -1");
    }
    auto branches = measure(state, measured, setting);
    const auto &branch = branches[kept_outcome == 1 ? 0 : 1];
    if (!branch.state) {
        throw std::invalid_argument("correlation_scan: kept outcome has zero probability");
    }
    const QubitState &pair = *branch.state;
    const bool fixed_first = pair.position(fixed.photon) < pair.position(swept_photon);

    RunReport r;
    r.experiment = "correlations";
    r.seed = seed;
    r.shots = shots;
    r.layout = ReportLayout::kScan;
    r.channels = {"pp", "pb", "bp", "bb"};
    r.settings["measured"] = measured;
    r.settings["measured_basis"] = setting_json(setting);
    r.settings["kept_outcome"] = kept_outcome;
    r.settings["fixed_photon"] = fixed.photon;
    r.settings["fixed_angle_deg"] = to_degrees(fixed.angle);
    r.settings["swept_photon"] = swept_photon;
    std::vector<double> swept_deg;
    for (double a : swept_angles) {
        swept_deg.push_back(to_degrees(a));
    }
    r.settings["swept_angles_deg"] = swept_deg;

    std::vector<double> coincidence;
    std::vector<double> sampled;
    for (std::size_t k = 0; k < swept_angles.size(); k++) {
        std::array<AnalyzerSetting, 2> pols{AnalyzerSetting::linear(fixed.angle),
                                            AnalyzerSetting::linear(swept_angles[k])};
        if (!fixed_first) {
            std::swap(pols[0], pols[1]);
        }
        std::vector<double> probs = outcome_probabilities(pair, pols);
        if (!fixed_first) {
            std::swap(probs[1], probs[2]);  // reorder to (fixed, swept)
        }
        r.points.push_back({"angle", swept_deg[k]});
        r.probabilities.push_back(probs);
        coincidence.push_back(probs[0]);
        if (shots > 0) {
            r.counts.push_back(sample_multinomial(probs, shots, stream_seed(seed, k)));
            sampled.push_back(static_cast<double>(r.counts.back()[0]));
        }
    }
    r.statistics["branch_probability"] = branch.probability;
    if (!coincidence.empty()) {
        r.statistics["visibility"] = fringe_visibility(coincidence);
    }
    if (!sampled.empty()) {
        r.statistics["visibility_sampled"] = fringe_visibility(sampled);
    }
    return r;
}

double fock_pauli_expectation(const FockState &s, std::span<const Label> paths, std::string_view word) {
    if (paths.size() != word.size()) {
        throw std::invalid_argument("fock_pauli_expectation: one Pauli per path required");
    }
    if (paths.empty()) {
        return 1.0;
    }
    if (word[0] == 'I') {
        return fock_pauli_expectation(s, paths.subspan(1), word.substr(1));
    }
    auto branches = detect_polarization(s, paths[0], AnalyzerSetting::from_pauli(word[0]));
    double e = 0;
    for (const auto &b : branches) {
        if (b.probability > 0) {
            e += b.outcome * b.probability * fock_pauli_expectation(b.state, paths.subspan(1), word.substr(1));
        }
    }
    return e;
}

}  // namespace fusionsim
