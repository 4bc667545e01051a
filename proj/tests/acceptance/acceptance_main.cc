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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fusionsim/graph.h"
#include "fusionsim/tabletop.h"
#include "fusionsim/verification.h"

using namespace fusionsim;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string &what) {
        if (!condition) {
            if (ok) {
                detail << "failed: ";
            } else {
                detail << "; ";
            }
            detail << what;
            ok = false;
        }
    }
};

double deg(double d) {
    return d * kPi / 180;
}

std::vector<double> sweep_0_180() {
    std::vector<double> out;
    for (int k = 0; k <= 18; k++) {
        out.push_back(deg(10.0 * k));
    }
    return out;
}

QubitState explicit_cluster() {
    const double r = 1 / std::sqrt(2.0);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    // |+H+> + |-V->, index bits (1, 3, 4).
    for (int a = 0; a < 2; a++) {
        for (int c = 0; c < 2; c++) {
            double plus = r * r;
            double minus = (a ? -r : r) * (c ? -r : r);
            v(a * 4 + 0 * 2 + c) += plus * r;
            v(a * 4 + 1 * 2 + c) += minus * r;
        }
    }
    return QubitState::pure({1, 3, 4}, v);
}

Check criterion1() {
    Check c;
    auto start = std::chrono::steady_clock::now();
    auto run = fuse_type1(NoiseModel{1.0, 0.0}, 1);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double f = fidelity(run.state, explicit_cluster());
    c.require(std::abs(f - 1) <= 1e-10, "fidelity " + std::to_string(f));
    c.require(std::abs(run.success_probability - 0.5) <= 1e-12, "success probability");
    c.require(elapsed < 1.0, "runtime");
    c.detail << (c.ok ? "" : " | ") << "fidelity=" << f << " success=" << run.success_probability
             << " runtime_s=" << elapsed;
    return c;
}

Check criterion2() {
    Check c;
    double worst = 0;
    for (double o : {0.0, 0.5, 0.78, 1.0}) {
        for (double p : {0.0, 0.125}) {
            for (int outcome : {1, -1}) {
                NoiseModel n{o, p};
                worst = std::max(worst, max_abs_difference(fuse_type1(n, outcome).state,
                                                           fuse_type1_kraus(n, outcome).state));
            }
        }
    }
    c.require(worst <= 1e-10, "max difference");
    c.detail << (c.ok ? "" : " | ") << "max_abs_difference=" << worst << " over 4 overlaps x 2 noise x 2 outcomes";
    return c;
}

Check criterion3() {
    Check c;
    std::array<AnalyzerSetting, 3> b{AnalyzerSetting::pauli_x(), AnalyzerSetting::pauli_z(),
                                     AnalyzerSetting::pauli_x()};
    auto state = fuse_type1(NoiseModel{1.0, 0.125}, 1).state;
    auto exact = polarization_histogram(state, b, 0, 1);
    double snr = exact.statistics.at("snr");
    auto sampled = polarization_histogram(state, b, 100000, 2026);
    double snr_s = sampled.statistics.at("snr_sampled");
    c.require(std::abs(snr - 29) <= 1e-10, "exact snr");
    c.require(std::abs(snr_s - 29) <= 0.15 * 29, "sampled snr");
    c.detail << (c.ok ? "" : " | ") << "snr=" << snr << " sampled(1e5)=" << snr_s;
    return c;
}

Check criterion4() {
    Check c;
    std::array<AnalyzerSetting, 3> b{AnalyzerSetting::pauli_z(), AnalyzerSetting::pauli_x(),
                                     AnalyzerSetting::pauli_z()};
    auto state = fuse_type1(NoiseModel{1.0, 0.0}, 1).state;
    auto probs = outcome_probabilities(state, b);
    auto labels = outcome_labels(b);
    double complement = 0;
    double worst = 0;
    for (std::size_t i = 0; i < probs.size(); i++) {
        bool allowed = labels[i] == "H+H" || labels[i] == "H-V" || labels[i] == "V+V" || labels[i] == "V-H";
        if (allowed) {
            worst = std::max(worst, std::abs(probs[i] - 0.25));
        } else {
            complement += probs[i];
        }
    }
    c.require(worst <= 1e-10, "allowed outcomes not 1/4");
    c.require(complement <= 1e-10, "complement mass");
    c.detail << (c.ok ? "" : " | ") << "max|p-1/4|=" << worst << " complement=" << complement;
    return c;
}

Check criterion5() {
    Check c;
    std::vector<double> delays;
    for (int k = -10; k <= 10; k++) {
        delays.push_back(150.0 * k);
    }
    auto r = hom_scan(delays, NoiseModel{0.78, 0.0}, 0, 1);
    double v0 = r.statistics.at("visibility");
    c.require(std::abs(v0 - 0.78) <= 1e-10, "zero-delay visibility");
    auto vis = [&](std::size_t k) {
        const auto &p = r.probabilities[k];
        return (p[0] - p[2]) / (p[0] + p[2]);  // H+H vs H-H
    };
    bool symmetric = true;
    bool monotone = true;
    for (std::size_t k = 0; k < 10; k++) {
        symmetric = symmetric && std::abs(vis(k) - vis(20 - k)) <= 1e-12;
        monotone = monotone && vis(k) < vis(k + 1) && vis(20 - k) < vis(19 - k);
    }
    c.require(r.channels[0] == "H+H" && r.channels[2] == "H-H", "channel layout");
    c.require(symmetric, "dip not symmetric");
    c.require(monotone, "dip not monotone in |tau|");
    c.detail << (c.ok ? "" : " | ") << "visibility(0)=" << v0 << " symmetric=" << symmetric
             << " monotone=" << monotone;
    return c;
}

Check criterion6() {
    Check c;
    double ideal = mermin_test(ideal_ghz(), 0, 1).abs_a;
    auto ghz_at = [](double o) { return cluster_to_ghz(fuse_type1(NoiseModel{o, 0.0}, 1).state); };
    double degraded = mermin_test(ghz_at(0.775), 0, 1).abs_a;
    c.require(std::abs(ideal - 4) <= 1e-10, "ideal |A|");
    c.require(std::abs(degraded - 3.10) <= 1e-10, "|A| at o=0.775");
    const std::vector<std::pair<double, MerminVerdict>> expected{
        {0.45, MerminVerdict::kNone},                 // |A| = 1.80
        {0.55, MerminVerdict::kLocalRealismViolated}, // 2.20
        {0.70, MerminVerdict::kLocalRealismViolated}, // 2.80
        {0.72, MerminVerdict::kGenuineTripartite},    // 2.88
        {0.80, MerminVerdict::kGenuineTripartite},    // 3.20
    };
    std::ostringstream verdicts;
    for (auto [o, want] : expected) {
        auto m = mermin_test(ghz_at(o), 0, 1);
        verdicts << " " << o << ":" << verdict_name(m.verdict);
        c.require(m.verdict == want, "verdict at o=" + std::to_string(o));
    }
    c.detail << (c.ok ? "" : " | ") << "|A|ideal=" << ideal << " |A|(0.775)=" << degraded << " verdicts"
             << verdicts.str();
    return c;
}

Check criterion7() {
    Check c;
    auto swept = sweep_0_180();
    auto ideal = fuse_type1(NoiseModel{1.0, 0.0}, 1).state;
    auto zscan = [&](double fixed_deg) {
        return correlation_scan(ideal, 3, AnalyzerSetting::pauli_z(), 1, Polarizer{1, deg(fixed_deg)}, 4, swept, 0, 1);
    };
    auto m45 = zscan(-45);
    auto p45 = zscan(45);
    auto p90 = zscan(90);
    double zero_dev = 0;
    double ratio_dev = 0;
    for (std::size_t k = 0; k < swept.size(); k++) {
        zero_dev = std::max(zero_dev, std::abs(m45.probabilities[k][0]));
        ratio_dev = std::max(ratio_dev, std::abs(p45.probabilities[k][0] - 2 * p90.probabilities[k][0]));
    }
    c.require(zero_dev <= 1e-12, "-45 curve not zero");
    c.require(ratio_dev <= 1e-12, "45 curve not twice 90 curve");

    double xdev = 0;
    for (int k = 0; k <= 18; k++) {
        double alpha = deg(-45.0 + 5.0 * k);
        double beta = deg(10.0 * k);
        std::array<double, 1> one{beta};
        auto r = correlation_scan(ideal, 3, AnalyzerSetting::pauli_x(), 1, Polarizer{1, alpha}, 4, one, 0, 1);
        xdev = std::max(xdev, std::abs(r.probabilities[0][0] - std::pow(std::cos(alpha - beta), 2) / 2));
    }
    c.require(xdev <= 1e-10, "x-branch cos^2 law");
    auto noisy = fuse_type1(NoiseModel{0.79, 0.0}, 1).state;
    auto vr = correlation_scan(noisy, 3, AnalyzerSetting::pauli_x(), 1, Polarizer{1, 0}, 4, swept, 0, 1);
    double v = vr.statistics.at("visibility");
    c.require(std::abs(v - 0.79) <= 1e-10, "visibility at o=0.79");
    c.detail << (c.ok ? "" : " | ") << "max|P(-45)|=" << zero_dev << " max|P45-2P90|=" << ratio_dev
             << " max|P-cos^2/2|=" << xdev << " (19 pairs) visibility(0.79)=" << v;
    return c;
}

Check criterion8() {
    Check c;
    bool lengths = true;
    for (int n = 2; n <= 10; n++) {
        for (int m = 2; m <= 10; m++) {
            auto f = fuse(path(n, 1), path(m, 100), n, 100, true);
            lengths = lengths && f.component_size(100) == static_cast<std::size_t>(n + m - 1) && f.is_linear();
        }
    }
    c.require(lengths, "fuse length n+m-1");

    auto s3 = build_state(path(3));
    auto z = measure(s3, 2, AnalyzerSetting::pauli_z());
    double fz = fidelity(*z[0].state, build_state(measure_z(path(3), 2)));
    auto x = measure(s3, 2, AnalyzerSetting::pauli_x());
    double fx = fidelity(*x[0].state, build_state(measure_x(path(3), 2)));
    c.require(std::abs(fz - 1) <= 1e-10, "measure_z rewrite");
    c.require(std::abs(fx - 1) <= 1e-10, "measure_x rewrite");

    double worst = 1;
    for (int n = 1; n <= 6; n++) {
        auto g = path(n);
        auto s = build_state(g);
        for (const auto &w : stabilizers(g)) {
            worst = std::min(worst, expectation(s, w));
        }
    }
    c.require(std::abs(worst - 1) <= 1e-10, "stabilizer expectation");
    c.detail << (c.ok ? "" : " | ") << "lengths ok for 2<=n,m<=10; F(measure_z)=" << fz << " F(measure_x)=" << fx
             << " min stabilizer=" << worst;
    return c;
}

Check criterion9() {
    Check c;
    auto a = estimate_cost(3, GrowthStrategy::kDiscardRemnants, 100000, 2026);
    auto b = estimate_cost(3, GrowthStrategy::kDiscardRemnants, 100000, 2026);
    c.require(std::abs(a.mean_bell_pairs - 4.0) <= 3 * a.standard_error, "mean outside 3 standard errors");
    c.require(a.mean_bell_pairs == b.mean_bell_pairs && a.standard_error == b.standard_error, "not deterministic");
    c.detail << (c.ok ? "" : " | ") << "mean=" << a.mean_bell_pairs << " se=" << a.standard_error
             << " z=" << (a.mean_bell_pairs - 4.0) / a.standard_error;
    return c;
}

struct Coverage {
    double fraction;
    double sigma_ratio;  // mean sigma(shots) / mean sigma(2 shots)
};

Coverage coverage(const QubitState &state, double exact, std::uint64_t seeds, std::uint64_t shots) {
    std::uint64_t inside = 0;
    double sigma_1 = 0;
    double sigma_2 = 0;
    for (std::uint64_t s = 0; s < seeds; s++) {
        auto m = mermin_test(state, shots, 1000 + s);
        inside += std::abs(m.abs_a - exact) <= 4 * m.sigma ? 1 : 0;
        if (s < 100) {
            sigma_1 += m.sigma;
            sigma_2 += mermin_test(state, 2 * shots, 5000 + s).sigma;
        }
    }
    return {static_cast<double>(inside) / static_cast<double>(seeds), sigma_2 > 0 ? sigma_1 / sigma_2 : 0};
}

Check criterion10() {
    Check c;
    auto ideal = coverage(ideal_ghz(), 4.0, 1000, 1000);
    c.require(ideal.fraction >= 0.99, "ideal coverage");
    // Ideal GHZ outcomes are deterministic in every Mermin setting, so sigma is
    // identically zero and the scaling check is empty there. The same checks
    // are run on the o = 0.775 state, where sampling noise is present.
    auto state = cluster_to_ghz(fuse_type1(NoiseModel{0.775, 0.0}, 1).state);
    auto degraded = coverage(state, 3.10, 1000, 1000);
    c.require(degraded.fraction >= 0.99, "coverage at o=0.775");
    c.require(std::abs(degraded.sigma_ratio / std::sqrt(2.0) - 1) <= 0.05, "sigma scaling at o=0.775");
    c.detail << (c.ok ? "" : " | ") << "ideal: coverage=" << ideal.fraction << " (sigma=0)"
             << "; o=0.775: coverage=" << degraded.fraction << " sigma(1000)/sigma(2000)=" << degraded.sigma_ratio
             << " (sqrt2=" << std::sqrt(2.0) << ")";
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Check()>>> criteria{
        {"1 fusion correctness", criterion1},     {"2 oracle equivalence", criterion2},
        {"3 histogram SNR", criterion3},          {"4 diagonal-basis selection rule", criterion4},
        {"5 interference dip", criterion5},       {"6 Mermin", criterion6},
        {"7 correlations", criterion7},           {"8 graph calculus", criterion8},
        {"9 resource estimation", criterion9},    {"10 statistical pipeline", criterion10},
    };
    int failures = 0;
    for (const auto &[name, fn] : criteria) {
        Check c;
        try {
            c = fn();
        } catch (const std::exception &e) {
            c.ok = false;
            c.detail << "exception: " << e.what();
        }
        std::printf("%s criterion %s: %s\n", c.ok ? "PASS" : "FAIL", name, c.detail.str().c_str());
        failures += c.ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
