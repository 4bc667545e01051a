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

// Measurement campaigns on the three-photon state: polarization histograms,
// the delay scan, the Mermin test, and conditional correlation fringes.
//
// Randomness: every campaign takes one 64-bit seed. Setting or scan point k
// samples from std::mt19937_64 seeded with (seed XOR k), so reports do not
// depend on evaluation order.

#ifndef FUSIONSIM_VERIFICATION_H
#define FUSIONSIM_VERIFICATION_H

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fusionsim/fock.h"
#include "fusionsim/qubit.h"
#include "fusionsim/report.h"
#include "fusionsim/tabletop.h"

namespace fusionsim {

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return seed ^ index;
}

/// Multinomial counts via sequential conditional binomials. Tiny negative
/// probabilities from rounding are clamped to zero.
std::vector<std::uint64_t> sample_multinomial(std::span<const double> probabilities, std::uint64_t shots,
                                              std::uint64_t seed);

/// Outcome names for a product-basis readout, e.g. "+H+" for (X, Z, X); the
/// i-th name matches index i of outcome_probabilities.
std::vector<std::string> outcome_labels(std::span<const AnalyzerSetting> bases);

/// (|value| - threshold) / sigma.
double significance(double value, double sigma, double threshold);

/// (max - min) / (max + min) over a curve.
double fringe_visibility(std::span<const double> curve);

/// Full-register readout histogram. `desired` lists the outcomes counted as
/// signal for the SNR; when empty, every outcome above the uniform level is
/// taken as signal. shots == 0 reports probabilities only.
RunReport polarization_histogram(const QubitState &state, std::span<const AnalyzerSetting> bases,
                                 std::uint64_t shots, std::uint64_t seed,
                                 std::span<const std::string> desired = {});

/// Delay scan of the fused state read out in (H/V, +/-, H/V). If
/// noise.overlap is set it caps the zero-delay overlap:
/// o(tau) = overlap * exp(-(tau / tau_c)^2).
RunReport hom_scan(std::span<const double> delays_fs, const NoiseModel &noise, std::uint64_t shots,
                   std::uint64_t seed);

inline constexpr std::array<std::string_view, 4> kMerminTerms{"XYY", "YXY", "YYX", "XXX"};
inline constexpr double kLocalRealismBound = 2.0;
inline constexpr double kBiseparableBound = 2.8284271247461903;  // 2 sqrt(2)

enum class MerminVerdict { kNone, kLocalRealismViolated, kGenuineTripartite };
std::string_view verdict_name(MerminVerdict v);

/// Compares |A| - k sigma against 2 and 2 sqrt(2).
MerminVerdict classify_mermin(double abs_a, double sigma, double k);

struct MerminResult {
    std::array<double, 4> exact_terms{};
    double exact_a = 0;
    /// Sampled estimates (equal to the exact values when shots == 0).
    std::array<double, 4> term_expectations{};
    double a_value = 0;
    double abs_a = 0;
    /// sqrt(sum_t (1 - E_t^2) / shots); zero when shots == 0.
    double sigma = 0;
    MerminVerdict verdict = MerminVerdict::kNone;

    std::array<std::vector<double>, 4> probabilities;
    std::array<std::vector<std::uint64_t>, 4> counts;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    double sigma_k = 3;
};

/// A = XYY + YXY + YYX - XXX on a three-photon state in the GHZ frame.
MerminResult mermin_test(const QubitState &state, std::uint64_t shots, std::uint64_t seed, double sigma_k = 3.0);
RunReport mermin_report(const MerminResult &result);

struct Polarizer {
    Label photon;
    double angle;  // radians
};

/// Measures `measured`, keeps `kept_outcome`, then records the two-photon
/// coincidence probability behind linear polarizers (fixed, swept) at each
/// swept angle. Channels: pp, pb, bp, bb (p = passed, b = blocked; fixed
/// photon first).
RunReport correlation_scan(const QubitState &state, Label measured, const AnalyzerSetting &setting,
                           int kept_outcome, Polarizer fixed, Label swept_photon,
                           std::span<const double> swept_angles, std::uint64_t shots, std::uint64_t seed);

/// <P> computed optically: each path is detected in turn through its wave
/// plate + PBS analyzer and parities are accumulated over branches. `paths`
/// lists the photons in word order; every path must hold one photon.
double fock_pauli_expectation(const FockState &s, std::span<const Label> paths, std::string_view word);

}  // namespace fusionsim

#endif
