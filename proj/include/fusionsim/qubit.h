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

#ifndef FUSIONSIM_QUBIT_H
#define FUSIONSIM_QUBIT_H

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fusionsim/types.h"

namespace fusionsim {

using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

/// Polarization qubit register over a list of photon labels.
///
/// Basis convention: H <-> |0>, V <-> |1>. The first label is the most
/// significant bit of the amplitude index, so for labels {1, 3, 4} the index
/// of |H V H> is 0b010.
///
/// The state is held as a vector until a channel forces mixing, at which point
/// it switches to a density matrix and stays there.
class QubitState {
   public:
    QubitState() = default;

    /// Validates the norm to within 1e-10 and renormalizes exactly.
    static QubitState pure(std::vector<Label> labels, Eigen::VectorXcd amplitudes);
    /// Validates Hermiticity and unit trace to within 1e-10.
    static QubitState mixed(std::vector<Label> labels, Eigen::MatrixXcd rho);
    /// Product of H/V basis states; `bits[k]` is 0 for H, 1 for V.
    static QubitState basis(std::vector<Label> labels, std::span<const int> bits);
    static QubitState maximally_mixed(std::vector<Label> labels);

    bool is_pure() const { return pure_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dimension() const { return std::size_t{1} << labels_.size(); }
    const std::vector<Label> &labels() const { return labels_; }
    bool has_label(Label label) const;
    /// Position of `label` in the register; throws std::invalid_argument if absent.
    std::size_t position(Label label) const;

    /// Only valid for pure states.
    const Eigen::VectorXcd &amplitudes() const;
    /// Materialized density matrix (outer product for pure states).
    Eigen::MatrixXcd density_matrix() const;
    QubitState as_mixed() const;

    double trace() const;
    double purity() const;

   private:
    std::vector<Label> labels_;
    bool pure_ = true;
    Eigen::VectorXcd amplitudes_;
    Eigen::MatrixXcd rho_;
};

/// Polarization analyzer. Every setting has a "+" eigenstate
/// cos(theta)|H> + e^{i phi} sin(theta)|V> and its orthogonal "-" partner.
struct AnalyzerSetting {
    enum class Kind { kPauliX, kPauliY, kPauliZ, kLinear, kGeneral };

    Kind kind = Kind::kPauliZ;
    double theta = 0;  // radians
    double phi = 0;    // radians

    static AnalyzerSetting pauli_x() { return {Kind::kPauliX, 0, 0}; }
    static AnalyzerSetting pauli_y() { return {Kind::kPauliY, 0, 0}; }
    static AnalyzerSetting pauli_z() { return {Kind::kPauliZ, 0, 0}; }
    static AnalyzerSetting linear(double theta) { return {Kind::kLinear, theta, 0}; }
    static AnalyzerSetting general(double theta, double phi) { return {Kind::kGeneral, theta, phi}; }
    /// Parses "x", "y", "z" (case-insensitive).
    static AnalyzerSetting from_pauli(char c);

    /// Eigenstate for outcome +1 (index 0) and -1 (index 1).
    std::array<Vector2c, 2> eigenstates() const;
    /// Unitary taking the "+" eigenstate to |H> and "-" to |V> (rows are bras).
    Matrix2c to_computational() const;
    /// Two-character outcome symbols used in histogram labels, e.g. "+-" or "HV".
    std::array<char, 2> symbols() const;

    bool operator==(const AnalyzerSetting &) const = default;
};

Matrix2c hadamard();
Matrix2c pauli_matrix(char p);

QubitState apply_unitary(const QubitState &s, Label label, const Matrix2c &u);

struct MeasurementBranch {
    int outcome;  // +1 or -1
    double probability;
    /// Renormalized post-measurement state without the measured label; empty
    /// when the branch has zero probability.
    std::optional<QubitState> state;
};

/// Projective measurement of one qubit. Returns the +1 branch then the -1 branch.
std::array<MeasurementBranch, 2> measure(const QubitState &s, Label label, const AnalyzerSetting &setting);

/// Exact joint outcome distribution of a product-basis readout of every qubit.
/// Index bit k (msb first, following label order) is 0 for "+", 1 for "-".
std::vector<double> outcome_probabilities(const QubitState &s, std::span<const AnalyzerSetting> settings);

/// <P> for a Pauli word over "IXYZ", one character per qubit in label order.
double expectation(const QubitState &s, std::string_view word);

/// rho -> (1 - p) rho + p I / 2^n.
QubitState apply_white_noise(const QubitState &s, double p);

/// Scales coherences between the H and V branches of `label` by `overlap`.
QubitState dephase_coherence(const QubitState &s, double overlap, Label label = 3);

double fidelity(const QubitState &a, const QubitState &b);

/// Qubit-level Type-I fusion. Maps qubits (label_a, label_b) to one qubit via
/// K = (|H><HH| + sign |V><VV|) / sqrt(2); the fused qubit keeps label_b's
/// label and position, label_a is removed.
struct FusionBranch {
    double probability;
    std::optional<QubitState> state;
};
FusionBranch fusion_kraus(const QubitState &s, Label label_a, Label label_b, int outcome);

/// All four fusion Kraus operators as maps C^4 -> C^2: the two success
/// outcomes (+, -) and the two failure modes (both photons in one output).
std::array<Eigen::Matrix<Complex, 2, 4>, 4> fusion_kraus_operators();

QubitState tensor(const QubitState &a, const QubitState &b);

/// Multiplies a state vector by a global phase so the first entry with
/// magnitude above 1e-12 is real and positive.
Eigen::VectorXcd normalize_global_phase(const Eigen::VectorXcd &v);

/// Largest elementwise difference between two states' density matrices, or
/// between phase-normalized amplitude vectors when both are pure.
double max_abs_difference(const QubitState &a, const QubitState &b);

}  // namespace fusionsim

#endif
