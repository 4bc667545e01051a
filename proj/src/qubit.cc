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

#include "fusionsim/qubit.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

namespace fusionsim {

namespace {

constexpr double kStateTolerance = 1e-10;

// Bit position (from the least significant end) of register slot `pos`.
std::size_t shift_of(std::size_t pos, std::size_t n) {
    return n - 1 - pos;
}

std::size_t insert_bit(std::size_t j, std::size_t shift, std::size_t bit) {
    std::size_t low = j & ((std::size_t{1} << shift) - 1);
    std::size_t high = j >> shift;
    return (high << (shift + 1)) | (bit << shift) | low;
}

std::size_t remove_bit(std::size_t i, std::size_t shift) {
    std::size_t low = i & ((std::size_t{1} << shift) - 1);
    std::size_t high = i >> (shift + 1);
    return (high << shift) | low;
}

std::vector<Label> without(const std::vector<Label> &labels, Label label) {
    std::vector<Label> out;
    out.reserve(labels.size());
    for (Label l : labels) {
        if (l != label) {
            out.push_back(l);
        }
    }
    return out;
}

void check_unique(const std::vector<Label> &labels) {
    std::set<Label> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
        throw std::invalid_argument("duplicate qubit label");
    }
}

// In-place 2x2 action on the rows of `m` selected by the qubit at `shift`.
void apply_left(Eigen::MatrixXcd &m, std::size_t shift, const Matrix2c &u) {
    std::size_t mask = std::size_t{1} << shift;
    for (Eigen::Index col = 0; col < m.cols(); col++) {
        for (std::size_t i0 = 0; i0 < static_cast<std::size_t>(m.rows()); i0++) {
            if (i0 & mask) {
                continue;
            }
            std::size_t i1 = i0 | mask;
            Complex a0 = m(i0, col);
            Complex a1 = m(i1, col);
            m(i0, col) = u(0, 0) * a0 + u(0, 1) * a1;
            m(i1, col) = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
}

}  // namespace

QubitState QubitState::pure(std::vector<Label> labels, Eigen::VectorXcd amplitudes) {
    check_unique(labels);
    if (static_cast<std::size_t>(amplitudes.size()) != (std::size_t{1} << labels.size())) {
        throw std::invalid_argument("amplitude vector length does not match qubit count");
    }
    double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > kStateTolerance) {
        throw std::invalid_argument("pure state is not normalized: norm " + std::to_string(norm));
    }
    QubitState s;
    s.labels_ = std::move(labels);
    s.pure_ = true;
    s.amplitudes_ = amplitudes / norm;
    return s;
}

QubitState QubitState::mixed(std::vector<Label> labels, Eigen::MatrixXcd rho) {
    check_unique(labels);
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << labels.size());
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("density matrix shape does not match qubit count");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > kStateTolerance) {
        throw std::invalid_argument("density matrix trace is " + std::to_string(tr));
    }
    QubitState s;
    s.labels_ = std::move(labels);
    s.pure_ = false;
    s.rho_ = (rho + rho.adjoint()) / (2.0 * tr);
    return s;
}

QubitState QubitState::basis(std::vector<Label> labels, std::span<const int> bits) {
    if (bits.size() != labels.size()) {
        throw std::invalid_argument("bit count does not match qubit count");
    }
    std::size_t index = 0;
    for (int b : bits) {
        index = (index << 1) | static_cast<std::size_t>(b != 0);
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << labels.size()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return pure(std::move(labels), std::move(v));
}

QubitState QubitState::maximally_mixed(std::vector<Label> labels) {
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << labels.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
    return mixed(std::move(labels), std::move(rho));
}

bool QubitState::has_label(Label label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t QubitState::position(Label label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("qubit label " + std::to_string(label) + " not present");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

const Eigen::VectorXcd &QubitState::amplitudes() const {
    if (!pure_) {
        throw std::logic_error("amplitudes() requested on a mixed state");
    }
    return amplitudes_;
}

Eigen::MatrixXcd QubitState::density_matrix() const {
    if (pure_) {
        return amplitudes_ * amplitudes_.adjoint();
    }
    return rho_;
}

QubitState QubitState::as_mixed() const {
    if (!pure_) {
        return *this;
    }
    QubitState s;
    s.labels_ = labels_;
    s.pure_ = false;
    s.rho_ = density_matrix();
    return s;
}

double QubitState::trace() const {
    return pure_ ? amplitudes_.squaredNorm() : rho_.trace().real();
}

double QubitState::purity() const {
    if (pure_) {
        double n2 = amplitudes_.squaredNorm();
        return n2 * n2;
    }
    return rho_.cwiseAbs2().sum();
}

AnalyzerSetting AnalyzerSetting::from_pauli(char c) {
    switch (c) {
        case 'x':
        case 'X':
            return pauli_x();
        case 'y':
        case 'Y':
            return pauli_y();
        case 'z':
        case 'Z':
            return pauli_z();
        default:
            throw std::invalid_argument(std::string("unknown Pauli analyzer '") + c + "'");
    }
}

std::array<Vector2c, 2> AnalyzerSetting::eigenstates() const {
    const double r = std::sqrt(0.5);
    const Complex i{0, 1};
    switch (kind) {
        case Kind::kPauliX:
            return {Vector2c(r, r), Vector2c(r, -r)};
        case Kind::kPauliY:
            return {Vector2c(r, r * i), Vector2c(r, -r * i)};
        case Kind::kPauliZ:
            return {Vector2c(1, 0), Vector2c(0, 1)};
        case Kind::kLinear:
            return {Vector2c(std::cos(theta), std::sin(theta)), Vector2c(-std::sin(theta), std::cos(theta))};
        case Kind::kGeneral: {
            Complex e = std::polar(1.0, phi);
            double c = std::cos(theta);
            double s = std::sin(theta);
            return {Vector2c(c, e * s), Vector2c(-std::conj(e) * s, c)};
        }
    }
    throw std::logic_error("unreachable analyzer kind");
}

Matrix2c AnalyzerSetting::to_computational() const {
    auto e = eigenstates();
    Matrix2c m;
    m.row(0) = e[0].adjoint();
    m.row(1) = e[1].adjoint();
    return m;
}

std::array<char, 2> AnalyzerSetting::symbols() const {
    switch (kind) {
        case Kind::kPauliX:
            return {'+', '-'};
        case Kind::kPauliY:
            return {'R', 'L'};
        case Kind::kPauliZ:
            return {'H', 'V'};
        default:
            return {'P', 'O'};
    }
}

Matrix2c hadamard() {
    const double r = std::sqrt(0.5);
    Matrix2c h;
    h << r, r, r, -r;
    return h;
}

Matrix2c pauli_matrix(char p) {
    Matrix2c m;
    switch (p) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli '") + p + "'");
    }
    return m;
}

QubitState apply_unitary(const QubitState &s, Label label, const Matrix2c &u) {
    if ((u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff() > kStateTolerance) {
        throw std::invalid_argument("apply_unitary: matrix is not unitary");
    }
    std::size_t shift = shift_of(s.position(label), s.num_qubits());
    if (s.is_pure()) {
        Eigen::MatrixXcd v = s.amplitudes();
        apply_left(v, shift, u);
        return QubitState::pure(s.labels(), v.col(0));
    }
    Eigen::MatrixXcd rho = s.density_matrix();
    apply_left(rho, shift, u);
    // rho U^dagger == (U rho^dagger)^dagger; rho stays Hermitian.
    Eigen::MatrixXcd t = rho.adjoint();
    apply_left(t, shift, u);
    return QubitState::mixed(s.labels(), t.adjoint());
}

std::array<MeasurementBranch, 2> measure(const QubitState &s, Label label, const AnalyzerSetting &setting) {
    const std::size_t n = s.num_qubits();
    const std::size_t shift = shift_of(s.position(label), n);
    const std::size_t out_dim = s.dimension() / 2;
    const auto eig = setting.eigenstates();
    const double total = s.trace();
    std::vector<Label> rest = without(s.labels(), label);

    std::array<MeasurementBranch, 2> result{MeasurementBranch{+1, 0, std::nullopt},
                                            MeasurementBranch{-1, 0, std::nullopt}};
    for (int k = 0; k < 2; k++) {
        const Vector2c bra = eig[k].conjugate();
        if (s.is_pure()) {
            const auto &psi = s.amplitudes();
            Eigen::VectorXcd out(static_cast<Eigen::Index>(out_dim));
            for (std::size_t j = 0; j < out_dim; j++) {
                out(j) = bra(0) * psi(insert_bit(j, shift, 0)) + bra(1) * psi(insert_bit(j, shift, 1));
            }
            double p = out.squaredNorm() / total;
            result[k].probability = p;
            if (p > 0) {
                result[k].state = QubitState::pure(rest, out / out.norm());
            }
        } else {
            const auto rho = s.density_matrix();
            Eigen::MatrixXcd out(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
            for (std::size_t j = 0; j < out_dim; j++) {
                for (std::size_t l = 0; l < out_dim; l++) {
                    Complex acc = 0;
                    for (std::size_t b = 0; b < 2; b++) {
                        for (std::size_t c = 0; c < 2; c++) {
                            acc += bra(b) * std::conj(bra(c)) * rho(insert_bit(j, shift, b), insert_bit(l, shift, c));
                        }
                    }
                    out(j, l) = acc;
                }
            }
            double tr = out.trace().real();
            double p = tr / total;
            result[k].probability = p;
            if (p > 0) {
                result[k].state = QubitState::mixed(rest, out / tr);
            }
        }
    }
    return result;
}

std::vector<double> outcome_probabilities(const QubitState &s, std::span<const AnalyzerSetting> settings) {
    if (settings.size() != s.num_qubits()) {
        throw std::invalid_argument("one analyzer setting per qubit required");
    }
    const std::size_t n = s.num_qubits();
    std::vector<double> probs(s.dimension());
    if (s.is_pure()) {
        Eigen::MatrixXcd v = s.amplitudes();
        for (std::size_t q = 0; q < n; q++) {
            apply_left(v, shift_of(q, n), settings[q].to_computational());
        }
        for (std::size_t i = 0; i < probs.size(); i++) {
            probs[i] = std::norm(v(i, 0));
        }
    } else {
        Eigen::MatrixXcd rho = s.density_matrix();
        for (std::size_t q = 0; q < n; q++) {
            Matrix2c u = settings[q].to_computational();
            apply_left(rho, shift_of(q, n), u);
            Eigen::MatrixXcd t = rho.adjoint();
            apply_left(t, shift_of(q, n), u);
            rho = t.adjoint();
        }
        for (std::size_t i = 0; i < probs.size(); i++) {
            probs[i] = rho(i, i).real();
        }
    }
    double total = s.trace();
    for (double &p : probs) {
        p /= total;
    }
    return probs;
}

double expectation(const QubitState &s, std::string_view word) {
    const std::size_t n = s.num_qubits();
    if (word.size() != n) {
        throw std::invalid_argument("Pauli word length " + std::to_string(word.size()) + " does not match " +
                                    std::to_string(n) + " qubits");
    }
    std::size_t x_mask = 0;
    for (std::size_t q = 0; q < n; q++) {
        char c = word[q];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument(std::string("invalid Pauli character '") + c + "'");
        }
        if (c == 'X' || c == 'Y') {
            x_mask |= std::size_t{1} << shift_of(q, n);
        }
    }
    // P|j> = phase(j) |j ^ x_mask>.
    auto phase = [&](std::size_t j) {
        Complex ph = 1;
        for (std::size_t q = 0; q < n; q++) {
            bool bit = (j >> shift_of(q, n)) & 1;
            switch (word[q]) {
                case 'Y':
                    ph *= bit ? Complex(0, -1) : Complex(0, 1);
                    break;
                case 'Z':
                    if (bit) {
                        ph = -ph;
                    }
                    break;
                default:
                    break;
            }
        }
        return ph;
    };
    Complex acc = 0;
    if (s.is_pure()) {
        const auto &psi = s.amplitudes();
        for (std::size_t j = 0; j < s.dimension(); j++) {
            acc += std::conj(psi(j ^ x_mask)) * phase(j) * psi(j);
        }
    } else {
        const auto rho = s.density_matrix();
        for (std::size_t j = 0; j < s.dimension(); j++) {
            acc += phase(j) * rho(j, j ^ x_mask);
        }
    }
    return acc.real() / s.trace();
}

QubitState apply_white_noise(const QubitState &s, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("white noise fraction must lie in [0, 1]");
    }
    if (p == 0.0) {
        return s;
    }
    auto dim = static_cast<Eigen::Index>(s.dimension());
    Eigen::MatrixXcd rho = (1.0 - p) * s.density_matrix() +
                           (p / static_cast<double>(dim)) * Eigen::MatrixXcd::Identity(dim, dim);
    return QubitState::mixed(s.labels(), std::move(rho));
}

QubitState dephase_coherence(const QubitState &s, double overlap, Label label) {
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw std::invalid_argument("overlap must lie in [0, 1]");
    }
    std::size_t mask = std::size_t{1} << shift_of(s.position(label), s.num_qubits());
    if (overlap == 1.0) {
        return s;
    }
    Eigen::MatrixXcd rho = s.density_matrix();
    for (Eigen::Index i = 0; i < rho.rows(); i++) {
        for (Eigen::Index j = 0; j < rho.cols(); j++) {
            if (((static_cast<std::size_t>(i) ^ static_cast<std::size_t>(j)) & mask) != 0) {
                rho(i, j) *= overlap;
            }
        }
    }
    return QubitState::mixed(s.labels(), std::move(rho));
}

double fidelity(const QubitState &a, const QubitState &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("fidelity: qubit counts differ");
    }
    double f;
    if (a.is_pure() && b.is_pure()) {
        f = std::norm(a.amplitudes().dot(b.amplitudes()));
    } else if (a.is_pure()) {
        f = (a.amplitudes().adjoint() * b.density_matrix() * a.amplitudes())(0).real();
    } else if (b.is_pure()) {
        f = (b.amplitudes().adjoint() * a.density_matrix() * b.amplitudes())(0).real();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(a.density_matrix());
        Eigen::VectorXd root = ea.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        Eigen::MatrixXcd sqrt_a = ea.eigenvectors() * root.asDiagonal() * ea.eigenvectors().adjoint();
        Eigen::MatrixXcd m = sqrt_a * b.density_matrix() * sqrt_a;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> em((m + m.adjoint()) / 2.0);
        double tr = em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
        f = tr * tr;
    }
    return std::clamp(f, 0.0, 1.0);
}

FusionBranch fusion_kraus(const QubitState &s, Label label_a, Label label_b, int outcome) {
    if (label_a == label_b) {
        throw std::invalid_argument("fusion_kraus: labels must be distinct");
    }
    if (outcome != 1 && outcome != -1) {
        throw std::invalid_argument("fusion_kraus: outcome must be +1 or -1");
    }
    const std::size_t n = s.num_qubits();
    const std::size_t shift_a = shift_of(s.position(label_a), n);
    const std::size_t shift_b = shift_of(s.position(label_b), n);
    const std::size_t out_dim = s.dimension() / 2;
    const double r = std::sqrt(0.5);
    std::vector<Label> rest = without(s.labels(), label_a);

    // Surviving basis indices with equal bits at a and b, their image, and K's coefficient.
    struct Entry {
        std::size_t in, out;
        double coefficient;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < s.dimension(); i++) {
        std::size_t ba = (i >> shift_a) & 1;
        std::size_t bb = (i >> shift_b) & 1;
        if (ba != bb) {
            continue;
        }
        entries.push_back({i, remove_bit(i, shift_a), bb ? outcome * r : r});
    }

    const double total = s.trace();
    FusionBranch result{0, std::nullopt};
    if (s.is_pure()) {
        const auto &psi = s.amplitudes();
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(out_dim));
        for (const auto &e : entries) {
            out(e.out) += e.coefficient * psi(e.in);
        }
        result.probability = out.squaredNorm() / total;
        if (result.probability > 0) {
            result.state = QubitState::pure(rest, out / out.norm());
        }
    } else {
        const auto rho = s.density_matrix();
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
        for (const auto &e : entries) {
            for (const auto &f : entries) {
                out(e.out, f.out) += e.coefficient * f.coefficient * rho(e.in, f.in);
            }
        }
        double tr = out.trace().real();
        result.probability = tr / total;
        if (result.probability > 0) {
            result.state = QubitState::mixed(rest, out / tr);
        }
    }
    return result;
}

std::array<Eigen::Matrix<Complex, 2, 4>, 4> fusion_kraus_operators() {
    // Input basis |ab> with index 2a + b; output basis |H>, |V>.
    const double r = std::sqrt(0.5);
    std::array<Eigen::Matrix<Complex, 2, 4>, 4> k;
    for (auto &m : k) {
        m.setZero();
    }
    k[0](0, 0) = r;   // |H><HH|
    k[0](1, 3) = r;   // |V><VV|
    k[1](0, 0) = r;
    k[1](1, 3) = -r;
    k[2](0, 1) = 1;   // |HV>: both photons leave through the detector port
    k[3](1, 2) = 1;   // |VH>: both photons leave through the kept port
    return k;
}

QubitState tensor(const QubitState &a, const QubitState &b) {
    std::vector<Label> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    check_unique(labels);
    if (a.is_pure() && b.is_pure()) {
        const auto &va = a.amplitudes();
        const auto &vb = b.amplitudes();
        Eigen::VectorXcd v(va.size() * vb.size());
        for (Eigen::Index i = 0; i < va.size(); i++) {
            v.segment(i * vb.size(), vb.size()) = va(i) * vb;
        }
        return QubitState::pure(std::move(labels), std::move(v));
    }
    const auto ra = a.density_matrix();
    const auto rb = b.density_matrix();
    Eigen::MatrixXcd rho(ra.rows() * rb.rows(), ra.cols() * rb.cols());
    for (Eigen::Index i = 0; i < ra.rows(); i++) {
        for (Eigen::Index j = 0; j < ra.cols(); j++) {
            rho.block(i * rb.rows(), j * rb.cols(), rb.rows(), rb.cols()) = ra(i, j) * rb;
        }
    }
    return QubitState::mixed(std::move(labels), std::move(rho));
}

Eigen::VectorXcd normalize_global_phase(const Eigen::VectorXcd &v) {
    for (Eigen::Index i = 0; i < v.size(); i++) {
        double mag = std::abs(v(i));
        if (mag > 1e-12) {
            return v * (std::conj(v(i)) / mag);
        }
    }
    return v;
}

double max_abs_difference(const QubitState &a, const QubitState &b) {
    if (a.labels() != b.labels()) {
        throw std::invalid_argument("max_abs_difference: label lists differ");
    }
    if (a.is_pure() && b.is_pure()) {
        return (normalize_global_phase(a.amplitudes()) - normalize_global_phase(b.amplitudes())).cwiseAbs().maxCoeff();
    }
    return (a.density_matrix() - b.density_matrix()).cwiseAbs().maxCoeff();
}

}  // namespace fusionsim
