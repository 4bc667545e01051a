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

#include "fusionsim/fock.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace fusionsim {

namespace {

constexpr std::size_t kModesPerPath = 4;

double factorial(int n) {
    double f = 1;
    for (int k = 2; k <= n; k++) {
        f *= k;
    }
    return f;
}

std::size_t local_index(Polarization p, Temporal t) {
    return static_cast<std::size_t>(p) * 2 + static_cast<std::size_t>(t);
}

Polarization polarization_of(std::size_t local) {
    return static_cast<Polarization>(local / 2);
}

Temporal temporal_of(std::size_t local) {
    return static_cast<Temporal>(local % 2);
}

// One entry per input mode: the output modes its creation operator expands into.
using ModeMap = std::vector<std::vector<std::pair<std::size_t, Complex>>>;

void require_path(const FockState &s, Label path) {
    if (!s.has_path(path)) {
        throw std::invalid_argument("unknown spatial path " + std::to_string(path));
    }
}

}  // namespace

struct FockAccess {
    static FockState make(std::vector<Label> paths, double threshold) {
        return FockState(std::move(paths), threshold);
    }
    static FockState::Terms &terms(FockState &s) { return s.terms_; }
    static void set_branch(FockState &s, bool b) { s.branch_ = b; }

    static void prune(FockState &s) {
        std::erase_if(s.terms_, [&](const auto &kv) { return std::abs(kv.second) <= s.prune_threshold_; });
    }

    // Substitutes creation operators according to `map` and re-expands each
    // term in the occupation basis of `out_paths`.
    static FockState transform(const FockState &s, std::vector<Label> out_paths, const ModeMap &map) {
        FockState out(std::move(out_paths), s.prune_threshold_);
        const std::size_t out_modes = out.paths_.size() * kModesPerPath;
        for (const auto &[basis, amp] : s.terms_) {
            double in_norm = 1;
            for (auto n : basis.occupations) {
                in_norm *= factorial(n);
            }
            std::map<std::vector<std::uint8_t>, Complex> partial;
            partial[std::vector<std::uint8_t>(out_modes, 0)] = amp / std::sqrt(in_norm);
            for (std::size_t mode = 0; mode < basis.occupations.size(); mode++) {
                for (int k = 0; k < basis.occupations[mode]; k++) {
                    std::map<std::vector<std::uint8_t>, Complex> next;
                    for (const auto &[occ, c] : partial) {
                        for (const auto &[target, u] : map[mode]) {
                            auto o = occ;
                            o[target]++;
                            next[o] += c * u;
                        }
                    }
                    partial = std::move(next);
                }
            }
            for (auto &[occ, c] : partial) {
                double out_norm = 1;
                for (auto n : occ) {
                    out_norm *= factorial(n);
                }
                FockBasisState key{occ, basis.detector_records};
                out.terms_[key] += c * std::sqrt(out_norm);
            }
        }
        prune(out);
        out.branch_ = s.branch_;
        return out;
    }

    // Identity map from the modes of `s` into the layout of `out_paths`, which
    // must contain every path of `s` except those in `replaced`.
    static ModeMap identity_map(const FockState &s, const FockState &layout, const std::set<Label> &replaced) {
        ModeMap map(s.paths_.size() * kModesPerPath);
        for (std::size_t p = 0; p < s.paths_.size(); p++) {
            if (replaced.contains(s.paths_[p])) {
                continue;
            }
            std::size_t base = layout.mode_index({s.paths_[p], Polarization::kH, Temporal::kMatched});
            for (std::size_t local = 0; local < kModesPerPath; local++) {
                map[p * kModesPerPath + local] = {{base + local, 1.0}};
            }
        }
        return map;
    }
};

int FockBasisState::photon_count() const {
    return std::accumulate(occupations.begin(), occupations.end(), 0);
}

FockState::FockState(std::vector<Label> paths, double prune_threshold)
    : paths_(std::move(paths)), prune_threshold_(prune_threshold) {
    std::sort(paths_.begin(), paths_.end());
    if (std::adjacent_find(paths_.begin(), paths_.end()) != paths_.end()) {
        throw RegistryConflict("duplicate spatial path label");
    }
    if (prune_threshold_ < 0) {
        throw std::invalid_argument("prune threshold must be non-negative");
    }
}

void FockState::add(std::span<const ModeId> photons, Complex amplitude) {
    if (static_cast<int>(photons.size()) > kMaxPhotons) {
        throw std::invalid_argument("states are limited to " + std::to_string(kMaxPhotons) + " photons");
    }
    FockBasisState key{std::vector<std::uint8_t>(paths_.size() * kModesPerPath, 0), {}};
    for (const auto &m : photons) {
        key.occupations[mode_index(m)]++;
    }
    terms_[key] += amplitude;
    FockAccess::prune(*this);
}

void FockState::normalize() {
    double n2 = norm_squared();
    if (n2 == 0) {
        throw std::invalid_argument("cannot normalize an empty Fock state");
    }
    double inv = 1.0 / std::sqrt(n2);
    for (auto &[_, a] : terms_) {
        a *= inv;
    }
    branch_ = false;
}

std::vector<ModeId> FockState::modes() const {
    std::vector<ModeId> out;
    out.reserve(paths_.size() * kModesPerPath);
    for (Label p : paths_) {
        for (std::size_t local = 0; local < kModesPerPath; local++) {
            out.push_back({p, polarization_of(local), temporal_of(local)});
        }
    }
    return out;
}

std::size_t FockState::mode_index(const ModeId &mode) const {
    auto it = std::lower_bound(paths_.begin(), paths_.end(), mode.spatial);
    if (it == paths_.end() || *it != mode.spatial) {
        throw std::invalid_argument("unknown spatial path " + std::to_string(mode.spatial));
    }
    return static_cast<std::size_t>(it - paths_.begin()) * kModesPerPath +
           local_index(mode.polarization, mode.temporal);
}

bool FockState::has_path(Label path) const {
    return std::binary_search(paths_.begin(), paths_.end(), path);
}

double FockState::norm_squared() const {
    double n2 = 0;
    for (const auto &[_, a] : terms_) {
        n2 += std::norm(a);
    }
    return n2;
}

int FockState::photons_in(const FockBasisState &basis, Label path) const {
    std::size_t base = mode_index({path, Polarization::kH, Temporal::kMatched});
    int n = 0;
    for (std::size_t local = 0; local < kModesPerPath; local++) {
        n += basis.occupations[base + local];
    }
    return n;
}

Matrix2c waveplate_jones(WaveplateKind kind, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Matrix2c j;
    if (kind == WaveplateKind::kHalf) {
        const double c2 = std::cos(2 * angle);
        const double s2 = std::sin(2 * angle);
        j << c2, s2, s2, -c2;
    } else {
        const Complex i{0, 1};
        j << c * c + i * s * s, (1.0 - i) * s * c, (1.0 - i) * s * c, s * s + i * c * c;
    }
    return j;
}

FockState tensor(const FockState &a, const FockState &b) {
    std::vector<Label> paths = a.paths();
    for (Label p : b.paths()) {
        if (a.has_path(p)) {
            throw RegistryConflict("spatial path " + std::to_string(p) + " present in both states");
        }
        paths.push_back(p);
    }
    FockState out = FockAccess::make(paths, std::min(a.prune_threshold(), b.prune_threshold()));
    auto &terms = FockAccess::terms(out);
    const std::size_t modes = out.paths().size() * kModesPerPath;

    auto scatter = [&](const FockState &src, std::vector<std::uint8_t> &occ, const FockBasisState &basis) {
        for (std::size_t p = 0; p < src.paths().size(); p++) {
            std::size_t base = out.mode_index({src.paths()[p], Polarization::kH, Temporal::kMatched});
            for (std::size_t local = 0; local < kModesPerPath; local++) {
                occ[base + local] = basis.occupations[p * kModesPerPath + local];
            }
        }
    };
    for (const auto &[ka, va] : a.terms()) {
        for (const auto &[kb, vb] : b.terms()) {
            if (ka.photon_count() + kb.photon_count() > kMaxPhotons) {
                throw std::invalid_argument("states are limited to " + std::to_string(kMaxPhotons) + " photons");
            }
            FockBasisState key{std::vector<std::uint8_t>(modes, 0), ka.detector_records};
            key.detector_records.insert(key.detector_records.end(), kb.detector_records.begin(),
                                        kb.detector_records.end());
            scatter(a, key.occupations, ka);
            scatter(b, key.occupations, kb);
            terms[key] += va * vb;
        }
    }
    FockAccess::prune(out);
    FockAccess::set_branch(out, a.is_branch() || b.is_branch());
    return out;
}

FockState apply_pbs(const FockState &s, Label in_a, Label in_b, Label out_a, Label out_b) {
    require_path(s, in_a);
    require_path(s, in_b);
    if (in_a == in_b || out_a == out_b) {
        throw std::invalid_argument("PBS ports must be distinct");
    }
    std::vector<Label> paths;
    for (Label p : s.paths()) {
        if (p != in_a && p != in_b) {
            paths.push_back(p);
        }
    }
    for (Label out : {out_a, out_b}) {
        if (std::find(paths.begin(), paths.end(), out) != paths.end()) {
            throw RegistryConflict("PBS output " + std::to_string(out) + " collides with an existing path");
        }
        paths.push_back(out);
    }
    FockState layout = FockAccess::make(paths, s.prune_threshold());
    ModeMap map = FockAccess::identity_map(s, layout, {in_a, in_b});
    for (Temporal t : {Temporal::kMatched, Temporal::kOrthogonal}) {
        auto route = [&](Label from, Polarization pol, Label to) {
            map[s.mode_index({from, pol, t})] = {{layout.mode_index({to, pol, t}), 1.0}};
        };
        route(in_a, Polarization::kH, out_a);
        route(in_b, Polarization::kH, out_b);
        route(in_a, Polarization::kV, out_b);
        route(in_b, Polarization::kV, out_a);
    }
    return FockAccess::transform(s, layout.paths(), map);
}

FockState apply_jones(const FockState &s, Label path, const Matrix2c &jones) {
    require_path(s, path);
    if (!(jones * jones.adjoint()).isIdentity(1e-10)) {
        throw std::invalid_argument("apply_jones: matrix is not unitary");
    }
    ModeMap map = FockAccess::identity_map(s, s, {path});
    for (Temporal t : {Temporal::kMatched, Temporal::kOrthogonal}) {
        for (int col = 0; col < 2; col++) {
            auto &entry = map[s.mode_index({path, static_cast<Polarization>(col), t})];
            entry.clear();
            for (int row = 0; row < 2; row++) {
                if (jones(row, col) != Complex(0)) {
                    entry.emplace_back(s.mode_index({path, static_cast<Polarization>(row), t}), jones(row, col));
                }
            }
        }
    }
    return FockAccess::transform(s, s.paths(), map);
}

FockState apply_waveplate(const FockState &s, Label path, WaveplateKind kind, double angle) {
    return apply_jones(s, path, waveplate_jones(kind, angle));
}

PhotonCountProjection project_photon_count(const FockState &s, Label path, int n) {
    require_path(s, path);
    FockState out = FockAccess::make(s.paths(), s.prune_threshold());
    auto &terms = FockAccess::terms(out);
    for (const auto &[basis, amp] : s.terms()) {
        if (s.photons_in(basis, path) == n) {
            terms.emplace(basis, amp);
        }
    }
    double total = s.norm_squared();
    double kept = out.norm_squared();
    if (kept == 0 || total == 0) {
        FockAccess::set_branch(out, true);
        return {0.0, std::move(out)};
    }
    out.normalize();
    return {kept / total, std::move(out)};
}

std::array<DetectionBranch, 2> detect_polarization(const FockState &s, Label path, const AnalyzerSetting &setting) {
    require_path(s, path);
    for (const auto &[basis, _] : s.terms()) {
        if (s.photons_in(basis, path) != 1) {
            throw ContractViolation("detect_polarization: path " + std::to_string(path) +
                                    " does not hold exactly one photon in every branch");
        }
    }
    Matrix2c rotation;
    switch (setting.kind) {
        case AnalyzerSetting::Kind::kPauliZ:
            rotation = Matrix2c::Identity();
            break;
        case AnalyzerSetting::Kind::kPauliX:
            rotation = waveplate_jones(WaveplateKind::kHalf, kPi / 8);
            break;
        case AnalyzerSetting::Kind::kPauliY:
            rotation = waveplate_jones(WaveplateKind::kQuarter, kPi / 4);
            break;
        case AnalyzerSetting::Kind::kLinear:
            rotation = waveplate_jones(WaveplateKind::kHalf, setting.theta / 2);
            break;
        case AnalyzerSetting::Kind::kGeneral:
            rotation = setting.to_computational();
            break;
    }
    const FockState rotated = apply_jones(s, path, rotation);

    std::vector<Label> rest;
    for (Label p : s.paths()) {
        if (p != path) {
            rest.push_back(p);
        }
    }
    const std::size_t base = rotated.mode_index({path, Polarization::kH, Temporal::kMatched});
    const double total = rotated.norm_squared();

    std::array<DetectionBranch, 2> result{DetectionBranch{+1, 0, FockAccess::make(rest, s.prune_threshold())},
                                          DetectionBranch{-1, 0, FockAccess::make(rest, s.prune_threshold())}};
    for (const auto &[basis, amp] : rotated.terms()) {
        std::size_t local = 0;
        for (; local < kModesPerPath; local++) {
            if (basis.occupations[base + local] != 0) {
                break;
            }
        }
        FockBasisState key;
        key.occupations.reserve(basis.occupations.size() - kModesPerPath);
        key.occupations.insert(key.occupations.end(), basis.occupations.begin(), basis.occupations.begin() + base);
        key.occupations.insert(key.occupations.end(), basis.occupations.begin() + base + kModesPerPath,
                               basis.occupations.end());
        key.detector_records = basis.detector_records;
        key.detector_records.push_back(temporal_of(local));
        auto &branch = result[polarization_of(local) == Polarization::kH ? 0 : 1];
        FockAccess::terms(branch.state)[key] += amp;
    }
    for (auto &branch : result) {
        double mass = branch.state.norm_squared();
        branch.probability = total > 0 ? mass / total : 0;
        if (mass > 0) {
            branch.state.normalize();
        } else {
            FockAccess::set_branch(branch.state, true);
        }
    }
    return result;
}

FockState split_temporal(const FockState &s, Label path, double overlap) {
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw std::invalid_argument("overlap must lie in [0, 1]");
    }
    require_path(s, path);
    for (const auto &[basis, _] : s.terms()) {
        for (Polarization pol : {Polarization::kH, Polarization::kV}) {
            if (basis.occupations[s.mode_index({path, pol, Temporal::kOrthogonal})] != 0) {
                throw ContractViolation("split_temporal: path " + std::to_string(path) +
                                        " already carries an orthogonal temporal label");
            }
        }
    }
    ModeMap map = FockAccess::identity_map(s, s, {path});
    const double keep = std::sqrt(overlap);
    const double leak = std::sqrt(1.0 - overlap);
    for (Polarization pol : {Polarization::kH, Polarization::kV}) {
        std::size_t matched = s.mode_index({path, pol, Temporal::kMatched});
        std::size_t orthogonal = s.mode_index({path, pol, Temporal::kOrthogonal});
        auto &entry = map[matched];
        if (keep != 0) {
            entry.emplace_back(matched, keep);
        }
        if (leak != 0) {
            entry.emplace_back(orthogonal, leak);
        }
        map[orthogonal] = {{orthogonal, 1.0}};
    }
    return FockAccess::transform(s, s.paths(), map);
}

QubitState to_qubit_state(const FockState &s) {
    if (s.empty()) {
        throw ContractViolation("to_qubit_state: empty state");
    }
    const std::size_t n = s.paths().size();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    // Key: temporal label of each path's photon followed by detector records.
    std::map<std::vector<std::uint8_t>, Eigen::VectorXcd> branches;
    for (const auto &[basis, amp] : s.terms()) {
        std::size_t index = 0;
        std::vector<std::uint8_t> env;
        env.reserve(n + basis.detector_records.size());
        for (std::size_t p = 0; p < n; p++) {
            int count = 0;
            std::size_t which = 0;
            for (std::size_t local = 0; local < kModesPerPath; local++) {
                int occ = basis.occupations[p * kModesPerPath + local];
                if (occ != 0) {
                    count += occ;
                    which = local;
                }
            }
            if (count != 1) {
                throw ContractViolation("to_qubit_state: path " + std::to_string(s.paths()[p]) + " holds " +
                                        std::to_string(count) + " photons in some branch");
            }
            index = (index << 1) | static_cast<std::size_t>(polarization_of(which));
            env.push_back(static_cast<std::uint8_t>(temporal_of(which)));
        }
        for (Temporal t : basis.detector_records) {
            env.push_back(static_cast<std::uint8_t>(t));
        }
        auto [it, inserted] = branches.try_emplace(env, Eigen::VectorXcd::Zero(dim));
        it->second(static_cast<Eigen::Index>(index)) += amp;
    }
    std::vector<Label> labels = s.paths();
    if (branches.size() == 1) {
        const auto &v = branches.begin()->second;
        return QubitState::pure(labels, v / v.norm());
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &[_, v] : branches) {
        rho += v * v.adjoint();
    }
    return QubitState::mixed(labels, rho / rho.trace().real());
}

}  // namespace fusionsim
