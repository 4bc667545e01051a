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

#include "fusionsim/tabletop.h"

#include <cmath>

namespace fusionsim {

namespace {

void check_outcome(int outcome) {
    if (outcome != 1 && outcome != -1) {
        throw std::invalid_argument("detector outcome must be +1 or -1");
    }
}

QubitState qubit_bell_pair(Label i, Label j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = v(3) = std::sqrt(0.5);
    return QubitState::pure({i, j}, v);
}

}  // namespace

double overlap_from_delay(double delay_fs, double coherence_time_fs) {
    if (!(coherence_time_fs > 0)) {
        throw std::invalid_argument("coherence time must be positive");
    }
    double x = delay_fs / coherence_time_fs;
    return std::exp(-x * x);
}

double NoiseModel::effective_overlap() const {
    if (overlap) {
        return *overlap;
    }
    if (delay_fs) {
        return overlap_from_delay(*delay_fs, coherence_time_fs);
    }
    return 1.0;
}

void NoiseModel::validate() const {
    if (overlap && !(*overlap >= 0 && *overlap <= 1)) {
        throw std::invalid_argument("overlap must lie in [0, 1]");
    }
    if (!(white_noise >= 0 && white_noise <= 1)) {
        throw std::invalid_argument("white_noise must lie in [0, 1]");
    }
    if (!(coherence_time_fs > 0)) {
        throw std::invalid_argument("coherence_time_fs must be positive");
    }
    if (delay_fs && !std::isfinite(*delay_fs)) {
        throw std::invalid_argument("delay_fs must be finite");
    }
}

FockState bell_pair(Label i, Label j, double prune_threshold) {
    FockState s({i, j}, prune_threshold);
    const double r = std::sqrt(0.5);
    ModeId hh[] = {{i, Polarization::kH}, {j, Polarization::kH}};
    ModeId vv[] = {{i, Polarization::kV}, {j, Polarization::kV}};
    s.add(hh, r);
    s.add(vv, r);
    return s;
}

FockState two_qubit_cluster(const FockState &pair, Label rotated_path) {
    return apply_waveplate(pair, rotated_path, WaveplateKind::kHalf, kPi / 8);
}

namespace {

struct OpticsRun {
    double success_probability;
    std::array<DetectionBranch, 2> branches;
};

OpticsRun run_fusion_optics(double overlap, double prune_threshold) {
    FockState s = tensor(two_qubit_cluster(bell_pair(kPhoton1, kPhoton2, prune_threshold), kPhoton1),
                         two_qubit_cluster(bell_pair(kPhoton3, kPhoton4, prune_threshold), kPhoton4));
    s = split_temporal(s, kPhoton3, overlap);
    s = apply_pbs(s, kPhoton2, kPhoton3, kPhoton2, kPhoton3);
    auto at_detector = project_photon_count(s, kPhoton2, 1);
    auto kept = project_photon_count(at_detector.state, kPhoton3, 1);
    return {at_detector.probability * kept.probability,
            detect_polarization(kept.state, kPhoton2, AnalyzerSetting::pauli_x())};
}

}  // namespace

FockState fuse_type1_fock(double overlap, int detector_outcome, double prune_threshold) {
    check_outcome(detector_outcome);
    return run_fusion_optics(overlap, prune_threshold).branches[detector_outcome == 1 ? 0 : 1].state;
}

FusionRun fuse_type1(const NoiseModel &noise, int detector_outcome) {
    noise.validate();
    check_outcome(detector_outcome);
    auto optics = run_fusion_optics(noise.effective_overlap(), kDefaultPruneThreshold);
    const auto &branch = optics.branches[detector_outcome == 1 ? 0 : 1];
    QubitState q = apply_white_noise(to_qubit_state(branch.state), noise.white_noise);
    return {optics.success_probability, optics.success_probability * branch.probability, std::move(q)};
}

FusionRun fuse_type1_kraus(const NoiseModel &noise, int detector_outcome) {
    noise.validate();
    check_outcome(detector_outcome);
    QubitState s = tensor(qubit_bell_pair(kPhoton1, kPhoton2), qubit_bell_pair(kPhoton3, kPhoton4));
    s = apply_unitary(s, kPhoton1, hadamard());
    s = apply_unitary(s, kPhoton4, hadamard());
    auto plus = fusion_kraus(s, kPhoton2, kPhoton3, +1);
    auto minus = fusion_kraus(s, kPhoton2, kPhoton3, -1);
    const auto &chosen = detector_outcome == 1 ? plus : minus;
    QubitState q = dephase_coherence(*chosen.state, noise.effective_overlap(), kPhoton3);
    q = apply_white_noise(q, noise.white_noise);
    return {plus.probability + minus.probability, chosen.probability, std::move(q)};
}

QubitState ideal_cluster(int sign) {
    check_outcome(sign);
    // (|+H+> + sign |-V->) / sqrt(2); index bits are (photon 1, photon 3, photon 4).
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 8; i++) {
        int a = (i >> 2) & 1;
        int b = (i >> 1) & 1;
        int c = i & 1;
        double plus_branch = b == 0 ? 0.5 : 0.0;
        double minus_branch = b == 1 ? 0.5 * (a ? -1 : 1) * (c ? -1 : 1) : 0.0;
        v(i) = (plus_branch + sign * minus_branch) / std::sqrt(2.0);
    }
    return QubitState::pure({kPhoton1, kPhoton3, kPhoton4}, v);
}

QubitState ideal_ghz() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v(0) = v(7) = std::sqrt(0.5);
    return QubitState::pure({kPhoton1, kPhoton3, kPhoton4}, v);
}

QubitState cluster_to_ghz(const QubitState &s) {
    if (s.num_qubits() != 3) {
        throw std::invalid_argument("cluster_to_ghz expects a three-photon state");
    }
    QubitState out = apply_unitary(s, s.labels()[0], hadamard());
    return apply_unitary(out, s.labels()[2], hadamard());
}

}  // namespace fusionsim
