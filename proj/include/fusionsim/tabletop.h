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

// The two-source fusion experiment.
//
// Photon labels follow the optical table: source one emits photons 1 and 2,
// source two emits photons 3 and 4. Photons 2 and 3 meet on the PBS; output
// 2' feeds detector D1 (analyzed in +/-) and output 3' keeps label 3. The
// outer photons 1 and 4 get a half-wave plate at 22.5 degrees, turning each
// Bell pair into a two-qubit cluster.

#ifndef FUSIONSIM_TABLETOP_H
#define FUSIONSIM_TABLETOP_H

#include <optional>

#include "fusionsim/fock.h"
#include "fusionsim/qubit.h"

namespace fusionsim {

inline constexpr double kDefaultCoherenceTimeFs = 740.0;

inline constexpr Label kPhoton1 = 1;
inline constexpr Label kPhoton2 = 2;
inline constexpr Label kPhoton3 = 3;
inline constexpr Label kPhoton4 = 4;

/// Gaussian overlap law exp(-(tau / tau_c)^2).
double overlap_from_delay(double delay_fs, double coherence_time_fs);

struct NoiseModel {
    /// Explicit mode overlap; takes precedence over `delay_fs`.
    std::optional<double> overlap;
    double white_noise = 0;
    std::optional<double> delay_fs;
    double coherence_time_fs = kDefaultCoherenceTimeFs;

    /// overlap if set, else the Gaussian law at delay_fs, else 1.
    double effective_overlap() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// (|HH> + |VV>) / sqrt(2) on paths i and j.
FockState bell_pair(Label i, Label j, double prune_threshold = kDefaultPruneThreshold);

/// Half-wave plate at pi/8 on `rotated_path`, taking (|HH> + |VV>) to the
/// two-qubit cluster form |H>|+> + |V>|-> with the rotated photon in +/-.
FockState two_qubit_cluster(const FockState &pair, Label rotated_path);

/// The post-selected output of one fusion run.
struct FusionRun {
    /// Probability that D1 and the kept port each see exactly one photon.
    double success_probability;
    /// Probability of success together with the requested D1 outcome.
    double outcome_probability;
    QubitState state;  // labels {1, 3, 4}
};

/// Optical fusion through the Fock engine. White noise is applied to the
/// post-selected qubit state.
FusionRun fuse_type1(const NoiseModel &noise, int detector_outcome);

/// The same experiment at the qubit level: Kraus fusion followed by
/// coherence damping of the fused qubit. Used as an independent route.
FusionRun fuse_type1_kraus(const NoiseModel &noise, int detector_outcome);

/// Fock state just before conversion to qubits (after D1 detection).
FockState fuse_type1_fock(double overlap, int detector_outcome, double prune_threshold = kDefaultPruneThreshold);

/// (|+H+> + sign |-V->) / sqrt(2) on labels {1, 3, 4}.
QubitState ideal_cluster(int sign = +1);
/// (|HHH> + |VVV>) / sqrt(2) on labels {1, 3, 4}.
QubitState ideal_ghz();

/// Hadamard on the first and last photon of a three-photon register.
QubitState cluster_to_ghz(const QubitState &s);

}  // namespace fusionsim

#endif
