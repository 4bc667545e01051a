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

// Second-quantized polarization optics.
//
// Every spatial path carries four bosonic modes, ordered
//   (path, H, matched) < (path, H, orthogonal) < (path, V, matched) < (path, V, orthogonal)
// and paths are ordered by label. Occupation vectors always follow this order.
//
// Passive elements act on creation operators. The polarizing beam splitter
// uses a real mode swap: H is transmitted, V is reflected, and no phase is
// attached to reflection. With D1 on output a' this makes the "+" detector
// outcome produce |+H+> + |-V->.

#ifndef FUSIONSIM_FOCK_H
#define FUSIONSIM_FOCK_H

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fusionsim/qubit.h"
#include "fusionsim/types.h"

namespace fusionsim {

enum class Polarization : std::uint8_t { kH = 0, kV = 1 };
enum class Temporal : std::uint8_t { kMatched = 0, kOrthogonal = 1 };

struct ModeId {
    Label spatial;
    Polarization polarization = Polarization::kH;
    Temporal temporal = Temporal::kMatched;

    auto operator<=>(const ModeId &) const = default;
};

inline constexpr double kDefaultPruneThreshold = 1e-14;
inline constexpr int kMaxPhotons = 8;

struct FockBasisState {
    std::vector<std::uint8_t> occupations;
    /// Temporal labels of photons already absorbed by polarization-resolving
    /// detectors, in detection order. The detectors do not resolve them, so
    /// they are traced out when converting to qubits.
    std::vector<Temporal> detector_records;

    int photon_count() const;
    auto operator<=>(const FockBasisState &) const = default;
};

class FockState {
   public:
    using Terms = std::map<FockBasisState, Complex>;

    FockState() = default;
    /// Vacuum over the given spatial paths.
    explicit FockState(std::vector<Label> paths, double prune_threshold = kDefaultPruneThreshold);

    /// Adds `amplitude` times the normalized Fock state with one photon per
    /// entry of `photons` (repeated entries give multiple occupation).
    void add(std::span<const ModeId> photons, Complex amplitude);
    void normalize();

    const std::vector<Label> &paths() const { return paths_; }
    std::vector<ModeId> modes() const;
    std::size_t mode_index(const ModeId &mode) const;
    bool has_path(Label path) const;
    const Terms &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    double norm_squared() const;
    double prune_threshold() const { return prune_threshold_; }

    /// True for unnormalized post-selection branches (including the empty
    /// zero-probability branch).
    bool is_branch() const { return branch_; }

    /// Photons found in `path` for a given basis term.
    int photons_in(const FockBasisState &basis, Label path) const;

   private:
    friend struct FockAccess;
    std::vector<Label> paths_;
    Terms terms_;
    double prune_threshold_ = kDefaultPruneThreshold;
    bool branch_ = false;
};

enum class WaveplateKind { kHalf, kQuarter };

/// Jones matrix of a wave plate with its fast axis at `angle` radians from H.
/// Columns are the images of |H> and |V>.
Matrix2c waveplate_jones(WaveplateKind kind, double angle);

FockState tensor(const FockState &a, const FockState &b);

/// Polarizing beam splitter: H of in_a -> out_a, H of in_b -> out_b,
/// V of in_a -> out_b, V of in_b -> out_a. Temporal labels pass through.
FockState apply_pbs(const FockState &s, Label in_a, Label in_b, Label out_a, Label out_b);

/// Arbitrary 2x2 polarization transform of one path (columns: images of H, V).
FockState apply_jones(const FockState &s, Label path, const Matrix2c &jones);
FockState apply_waveplate(const FockState &s, Label path, WaveplateKind kind, double angle);

struct PhotonCountProjection {
    double probability;
    FockState state;  // renormalized; empty and flagged when probability == 0
};

/// Keeps the branches with exactly `n` photons in `path`, summed over
/// polarization and temporal labels.
PhotonCountProjection project_photon_count(const FockState &s, Label path, int n);

struct DetectionBranch {
    int outcome;  // +1 for the analyzer's "+" eigenstate, -1 otherwise
    double probability;
    FockState state;  // measured path removed; renormalized
};

/// Polarization-resolving detection of the single photon in `path`. The
/// analyzer is realized optically: a half-wave plate for linear settings, a
/// quarter-wave plate at 45 degrees for sigma_y, followed by a PBS.
std::array<DetectionBranch, 2> detect_polarization(const FockState &s, Label path, const AnalyzerSetting &setting);

/// Rewrites every matched creation operator on `path` as
/// sqrt(o) matched + sqrt(1 - o) orthogonal.
FockState split_temporal(const FockState &s, Label path, double overlap);

/// One photon per remaining path -> one polarization qubit per path, labelled
/// by path. Temporal labels and detector records are traced out; the result is
/// pure only when they are not entangled with polarization.
QubitState to_qubit_state(const FockState &s);

}  // namespace fusionsim

#endif
