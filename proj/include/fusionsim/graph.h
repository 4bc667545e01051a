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

#ifndef FUSIONSIM_GRAPH_H
#define FUSIONSIM_GRAPH_H

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fusionsim/qubit.h"

namespace fusionsim {

/// Cluster-state bookkeeping over logical vertices.
///
/// A logical vertex is a non-empty set of physical photon labels; sets with
/// more than one photon are redundantly encoded (|H..H> / |V..V>). Any member
/// photon can be used to address its vertex. Internally a vertex is keyed by
/// its smallest photon label.
class GraphState {
   public:
    GraphState() = default;

    void add_vertex(std::set<Label> photons);
    /// Connects the vertices holding photons `a` and `b`.
    void add_edge(Label a, Label b);

    const std::map<Label, std::set<Label>> &vertices() const { return vertices_; }
    const std::set<std::pair<Label, Label>> &edges() const { return edges_; }

    /// Representative (smallest photon label) of the vertex holding `photon`.
    Label find(Label photon) const;
    bool contains(Label photon) const;
    std::vector<Label> neighbors(Label photon) const;
    std::size_t degree(Label photon) const;
    std::vector<Label> physical_labels() const;
    std::size_t num_vertices() const { return vertices_.size(); }

    /// Every component is a path: max degree 2, no cycles.
    bool is_linear() const;
    /// Number of logical vertices in the component containing `photon`.
    std::size_t component_size(Label photon) const;

    void remove_vertex(Label photon);
    /// Merges the vertices holding `a` and `b` into one logical vertex.
    void merge_vertices(Label a, Label b);
    /// Drops one photon from a redundantly encoded vertex.
    void remove_photon(Label photon);

    /// One edge per line ("{1} {2,4}"), then isolated vertices one per line.
    std::string to_adjacency_text() const;
    static GraphState from_adjacency_text(std::string_view text);

    bool operator==(const GraphState &) const = default;

   private:
    std::map<Label, std::set<Label>> vertices_;
    std::set<std::pair<Label, Label>> edges_;
};

/// Linear cluster on photons first, first + 1, ..., first + n - 1.
GraphState path(int n, Label first = 1);

/// Type-I fusion of the end photon `end_a` of `a` with the end photon
/// `end_b` of `b`. On success the fused photon keeps `end_b`'s label and the
/// chains join (length n + m - 1). On failure both photons are effectively
/// measured in Z, removing their vertices.
GraphState fuse(const GraphState &a, const GraphState &b, Label end_a, Label end_b, bool success);

/// Z measurement of `photon` for outcome H: removes its logical vertex and bonds.
GraphState measure_z(const GraphState &g, Label photon);

/// X measurement of `photon` for outcome +. On a degree-2 vertex the two
/// neighbors merge into one redundantly encoded vertex. On a degree-1 vertex
/// the neighbor is projected onto H and leaves the cluster with it. Degree 0
/// just removes the vertex; a photon of a redundantly encoded vertex is
/// dropped from the encoding.
GraphState measure_x(const GraphState &g, Label photon);

/// Pauli correction that maps the opposite measurement outcome (V for Z, -
/// for X) onto the state the rewrite rule describes.
struct Byproduct {
    Label photon;
    char pauli;  // 'X' or 'Z'
    bool operator==(const Byproduct &) const = default;
};
std::vector<Byproduct> measure_z_byproducts(const GraphState &g, Label photon);
std::vector<Byproduct> measure_x_byproducts(const GraphState &g, Label photon);

inline constexpr std::size_t kMaxBuildQubits = 12;

/// |+> on every logical vertex, CZ on every edge; redundantly encoded
/// vertices expand as |H..H> + |V..V>. Qubits are ordered by photon label.
QubitState build_state(const GraphState &g);

/// X on the vertex's photons times Z on one photon of every neighbor, one
/// generator per logical vertex, as Pauli words over the sorted photon labels.
std::vector<std::string> stabilizers(const GraphState &g);
/// Z_p Z_q parity checks tying the photons of each redundantly encoded vertex.
std::vector<std::string> encoding_stabilizers(const GraphState &g);

enum class GrowthStrategy { kDiscardRemnants, kRecycle };
GrowthStrategy parse_strategy(std::string_view name);
std::string_view strategy_name(GrowthStrategy s);

struct CostEstimate {
    double mean_bell_pairs;
    double standard_error;
    std::uint64_t trials;
};

/// Monte Carlo estimate of the Bell pairs consumed to grow a linear cluster of
/// `target_length` with fusions that succeed with probability 1/2. Trial k is
/// driven by its own generator seeded with seed + k.
CostEstimate estimate_cost(int target_length, GrowthStrategy strategy, std::uint64_t trials, std::uint64_t seed);

}  // namespace fusionsim

#endif
