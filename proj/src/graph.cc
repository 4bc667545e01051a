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

#include "fusionsim/graph.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <sstream>

namespace fusionsim {

namespace {

std::pair<Label, Label> ordered(Label a, Label b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

std::string format_set(const std::set<Label> &s) {
    std::string out = "{";
    bool first = true;
    for (Label l : s) {
        if (!first) {
            out += ",";
        }
        out += std::to_string(l);
        first = false;
    }
    return out + "}";
}

}  // namespace

void GraphState::add_vertex(std::set<Label> photons) {
    if (photons.empty()) {
        throw std::invalid_argument("a logical vertex needs at least one photon");
    }
    for (Label p : photons) {
        if (contains(p)) {
            throw std::invalid_argument("photon " + std::to_string(p) + " already belongs to a vertex");
        }
    }
    Label rep = *photons.begin();
    vertices_.emplace(rep, std::move(photons));
}

void GraphState::add_edge(Label a, Label b) {
    Label ra = find(a);
    Label rb = find(b);
    if (ra == rb) {
        throw std::invalid_argument("self-edges are not allowed");
    }
    edges_.insert(ordered(ra, rb));
}

Label GraphState::find(Label photon) const {
    for (const auto &[rep, photons] : vertices_) {
        if (photons.contains(photon)) {
            return rep;
        }
    }
    throw std::invalid_argument("photon " + std::to_string(photon) + " is not in the graph");
}

bool GraphState::contains(Label photon) const {
    return std::any_of(vertices_.begin(), vertices_.end(),
                       [&](const auto &kv) { return kv.second.contains(photon); });
}

std::vector<Label> GraphState::neighbors(Label photon) const {
    Label r = find(photon);
    std::vector<Label> out;
    for (const auto &[a, b] : edges_) {
        if (a == r) {
            out.push_back(b);
        } else if (b == r) {
            out.push_back(a);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t GraphState::degree(Label photon) const {
    return neighbors(photon).size();
}

std::vector<Label> GraphState::physical_labels() const {
    std::vector<Label> out;
    for (const auto &[_, photons] : vertices_) {
        out.insert(out.end(), photons.begin(), photons.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool GraphState::is_linear() const {
    std::set<Label> seen;
    for (const auto &[rep, _] : vertices_) {
        if (degree(rep) > 2) {
            return false;
        }
        if (seen.contains(rep)) {
            continue;
        }
        // A connected component is a path iff it has one edge fewer than vertices.
        std::size_t nv = 0;
        std::size_t degree_sum = 0;
        std::queue<Label> todo;
        todo.push(rep);
        seen.insert(rep);
        while (!todo.empty()) {
            Label v = todo.front();
            todo.pop();
            nv++;
            for (Label w : neighbors(v)) {
                degree_sum++;
                if (seen.insert(w).second) {
                    todo.push(w);
                }
            }
        }
        if (degree_sum / 2 != nv - 1) {
            return false;
        }
    }
    return true;
}

std::size_t GraphState::component_size(Label photon) const {
    std::set<Label> seen{find(photon)};
    std::queue<Label> todo;
    todo.push(find(photon));
    while (!todo.empty()) {
        Label v = todo.front();
        todo.pop();
        for (Label w : neighbors(v)) {
            if (seen.insert(w).second) {
                todo.push(w);
            }
        }
    }
    return seen.size();
}

void GraphState::remove_vertex(Label photon) {
    Label r = find(photon);
    std::erase_if(edges_, [&](const auto &e) { return e.first == r || e.second == r; });
    vertices_.erase(r);
}

void GraphState::merge_vertices(Label a, Label b) {
    Label ra = find(a);
    Label rb = find(b);
    if (ra == rb) {
        return;
    }
    std::set<Label> photons = vertices_.at(ra);
    photons.insert(vertices_.at(rb).begin(), vertices_.at(rb).end());
    std::set<Label> attached;
    for (Label n : neighbors(ra)) {
        attached.insert(n);
    }
    for (Label n : neighbors(rb)) {
        attached.insert(n);
    }
    attached.erase(ra);
    attached.erase(rb);
    remove_vertex(ra);
    remove_vertex(rb);
    Label rep = *photons.begin();
    vertices_.emplace(rep, std::move(photons));
    for (Label n : attached) {
        edges_.insert(ordered(rep, n));
    }
}

void GraphState::remove_photon(Label photon) {
    Label r = find(photon);
    std::set<Label> photons = vertices_.at(r);
    photons.erase(photon);
    if (photons.empty()) {
        remove_vertex(r);
        return;
    }
    std::vector<Label> attached = neighbors(r);
    remove_vertex(r);
    Label rep = *photons.begin();
    vertices_.emplace(rep, std::move(photons));
    for (Label n : attached) {
        edges_.insert(ordered(rep, n));
    }
}

std::string GraphState::to_adjacency_text() const {
    std::string out;
    for (const auto &[a, b] : edges_) {
        out += format_set(vertices_.at(a)) + " " + format_set(vertices_.at(b)) + "\n";
    }
    for (const auto &[rep, photons] : vertices_) {
        if (degree(rep) == 0) {
            out += format_set(photons) + "\n";
        }
    }
    return out;
}

GraphState GraphState::from_adjacency_text(std::string_view text) {
    GraphState g;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::vector<std::set<Label>> sets;
        std::size_t pos = 0;
        while ((pos = line.find('{', pos)) != std::string::npos) {
            std::size_t close = line.find('}', pos);
            if (close == std::string::npos) {
                throw std::invalid_argument("unbalanced brace on line " + std::to_string(line_no));
            }
            std::set<Label> s;
            std::istringstream items(line.substr(pos + 1, close - pos - 1));
            std::string item;
            while (std::getline(items, item, ',')) {
                s.insert(std::stoi(item));
            }
            sets.push_back(std::move(s));
            pos = close + 1;
        }
        if (sets.empty()) {
            continue;
        }
        if (sets.size() > 2) {
            throw std::invalid_argument("more than two vertices on line " + std::to_string(line_no));
        }
        for (const auto &s : sets) {
            if (s.empty()) {
                throw std::invalid_argument("empty vertex on line " + std::to_string(line_no));
            }
            if (!g.contains(*s.begin())) {
                g.add_vertex(s);
            } else if (g.vertices_.at(g.find(*s.begin())) != s) {
                throw std::invalid_argument("inconsistent vertex on line " + std::to_string(line_no));
            }
        }
        if (sets.size() == 2) {
            g.add_edge(*sets[0].begin(), *sets[1].begin());
        }
    }
    return g;
}

GraphState path(int n, Label first) {
    if (n < 1) {
        throw std::invalid_argument("path length must be at least 1");
    }
    GraphState g;
    for (int k = 0; k < n; k++) {
        g.add_vertex({first + k});
        if (k > 0) {
            g.add_edge(first + k - 1, first + k);
        }
    }
    return g;
}

GraphState fuse(const GraphState &a, const GraphState &b, Label end_a, Label end_b, bool success) {
    for (Label p : b.physical_labels()) {
        if (a.contains(p)) {
            throw std::invalid_argument("fuse: photon " + std::to_string(p) + " appears in both clusters");
        }
    }
    if (!a.is_linear() || !b.is_linear()) {
        throw std::invalid_argument("fuse: both clusters must be linear");
    }
    if (a.degree(end_a) > 1 || b.degree(end_b) > 1) {
        throw std::invalid_argument("fuse: fused photons must sit on cluster ends");
    }
    GraphState g = a;
    for (const auto &[_, photons] : b.vertices()) {
        g.add_vertex(photons);
    }
    for (const auto &[x, y] : b.edges()) {
        g.add_edge(x, y);
    }
    if (!success) {
        g.remove_vertex(end_a);
        g.remove_vertex(end_b);
        return g;
    }
    const std::set<Label> encoded = g.vertices().at(g.find(end_a));
    if (encoded.size() > 1) {
        Label remaining = *encoded.begin() == end_a ? *std::next(encoded.begin()) : *encoded.begin();
        g.remove_photon(end_a);
        g.merge_vertices(remaining, end_b);
        return g;
    }
    std::vector<Label> attached = g.neighbors(end_a);
    g.remove_vertex(end_a);
    for (Label n : attached) {
        g.add_edge(n, end_b);
    }
    return g;
}

GraphState measure_z(const GraphState &g, Label photon) {
    GraphState out = g;
    out.remove_vertex(photon);
    return out;
}

GraphState measure_x(const GraphState &g, Label photon) {
    GraphState out = g;
    Label r = g.find(photon);
    if (g.vertices().at(r).size() > 1) {
        out.remove_photon(photon);
        return out;
    }
    std::vector<Label> n = g.neighbors(r);
    switch (n.size()) {
        case 0:
            out.remove_vertex(r);
            break;
        case 1:
            out.remove_vertex(r);
            out.remove_vertex(n[0]);
            break;
        case 2:
            out.remove_vertex(r);
            out.merge_vertices(n[0], n[1]);
            break;
        default:
            throw std::invalid_argument("measure_x: vertex degree above 2 is outside the linear-cluster rules");
    }
    return out;
}

std::vector<Byproduct> measure_z_byproducts(const GraphState &g, Label photon) {
    std::vector<Byproduct> out;
    for (Label n : g.neighbors(photon)) {
        out.push_back({n, 'Z'});
    }
    return out;
}

std::vector<Byproduct> measure_x_byproducts(const GraphState &g, Label photon) {
    Label r = g.find(photon);
    const auto &photons = g.vertices().at(r);
    if (photons.size() > 1) {
        Label other = *photons.begin() == photon ? *std::next(photons.begin()) : *photons.begin();
        return {{other, 'Z'}};
    }
    std::vector<Label> n = g.neighbors(r);
    std::vector<Byproduct> out;
    if (n.empty()) {
        return out;
    }
    if (n.size() == 2) {
        for (Label p : g.vertices().at(n[0])) {
            out.push_back({p, 'X'});
        }
    }
    for (Label w : g.neighbors(n[0])) {
        if (w != r) {
            out.push_back({w, 'Z'});
        }
    }
    return out;
}

QubitState build_state(const GraphState &g) {
    std::vector<Label> labels = g.physical_labels();
    const std::size_t n = labels.size();
    if (n > kMaxBuildQubits) {
        throw std::invalid_argument("build_state supports at most " + std::to_string(kMaxBuildQubits) + " photons");
    }
    auto bit_of = [&](std::size_t index, Label photon) {
        auto pos = static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), photon) - labels.begin());
        return (index >> (n - 1 - pos)) & 1;
    };
    const std::size_t dim = std::size_t{1} << n;
    const double amp = std::pow(0.5, 0.5 * static_cast<double>(g.num_vertices()));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; i++) {
        std::map<Label, std::size_t> logical;
        bool consistent = true;
        for (const auto &[rep, photons] : g.vertices()) {
            std::size_t b = bit_of(i, rep);
            for (Label p : photons) {
                consistent = consistent && bit_of(i, p) == b;
            }
            logical[rep] = b;
        }
        if (!consistent) {
            continue;
        }
        std::size_t parity = 0;
        for (const auto &[a, b] : g.edges()) {
            parity ^= logical[a] & logical[b];
        }
        v(static_cast<Eigen::Index>(i)) = parity ? -amp : amp;
    }
    return QubitState::pure(std::move(labels), std::move(v));
}

std::vector<std::string> stabilizers(const GraphState &g) {
    std::vector<Label> labels = g.physical_labels();
    auto slot = [&](Label photon) {
        return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), photon) - labels.begin());
    };
    std::vector<std::string> out;
    for (const auto &[rep, photons] : g.vertices()) {
        std::string word(labels.size(), 'I');
        for (Label p : photons) {
            word[slot(p)] = 'X';
        }
        for (Label n : g.neighbors(rep)) {
            word[slot(n)] = 'Z';
        }
        out.push_back(std::move(word));
    }
    return out;
}

std::vector<std::string> encoding_stabilizers(const GraphState &g) {
    std::vector<Label> labels = g.physical_labels();
    auto slot = [&](Label photon) {
        return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), photon) - labels.begin());
    };
    std::vector<std::string> out;
    for (const auto &[rep, photons] : g.vertices()) {
        for (Label p : photons) {
            if (p == rep) {
                continue;
            }
            std::string word(labels.size(), 'I');
            word[slot(rep)] = 'Z';
            word[slot(p)] = 'Z';
            out.push_back(std::move(word));
        }
    }
    return out;
}

GrowthStrategy parse_strategy(std::string_view name) {
    if (name == "discard-remnants") {
        return GrowthStrategy::kDiscardRemnants;
    }
    if (name == "recycle") {
        return GrowthStrategy::kRecycle;
    }
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::string_view strategy_name(GrowthStrategy s) {
    return s == GrowthStrategy::kDiscardRemnants ? "discard-remnants" : "recycle";
}

namespace {

constexpr std::uint64_t kMaxPairsPerTrial = 100'000'000;

std::uint64_t grow_discarding(int target, std::mt19937_64 &rng) {
    std::bernoulli_distribution coin(0.5);
    std::uint64_t pairs = 1;
    int length = 2;
    while (length < target) {
        pairs++;
        if (coin(rng)) {
            length += 1;  // n + 2 - 1
        } else {
            length -= 1;
            if (length < 2) {
                pairs++;
                length = 2;
            }
        }
        if (pairs > kMaxPairsPerTrial) {
            throw std::runtime_error("estimate_cost: trial exceeded the pair budget");
        }
    }
    return pairs;
}

std::uint64_t grow_recycling(int target, std::mt19937_64 &rng) {
    std::bernoulli_distribution coin(0.5);
    std::multiset<int> pool{2};
    std::uint64_t pairs = 1;
    while (*pool.rbegin() < target) {
        if (pool.size() < 2) {
            pool.insert(2);
            pairs++;
        }
        int n = *pool.rbegin();
        pool.erase(std::prev(pool.end()));
        int m = *pool.rbegin();
        pool.erase(std::prev(pool.end()));
        if (coin(rng)) {
            pool.insert(n + m - 1);
        } else {
            for (int remnant : {n - 1, m - 1}) {
                if (remnant >= 2) {
                    pool.insert(remnant);
                }
            }
        }
        if (pool.empty()) {
            pool.insert(2);
            pairs++;
        }
        if (pairs > kMaxPairsPerTrial) {
            throw std::runtime_error("estimate_cost: trial exceeded the pair budget");
        }
    }
    return pairs;
}

}  // namespace

CostEstimate estimate_cost(int target_length, GrowthStrategy strategy, std::uint64_t trials, std::uint64_t seed) {
    if (target_length < 2) {
        throw std::invalid_argument("target length must be at least 2");
    }
    if (trials < 1) {
        throw std::invalid_argument("at least one trial is required");
    }
    double sum = 0;
    double sum_sq = 0;
    for (std::uint64_t k = 0; k < trials; k++) {
        std::mt19937_64 rng(seed + k);
        auto pairs = static_cast<double>(strategy == GrowthStrategy::kDiscardRemnants
                                             ? grow_discarding(target_length, rng)
                                             : grow_recycling(target_length, rng));
        sum += pairs;
        sum_sq += pairs * pairs;
    }
    const auto t = static_cast<double>(trials);
    const double mean = sum / t;
    double se = 0;
    if (trials > 1) {
        double var = std::max(0.0, (sum_sq - t * mean * mean) / (t - 1));
        se = std::sqrt(var / t);
    }
    return {mean, se, trials};
}

}  // namespace fusionsim
