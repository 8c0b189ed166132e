#pragma once

// Small named graphs, corpus loading, and an independent exhaustive
// pmd search shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pmd/corpus.hpp"
#include "pmd/graph.hpp"
#include "pmd/graph_io.hpp"
#include "pmd/positive_matching.hpp"
#include "pmd/slope.hpp"
#include "pmd/solver.hpp"

#ifndef PMD_TEST_DATA_DIR
#error "PMD_TEST_DATA_DIR must be defined"
#endif

namespace pmd::testing {

inline std::string data_path(const std::string& name) { return std::string(PMD_TEST_DATA_DIR) + "/" + name; }

inline std::vector<Graph> load_corpus(const std::string& name) {
    std::ifstream in(data_path(name));
    if (!in) throw std::runtime_error("missing corpus " + name);
    std::vector<Graph> out;
    for (auto& item : read_graph6_lines(in)) {
        if (!item.graph) throw std::runtime_error(name + ":" + std::to_string(item.line) + ": " + item.error);
        out.push_back(std::move(*item.graph));
    }
    return out;
}

// Hexagon 0..5; vertex i carries the triangle {6+3i, 7+3i, 8+3i} through
// the edge i -- 6+3i.
inline Graph hexagon_cactus() {
    std::vector<Edge> es;
    for (int i = 0; i < 6; ++i) {
        es.emplace_back(i, (i + 1) % 6);
        const int t = 6 + 3 * i;
        es.emplace_back(i, t);
        es.emplace_back(t, t + 1);
        es.emplace_back(t + 1, t + 2);
        es.emplace_back(t, t + 2);
    }
    return Graph(24, es);
}

// a, b, c, d = 0..3; alpha = ab, beta = bc, gamma = cd, delta = da, epsilon = ac.
inline Graph diamond() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}); }

// Stub choice: e_a on alpha, e_b on beta, e_c on gamma, e_d on delta.
inline std::vector<int> diamond_stubs(const Graph& g) {
    return {g.edge_index({0, 1}), g.edge_index({1, 2}), g.edge_index({2, 3}), g.edge_index({0, 3})};
}

// x1..x3 = 0..2, y1..y3 = 3..5.
inline Vertex x(int i) { return i - 1; }
inline Vertex y(int j) { return 2 + j; }
inline SlopeLabeling sample_labeling() { return {{0, 1, 2}, {3, 4, 5}}; }

inline Graph slope_sample_a() {
    return Graph(6, {{x(1), y(2)}, {x(3), y(2)}, {x(3), y(1)}, {x(2), y(1)}, {x(2), y(3)}, {x(1), y(3)}});
}

inline Graph slope_sample_b() {
    return Graph(6, {{x(1), y(2)}, {x(1), y(1)}, {x(3), y(1)}, {x(3), y(3)}, {x(1), y(3)}, {x(2), y(3)}});
}

inline std::vector<Edge> sorted(std::vector<Edge> es) {
    std::sort(es.begin(), es.end());
    return es;
}

/// Exhaustive pmd that tries every nonempty positive matching of the
/// residual as the next part, with no maximality or tight-vertex pruning.
/// Positivity is decided by bounded weight search, not by peeling.
/// Needs at most 64 edges and 64 vertices; meant for graphs of about 25 edges.
class NaivePmd {
public:
    explicit NaivePmd(const Graph& g) : g_(g), edges_(g.edges().begin(), g.edges().end()) {
        if (edges_.size() > 64) throw std::invalid_argument("NaivePmd needs at most 64 edges");
    }

    int value() {
        if (edges_.empty()) return 0;
        const std::uint64_t all = edges_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << edges_.size()) - 1;
        for (int level = max_degree(g_);; ++level) {
            if (feasible(all, level)) return level;
        }
    }

private:
    Graph residual(std::uint64_t s) const {
        std::vector<Edge> es;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (s >> i & 1U) es.push_back(edges_[i]);
        }
        return Graph(g_.order(), es);
    }

    // Positivity in the residual s, decided by bounded weight search. Only
    // the residual edges inside V(part) matter, so those form the cache key.
    bool positive_in(const Graph& h, std::uint64_t s, std::uint64_t part) {
        std::uint64_t touched = 0;
        std::vector<Edge> es;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (part >> i & 1U) {
                es.push_back(edges_[i]);
                touched |= (std::uint64_t{1} << edges_[i].u) | (std::uint64_t{1} << edges_[i].v);
            }
        }
        std::uint64_t inside = 0;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const std::uint64_t ends = (std::uint64_t{1} << edges_[i].u) | (std::uint64_t{1} << edges_[i].v);
            if ((s >> i & 1U) && (touched & ends) == ends) inside |= std::uint64_t{1} << i;
        }
        auto [it, fresh] = positive_.try_emplace({inside, part}, false);
        if (fresh) {
            const Matching m(h, es);
            it->second = search_weight_certificate(h, m, certificate_magnitude_bound(m.size())).has_value();
        }
        return it->second;
    }

    bool feasible(std::uint64_t s, int level) {
        if (s == 0) return true;
        if (level == 0) return false;
        if (auto it = failed_.find(s); it != failed_.end() && it->second >= level) return false;
        const Graph h = residual(s);
        bool found = max_degree(h) <= level;
        if (found) {
            found = false;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < edges_.size(); ++i) {
                if (s >> i & 1U) idx.push_back(i);
            }
            std::function<void(std::size_t, std::uint64_t, std::uint64_t)> grow = [&](std::size_t k, std::uint64_t used,
                                                                                     std::uint64_t part) {
                if (found) return;
                if (k == idx.size()) {
                    if (part != 0 && positive_in(h, s, part) && feasible(s & ~part, level - 1)) found = true;
                    return;
                }
                const Edge& e = edges_[idx[k]];
                const std::uint64_t ends = (std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v);
                if ((used & ends) == 0) grow(k + 1, used | ends, part | std::uint64_t{1} << idx[k]);
                grow(k + 1, used, part);
            };
            grow(0, 0, 0);
        }
        if (!found) failed_[s] = std::max(failed_[s], level);
        return found;
    }

    struct PairHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
            return std::hash<std::uint64_t>{}(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
        }
    };

    const Graph& g_;
    std::vector<Edge> edges_;
    std::unordered_map<std::uint64_t, int> failed_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, bool, PairHash> positive_;
};

/// Empty when Delta <= value <= the general upper bounds (2n-3, |E|,
/// bipartite n-1, regular bipartite C(r,2)+2, each per component) and
/// value <= kappa when given; otherwise a description of the violation.
/// Computed here from scratch, not through bounds_report.
inline std::string bounds_violation(const Graph& g, int value, std::optional<int> kappa = std::nullopt) {
    if (g.empty()) return value == 0 ? "" : "edgeless graph with nonzero value";
    int delta = 0;
    for (Vertex v = 0; v < g.order(); ++v) delta = std::max(delta, static_cast<int>(g.neighbors(v).size()));
    int cap = 0;
    for (const auto& comp : connected_components(g)) {
        if (comp.size() < 2) continue;
        const Graph h = induced_subgraph(g, comp).graph;
        const int n = h.order();
        int best = std::min(2 * n - 3, h.size());
        std::vector<int> side(static_cast<std::size_t>(n), -1);
        bool bip = true;
        for (Vertex s = 0; s < n; ++s) {
            if (side[static_cast<std::size_t>(s)] >= 0) continue;
            side[static_cast<std::size_t>(s)] = 0;
            std::vector<Vertex> stack{s};
            while (!stack.empty()) {
                const Vertex v = stack.back();
                stack.pop_back();
                for (Vertex w : h.neighbors(v)) {
                    auto& sw = side[static_cast<std::size_t>(w)];
                    if (sw < 0) {
                        sw = 1 - side[static_cast<std::size_t>(v)];
                        stack.push_back(w);
                    } else if (sw == side[static_cast<std::size_t>(v)]) {
                        bip = false;
                    }
                }
            }
        }
        if (bip) {
            best = std::min(best, n - 1);
            const int r = static_cast<int>(h.neighbors(0).size());
            bool regular = true;
            for (Vertex v = 0; v < n; ++v) regular = regular && static_cast<int>(h.neighbors(v).size()) == r;
            if (regular) best = std::min(best, r * (r - 1) / 2 + 2);
        }
        cap = std::max(cap, best);
    }
    std::string out;
    if (value < delta) out += " below max degree " + std::to_string(delta);
    if (value > cap) out += " above upper bound " + std::to_string(cap);
    if (kappa && value > *kappa) out += " above kappa " + std::to_string(*kappa);
    return out;
}

}  // namespace pmd::testing
