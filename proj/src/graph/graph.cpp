#include "pmd/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

namespace pmd {

std::string to_string(const Edge& e) {
    return std::to_string(e.u) + "-" + std::to_string(e.v);
}

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw Error("graph order must be non-negative");
    for (const Edge& e : edges_) {
        if (e.u == e.v) throw Error("loop at vertex " + std::to_string(e.u));
        if (e.u < 0 || e.v >= n) throw Error("edge " + to_string(e) + " out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) throw Error("duplicate edge " + to_string(*dup));

    adjacency_.assign(static_cast<std::size_t>(n), {});
    for (const Edge& e : edges_) {
        adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
        adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

    if (n <= 64) {
        rows_.assign(static_cast<std::size_t>(n), 0);
        for (const Edge& e : edges_) {
            rows_[static_cast<std::size_t>(e.u)] |= std::uint64_t{1} << e.v;
            rows_[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << e.u;
        }
    }
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) {
        throw Error("vertex " + std::to_string(v) + " out of range 0.." + std::to_string(n_ - 1));
    }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    check_vertex(v);
    return adjacency_[static_cast<std::size_t>(v)];
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) return false;
    if (!rows_.empty()) return (rows_[static_cast<std::size_t>(a)] >> b) & 1U;
    const auto& nb = adjacency_[static_cast<std::size_t>(a)];
    return std::binary_search(nb.begin(), nb.end(), b);
}

int Graph::edge_index(const Edge& e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return -1;
    return static_cast<int>(it - edges_.begin());
}

int degree(const Graph& g, Vertex v) {
    return static_cast<int>(g.neighbors(v).size());
}

int max_degree(const Graph& g) {
    if (g.order() == 0) throw Error("max_degree of the empty graph");
    int best = 0;
    for (Vertex v = 0; v < g.order(); ++v) best = std::max(best, degree(g, v));
    return best;
}

int min_degree(const Graph& g) {
    if (g.order() == 0) throw Error("min_degree of the empty graph");
    int best = g.order();
    for (Vertex v = 0; v < g.order(); ++v) best = std::min(best, degree(g, v));
    return best;
}

int non_isolated_count(const Graph& g) {
    int count = 0;
    for (Vertex v = 0; v < g.order(); ++v) count += degree(g, v) > 0 ? 1 : 0;
    return count;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vs) {
    InducedSubgraph out;
    out.old_to_new.assign(static_cast<std::size_t>(g.order()), -1);
    std::vector<Vertex> sorted(vs.begin(), vs.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Vertex v : sorted) {
        if (v < 0 || v >= g.order()) throw Error("vertex " + std::to_string(v) + " out of range");
        out.old_to_new[static_cast<std::size_t>(v)] = static_cast<int>(out.new_to_old.size());
        out.new_to_old.push_back(v);
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int a = out.old_to_new[static_cast<std::size_t>(e.u)];
        int b = out.old_to_new[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) edges.emplace_back(a, b);
    }
    out.graph = Graph(static_cast<int>(sorted.size()), std::move(edges));
    return out;
}

namespace {

std::vector<bool> edge_mask(const Graph& g, std::span<const Edge> es) {
    std::vector<bool> mask(static_cast<std::size_t>(g.size()), false);
    for (const Edge& e : es) {
        int idx = g.edge_index(e);
        if (idx < 0) throw Error("edge " + to_string(e) + " is not an edge of the graph");
        mask[static_cast<std::size_t>(idx)] = true;
    }
    return mask;
}

}  // namespace

Graph remove_edges(const Graph& g, std::span<const Edge> es) {
    auto mask = edge_mask(g, es);
    std::vector<Edge> kept;
    for (int i = 0; i < g.size(); ++i) {
        if (!mask[static_cast<std::size_t>(i)]) kept.push_back(g.edges()[static_cast<std::size_t>(i)]);
    }
    return Graph(g.order(), std::move(kept));
}

Graph edge_subgraph(const Graph& g, std::span<const Edge> es) {
    auto mask = edge_mask(g, es);
    std::vector<Edge> kept;
    for (int i = 0; i < g.size(); ++i) {
        if (mask[static_cast<std::size_t>(i)]) kept.push_back(g.edges()[static_cast<std::size_t>(i)]);
    }
    return Graph(g.order(), std::move(kept));
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    std::vector<std::vector<Vertex>> comps;
    std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<Vertex> comp{s};
        seen[static_cast<std::size_t>(s)] = true;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (Vertex w : g.neighbors(comp[head])) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g) {
    return connected_components(g).size() <= 1;
}

bool is_forest(const Graph& g) {
    return g.size() + static_cast<int>(connected_components(g).size()) == g.order();
}

std::optional<Bipartition> bipartition_of(const Graph& g) {
    std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
    for (const auto& comp : connected_components(g)) {
        // comp is ascending, so comp.front() is the smallest id
        side[static_cast<std::size_t>(comp.front())] = 0;
        std::queue<Vertex> queue;
        queue.push(comp.front());
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop();
            for (Vertex w : g.neighbors(v)) {
                auto& sw = side[static_cast<std::size_t>(w)];
                if (sw < 0) {
                    sw = 1 - side[static_cast<std::size_t>(v)];
                    queue.push(w);
                } else if (sw == side[static_cast<std::size_t>(v)]) {
                    return std::nullopt;
                }
            }
        }
    }
    Bipartition b;
    for (Vertex v = 0; v < g.order(); ++v) {
        (side[static_cast<std::size_t>(v)] == 0 ? b.x_side : b.y_side).push_back(v);
    }
    return b;
}

std::optional<std::vector<int>> complete_multipartite_parts(const Graph& g) {
    if (g.order() < 2 || g.empty()) return std::nullopt;
    // Non-adjacency must be an equivalence relation: classes are the parts.
    std::vector<int> cls(static_cast<std::size_t>(g.order()), -1);
    std::vector<Vertex> reps;
    for (Vertex v = 0; v < g.order(); ++v) {
        for (std::size_t c = 0; c < reps.size(); ++c) {
            if (!g.has_edge(v, reps[c])) {
                cls[static_cast<std::size_t>(v)] = static_cast<int>(c);
                break;
            }
        }
        if (cls[static_cast<std::size_t>(v)] < 0) {
            cls[static_cast<std::size_t>(v)] = static_cast<int>(reps.size());
            reps.push_back(v);
        }
    }
    if (reps.size() < 2) return std::nullopt;
    std::vector<int> sizes(reps.size(), 0);
    for (int c : cls) ++sizes[static_cast<std::size_t>(c)];
    long long expected = 0;
    long long total = g.order();
    for (int s : sizes) expected += static_cast<long long>(s) * (total - s);
    if (expected / 2 != g.size()) return std::nullopt;
    for (const Edge& e : g.edges()) {
        if (cls[static_cast<std::size_t>(e.u)] == cls[static_cast<std::size_t>(e.v)]) return std::nullopt;
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::optional<int> regular_degree(const Graph& g) {
    if (g.order() == 0) return std::nullopt;
    int d = degree(g, 0);
    for (Vertex v = 1; v < g.order(); ++v) {
        if (degree(g, v) != d) return std::nullopt;
    }
    return d;
}

Digraph::Digraph(int n, std::vector<std::pair<int, int>> arcs) : n_(n), arcs_(std::move(arcs)) {
    if (n < 0) throw Error("digraph order must be non-negative");
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
    out_.assign(static_cast<std::size_t>(n), {});
    for (auto [i, j] : arcs_) {
        if (i == j) throw Error("digraph self-loop at " + std::to_string(i));
        if (i < 0 || j < 0 || i >= n || j >= n) throw Error("arc out of range");
        out_[static_cast<std::size_t>(i)].push_back(j);
    }
}

bool Digraph::has_arc(int i, int j) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), std::pair{i, j});
}

namespace {

// Iterative three-color DFS; returns a cycle restricted to `allowed`.
std::optional<std::vector<int>> dfs_cycle(const Digraph& d, const std::vector<bool>& allowed) {
    const auto n = static_cast<std::size_t>(d.order());
    std::vector<int> color(n, 0);
    std::vector<int> parent(n, -1);
    for (int s = 0; s < d.order(); ++s) {
        if (!allowed[static_cast<std::size_t>(s)] || color[static_cast<std::size_t>(s)] != 0) continue;
        std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
        color[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            auto succ = d.successors(v);
            if (next == succ.size()) {
                color[static_cast<std::size_t>(v)] = 2;
                stack.pop_back();
                continue;
            }
            int w = succ[next++];
            if (!allowed[static_cast<std::size_t>(w)]) continue;
            if (color[static_cast<std::size_t>(w)] == 1) {
                std::vector<int> cycle;
                for (int x = v; x != w; x = parent[static_cast<std::size_t>(x)]) cycle.push_back(x);
                cycle.push_back(w);
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (color[static_cast<std::size_t>(w)] == 0) {
                color[static_cast<std::size_t>(w)] = 1;
                parent[static_cast<std::size_t>(w)] = v;
                stack.emplace_back(w, 0);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> Digraph::find_cycle() const {
    return dfs_cycle(*this, std::vector<bool>(static_cast<std::size_t>(n_), true));
}

bool Digraph::induces_acyclic(std::span<const int> nodes) const {
    std::vector<bool> allowed(static_cast<std::size_t>(n_), false);
    for (int v : nodes) allowed[static_cast<std::size_t>(v)] = true;
    return !dfs_cycle(*this, allowed).has_value();
}

}  // namespace pmd
