#include "pmd/positive_matching.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace pmd {

Matching::Matching(const Graph& host, std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    std::vector<bool> used(static_cast<std::size_t>(host.order()), false);
    for (const Edge& e : edges_) {
        if (!host.has_edge(e.u, e.v)) throw Error("matching edge " + to_string(e) + " is not in the host graph");
        if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) {
            throw Error("matching edges share a vertex at " + to_string(e));
        }
        used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = true;
    }
}

std::vector<Vertex> Matching::vertices() const {
    std::vector<Vertex> vs;
    for (const Edge& e : edges_) {
        vs.push_back(e.u);
        vs.push_back(e.v);
    }
    std::sort(vs.begin(), vs.end());
    return vs;
}

bool Matching::contains(const Edge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

Vertex Matching::partner(Vertex v) const {
    for (const Edge& e : edges_) {
        if (e.touches(v)) return e.other(v);
    }
    return -1;
}

std::string AlternatingClosedWalk::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i > 0) out += '-';
        out += std::to_string(vertices[i]);
    }
    return out;
}

namespace {

// Removal sequence of pendant peeling over G[V(edges)]; stops early when no
// pendant matched edge is left.
std::vector<Edge> peel_sequence(const Graph& host, std::span<const Edge> edges) {
    std::vector<Edge> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> deg(static_cast<std::size_t>(host.order()), -1);
    for (const Edge& e : sorted) deg[static_cast<std::size_t>(e.u)] = deg[static_cast<std::size_t>(e.v)] = 0;
    for (const Edge& e : sorted) {
        for (Vertex w : {e.u, e.v}) {
            for (Vertex z : host.neighbors(w)) {
                if (deg[static_cast<std::size_t>(z)] >= 0) ++deg[static_cast<std::size_t>(w)];
            }
        }
    }
    std::vector<bool> alive(sorted.size(), true);
    std::vector<Edge> removed;
    for (std::size_t round = 0; round < sorted.size(); ++round) {
        std::size_t pick = sorted.size();
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (alive[i] && (deg[static_cast<std::size_t>(sorted[i].u)] == 1 ||
                             deg[static_cast<std::size_t>(sorted[i].v)] == 1)) {
                pick = i;
                break;
            }
        }
        if (pick == sorted.size()) break;
        alive[pick] = false;
        removed.push_back(sorted[pick]);
        for (Vertex w : {sorted[pick].u, sorted[pick].v}) {
            deg[static_cast<std::size_t>(w)] = -1;
            for (Vertex z : host.neighbors(w)) {
                if (deg[static_cast<std::size_t>(z)] > 0) --deg[static_cast<std::size_t>(z)];
            }
        }
    }
    return removed;
}

}  // namespace

std::optional<PeelOrder> peel_order(const Graph& host, const Matching& m) {
    auto removed = peel_sequence(host, m.edges());
    if (static_cast<int>(removed.size()) != m.size()) return std::nullopt;
    std::reverse(removed.begin(), removed.end());
    return PeelOrder{std::move(removed)};
}

bool is_positive(const Graph& host, const Matching& m) {
    return peel_order(host, m).has_value();
}

bool is_positive_edges(const Graph& host, std::span<const Edge> edges) {
    return peel_sequence(host, edges).size() == edges.size();
}

bool is_valid_peel_order(const Graph& host, std::span<const Edge> order) {
    std::vector<bool> in(static_cast<std::size_t>(host.order()), false);
    for (const Edge& e : order) {
        if (!host.has_edge(e.u, e.v)) return false;
        if (in[static_cast<std::size_t>(e.u)] || in[static_cast<std::size_t>(e.v)]) return false;
        in[static_cast<std::size_t>(e.u)] = in[static_cast<std::size_t>(e.v)] = true;
        auto induced_degree = [&](Vertex w) {
            int d = 0;
            for (Vertex z : host.neighbors(w)) d += in[static_cast<std::size_t>(z)] ? 1 : 0;
            return d;
        };
        if (induced_degree(e.u) != 1 && induced_degree(e.v) != 1) return false;
    }
    return true;
}

namespace {

AlternatingClosedWalk canonical_walk(std::vector<Vertex> cyc) {
    // cyc = u_1 v_1 ... u_r v_r without the closing vertex; pairs are matched.
    const std::size_t len = cyc.size();
    std::vector<Vertex> best;
    auto consider = [&](const std::vector<Vertex>& seq) {
        for (std::size_t shift = 0; shift < len; shift += 2) {
            std::vector<Vertex> rot(len);
            for (std::size_t i = 0; i < len; ++i) rot[i] = seq[(i + shift) % len];
            if (best.empty() || rot < best) best = rot;
        }
    };
    consider(cyc);
    std::vector<Vertex> rev(cyc.rbegin(), cyc.rend());
    consider(rev);
    AlternatingClosedWalk walk;
    walk.vertices = best;
    walk.vertices.push_back(best.front());
    for (std::size_t i = 0; i < len; ++i) walk.in_matching.push_back(i % 2 == 0);
    return walk;
}

}  // namespace

std::optional<AlternatingClosedWalk> find_alternating_closed_walk(const Graph& host, const Matching& m) {
    // Node 2*i + s: matched edge i traversed towards endpoint s (0 = u, 1 = v).
    const auto edges = m.edges();
    std::vector<int> edge_of(static_cast<std::size_t>(host.order()), -1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edge_of[static_cast<std::size_t>(edges[i].u)] = static_cast<int>(i);
        edge_of[static_cast<std::size_t>(edges[i].v)] = static_cast<int>(i);
    }
    auto endpoint = [&](int node) {
        const Edge& e = edges[static_cast<std::size_t>(node / 2)];
        return node % 2 == 0 ? e.u : e.v;
    };
    std::vector<std::pair<int, int>> arcs;
    for (int node = 0; node < 2 * m.size(); ++node) {
        Vertex x = endpoint(node);
        for (Vertex z : host.neighbors(x)) {
            int f = edge_of[static_cast<std::size_t>(z)];
            if (f < 0 || f == node / 2) continue;  // outside V(M), or the matched edge itself
            const Edge& fe = edges[static_cast<std::size_t>(f)];
            int exit = fe.u == z ? 1 : 0;  // leave f through its other endpoint
            arcs.emplace_back(node, 2 * f + exit);
        }
    }
    Digraph d(2 * m.size(), std::move(arcs));
    auto cycle = d.find_cycle();
    if (!cycle) return std::nullopt;
    std::vector<Vertex> seq;
    for (int node : *cycle) {
        Vertex exit = endpoint(node);
        seq.push_back(edges[static_cast<std::size_t>(node / 2)].other(exit));
        seq.push_back(exit);
    }
    auto walk = canonical_walk(std::move(seq));
    if (!is_alternating_closed_walk(host, m, walk)) throw Error("internal: extracted walk is not alternating");
    return walk;
}

bool is_alternating_closed_walk(const Graph& host, const Matching& m, const AlternatingClosedWalk& walk) {
    const auto& vs = walk.vertices;
    if (vs.size() < 5 || walk.in_matching.size() + 1 != vs.size()) return false;
    if (vs.front() != vs.back() || walk.length() % 2 != 0) return false;
    std::vector<bool> in_vm(static_cast<std::size_t>(host.order()), false);
    for (Vertex v : m.vertices()) in_vm[static_cast<std::size_t>(v)] = true;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        Vertex a = vs[i];
        Vertex b = vs[i + 1];
        if (a < 0 || a >= host.order() || !in_vm[static_cast<std::size_t>(a)]) return false;
        if (!host.has_edge(a, b)) return false;
        bool matched = m.contains(Edge(a, b));
        if (matched != walk.in_matching[i]) return false;
        if (matched != (i % 2 == 0)) return false;
    }
    return true;
}

long long certificate_magnitude_bound(int k) {
    return 3LL * k;
}

WeightCertificate build_weight_certificate(const Graph& host, const Matching& m, const PeelOrder& order) {
    {
        std::vector<Edge> sorted = order.edges;
        std::sort(sorted.begin(), sorted.end());
        if (!std::equal(sorted.begin(), sorted.end(), m.edges().begin(), m.edges().end())) {
            throw Error("peel order is not a permutation of the matching");
        }
    }
    WeightCertificate cert;
    std::vector<bool> in(static_cast<std::size_t>(host.order()), false);
    long long bound = 1;
    for (std::size_t i = 0; i < order.edges.size(); ++i) {
        const Edge& e = order.edges[i];
        in[static_cast<std::size_t>(e.u)] = in[static_cast<std::size_t>(e.v)] = true;
        auto induced_degree = [&](Vertex w) {
            int d = 0;
            for (Vertex z : host.neighbors(w)) d += in[static_cast<std::size_t>(z)] ? 1 : 0;
            return d;
        };
        Vertex p;
        if (induced_degree(e.u) == 1) {
            p = e.u;
        } else if (induced_degree(e.v) == 1) {
            p = e.v;
        } else {
            throw Error("peel order invalid: edge " + to_string(e) + " is not pendant at step " + std::to_string(i + 1));
        }
        Vertex q = e.other(p);
        cert.weights[q] = -(bound + 1);
        cert.weights[p] = bound + 2;
        bound = bound + 3;
    }
    return cert;
}

bool verify_certificate(const Graph& host, const Matching& m, const WeightCertificate& c) {
    auto vs = m.vertices();
    std::vector<bool> in_vm(static_cast<std::size_t>(host.order()), false);
    for (Vertex v : vs) {
        if (!c.weights.contains(v)) throw Error("certificate has no weight for vertex " + std::to_string(v));
        in_vm[static_cast<std::size_t>(v)] = true;
    }
    for (const Edge& e : host.edges()) {
        if (!in_vm[static_cast<std::size_t>(e.u)] || !in_vm[static_cast<std::size_t>(e.v)]) continue;
        long long sum = c.weights.at(e.u) + c.weights.at(e.v);
        if (m.contains(e) ? sum <= 0 : sum >= 0) return false;
    }
    return true;
}

std::optional<WeightCertificate> search_weight_certificate(const Graph& host, const Matching& m, long long bound) {
    // Vertex order: induced components of G[V(M)], BFS over matched edges,
    // both endpoints of an edge adjacent in the order.
    auto vs = m.vertices();
    auto sub = induced_subgraph(host, vs);
    const Graph& h = sub.graph;
    const int n = h.order();
    std::vector<Vertex> partner(static_cast<std::size_t>(n), -1);
    for (const Edge& e : m.edges()) {
        int a = sub.old_to_new[static_cast<std::size_t>(e.u)];
        int b = sub.old_to_new[static_cast<std::size_t>(e.v)];
        partner[static_cast<std::size_t>(a)] = b;
        partner[static_cast<std::size_t>(b)] = a;
    }
    std::vector<long long> weight(static_cast<std::size_t>(n), 0);
    std::vector<long long> lo(static_cast<std::size_t>(n), -bound);
    std::vector<long long> hi(static_cast<std::size_t>(n), bound);

    for (const auto& comp : connected_components(h)) {
        std::vector<Vertex> order;
        std::vector<bool> placed(static_cast<std::size_t>(n), false);
        for (std::size_t head = 0; order.size() < comp.size();) {
            if (head == order.size()) {
                Vertex s = comp.front();
                for (Vertex v : comp) {
                    if (!placed[static_cast<std::size_t>(v)]) {
                        s = v;
                        break;
                    }
                }
                for (Vertex w : {s, partner[static_cast<std::size_t>(s)]}) {
                    placed[static_cast<std::size_t>(w)] = true;
                    order.push_back(w);
                }
                continue;
            }
            for (Vertex z : h.neighbors(order[head])) {
                if (placed[static_cast<std::size_t>(z)]) continue;
                for (Vertex w : {z, partner[static_cast<std::size_t>(z)]}) {
                    placed[static_cast<std::size_t>(w)] = true;
                    order.push_back(w);
                }
            }
            ++head;
        }

        // Depth-first over `order` with forward checking on the bounds.
        struct Saved {
            Vertex v;
            long long lo, hi;
        };
        std::vector<Saved> trail;
        std::function<bool(std::size_t)> assign = [&](std::size_t depth) -> bool {
            if (depth == order.size()) return true;
            Vertex v = order[depth];
            for (long long w = lo[static_cast<std::size_t>(v)]; w <= hi[static_cast<std::size_t>(v)]; ++w) {
                weight[static_cast<std::size_t>(v)] = w;
                const std::size_t mark = trail.size();
                bool ok = true;
                for (std::size_t later = depth + 1; later < order.size() && ok; ++later) {
                    Vertex z = order[later];
                    if (!h.has_edge(v, z)) continue;
                    trail.push_back({z, lo[static_cast<std::size_t>(z)], hi[static_cast<std::size_t>(z)]});
                    if (partner[static_cast<std::size_t>(v)] == z) {
                        lo[static_cast<std::size_t>(z)] = std::max(lo[static_cast<std::size_t>(z)], 1 - w);
                    } else {
                        hi[static_cast<std::size_t>(z)] = std::min(hi[static_cast<std::size_t>(z)], -1 - w);
                    }
                    ok = lo[static_cast<std::size_t>(z)] <= hi[static_cast<std::size_t>(z)];
                }
                if (ok && assign(depth + 1)) return true;
                while (trail.size() > mark) {
                    auto s = trail.back();
                    trail.pop_back();
                    lo[static_cast<std::size_t>(s.v)] = s.lo;
                    hi[static_cast<std::size_t>(s.v)] = s.hi;
                }
            }
            return false;
        };
        if (!assign(0)) return std::nullopt;
    }

    WeightCertificate cert;
    for (int i = 0; i < n; ++i) cert.weights[sub.new_to_old[static_cast<std::size_t>(i)]] = weight[static_cast<std::size_t>(i)];
    return cert;
}

Matching max_positive_matching(const Graph& host, int cap) {
    if (host.order() > cap) {
        throw CapExceeded("max_positive_matching: " + std::to_string(host.order()) + " vertices exceed cap " +
                          std::to_string(cap) + " (the problem is NP-complete)");
    }
    const auto edges = host.edges();
    std::vector<Edge> current;
    std::vector<Edge> best;
    std::vector<bool> used(static_cast<std::size_t>(host.order()), false);
    int free_vertices = non_isolated_count(host);
    std::function<void(std::size_t)> grow = [&](std::size_t next) {
        if (current.size() > best.size()) best = current;
        const auto room = static_cast<std::size_t>(free_vertices / 2);
        if (current.size() + std::min(room, edges.size() - next) <= best.size()) return;
        for (std::size_t i = next; i < edges.size(); ++i) {
            const Edge& e = edges[i];
            if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) continue;
            current.push_back(e);
            if (is_positive_edges(host, current)) {
                used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = true;
                free_vertices -= 2;
                grow(i + 1);
                free_vertices += 2;
                used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = false;
            }
            current.pop_back();
            if (current.size() + std::min(static_cast<std::size_t>(free_vertices / 2), edges.size() - i - 1) <=
                best.size()) {
                return;
            }
        }
    };
    grow(0);
    return Matching(host, best);
}

Bipartition align_to_matching(const Graph& host, const Bipartition& b, const Matching& m) {
    if (b.x_side.size() != b.y_side.size() || static_cast<std::size_t>(m.size()) != b.x_side.size()) {
        throw Error("matching is not perfect across the bipartition");
    }
    std::vector<bool> is_y(static_cast<std::size_t>(host.order()), false);
    for (Vertex y : b.y_side) is_y[static_cast<std::size_t>(y)] = true;
    Bipartition aligned;
    aligned.x_side = b.x_side;
    for (Vertex x : b.x_side) {
        Vertex y = m.partner(x);
        if (y < 0 || !is_y[static_cast<std::size_t>(y)]) {
            throw Error("matching is not perfect across the bipartition");
        }
        aligned.y_side.push_back(y);
    }
    return aligned;
}

Digraph matching_digraph(const Graph& host, const Bipartition& b, const Matching& m) {
    const std::size_t n = b.x_side.size();
    if (b.y_side.size() != n || static_cast<std::size_t>(m.size()) != n) {
        throw Error("matching_digraph needs a perfect matching across equal sides");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!m.contains(Edge(b.x_side[i], b.y_side[i]))) {
            throw Error("matching is not aligned with the bipartition; call align_to_matching first");
        }
    }
    std::vector<std::pair<int, int>> arcs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && host.has_edge(b.x_side[i], b.y_side[j])) {
                arcs.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return Digraph(static_cast<int>(n), std::move(arcs));
}

namespace {

MatchingSplit greedy_split(const Graph& host, const Matching& m) {
    MatchingSplit out;
    std::vector<Edge> rest(m.edges().begin(), m.edges().end());
    while (!rest.empty()) {
        std::vector<Edge> part;
        std::vector<Edge> left;
        for (const Edge& e : rest) {
            part.push_back(e);
            if (!is_positive_edges(host, part)) {
                part.pop_back();
                left.push_back(e);
            }
        }
        out.parts.emplace_back(host, std::move(part));
        rest = std::move(left);
    }
    out.minimum = out.parts.size() <= 1;
    return out;
}

}  // namespace

MatchingSplit split_matching_min_positive(const Graph& host, const Matching& m, SplitMode mode, int exact_cap) {
    if (mode == SplitMode::exact && m.size() > exact_cap) {
        throw CapExceeded("split_matching_min_positive: " + std::to_string(m.size()) +
                          " matched edges exceed exact cap " + std::to_string(exact_cap));
    }
    if (m.empty()) return MatchingSplit{{}, true};
    if (mode == SplitMode::greedy || (mode == SplitMode::automatic && m.size() > exact_cap)) {
        return greedy_split(host, m);
    }
    const auto edges = m.edges();
    for (int k = 1; k <= m.size(); ++k) {
        std::vector<std::vector<Edge>> classes;
        std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
            if (i == edges.size()) return true;
            for (std::size_t c = 0; c <= classes.size() && c < static_cast<std::size_t>(k); ++c) {
                if (c == classes.size()) classes.emplace_back();
                classes[c].push_back(edges[i]);
                if (is_positive_edges(host, classes[c]) && place(i + 1)) return true;
                classes[c].pop_back();
                if (classes[c].empty()) {
                    classes.pop_back();
                    break;  // opening a second fresh class is symmetric
                }
            }
            return false;
        };
        if (place(0)) {
            MatchingSplit out;
            for (auto& c : classes) out.parts.emplace_back(host, std::move(c));
            out.minimum = true;
            return out;
        }
    }
    throw Error("internal: singleton split must always succeed");
}

}  // namespace pmd
