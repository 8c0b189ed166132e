#include "pmd/family.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>

namespace pmd {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(what);
}

Decomposition checked(Decomposition d, const std::string& what) {
    auto check = verify_decomposition(d);
    if (!check) throw InternalError(what + ": " + check.message);
    return d;
}

// Two parts per path component, alternating along the path; nullopt unless
// the residual is a linear forest.
std::optional<std::vector<std::vector<Edge>>> path_tail(const Graph& residual) {
    std::vector<std::vector<Edge>> parts(2);
    std::vector<bool> seen(static_cast<std::size_t>(residual.order()), false);
    for (Vertex v = 0; v < residual.order(); ++v) {
        if (degree(residual, v) > 2) return std::nullopt;
    }
    for (Vertex start = 0; start < residual.order(); ++start) {
        if (seen[static_cast<std::size_t>(start)] || degree(residual, start) != 1) continue;
        Vertex prev = -1;
        Vertex cur = start;
        std::size_t slot = 0;
        seen[static_cast<std::size_t>(cur)] = true;
        for (;;) {
            Vertex next = -1;
            for (Vertex w : residual.neighbors(cur)) {
                if (w != prev) next = w;
            }
            if (next < 0) break;
            parts[slot].emplace_back(cur, next);
            slot ^= 1U;
            prev = cur;
            cur = next;
            seen[static_cast<std::size_t>(cur)] = true;
        }
    }
    for (Vertex v = 0; v < residual.order(); ++v) {
        if (!seen[static_cast<std::size_t>(v)] && degree(residual, v) > 0) return std::nullopt;  // a cycle
    }
    std::erase_if(parts, [](const auto& p) { return p.empty(); });
    for (auto& p : parts) std::sort(p.begin(), p.end());
    return parts;
}

// The given leading parts, a path tail, and a solver witness if either fails.
std::pair<Decomposition, bool> prefix_then_paths(const Graph& g, std::vector<std::vector<Edge>> prefix) {
    std::vector<Edge> used;
    bool sane = true;
    for (auto& part : prefix) {
        std::sort(part.begin(), part.end());
        for (const Edge& e : part) {
            if (!g.has_edge(e.u, e.v)) sane = false;
            used.push_back(e);
        }
    }
    std::sort(used.begin(), used.end());
    if (sane && std::adjacent_find(used.begin(), used.end()) == used.end()) {
        if (auto tail = path_tail(remove_edges(g, used))) {
            Decomposition d{g, prefix};
            d.parts.insert(d.parts.end(), tail->begin(), tail->end());
            if (verify_decomposition(d)) return {std::move(d), true};
        }
    }
    SolverOptions opt;
    opt.max_core_vertices = 64;
    auto r = pmd_exact(g, opt);
    return {std::move(*r.decomposition), false};
}

// 1-based names modulo n.
struct Labels {
    int n;
    Vertex u(int i) const { return ((i - 1) % n + n) % n; }
    Vertex v(int i) const { return n + u(i); }
};

FamilyAnswer from_witness(std::string family, int claim, std::pair<Decomposition, bool> witness,
                          const std::string& formula) {
    FamilyAnswer a;
    a.family = std::move(family);
    a.lower = a.upper = claim;
    a.provenance = witness.second ? "formula:" + formula : "formula:" + formula + "+solver";
    a.decomposition = checked(std::move(witness.first), a.family);
    return a;
}

FamilyAnswer solver_witness(std::string family, const Graph& g, int claim, const std::string& formula) {
    SolverOptions opt;
    opt.max_core_vertices = 64;
    auto r = pmd_exact(g, opt);
    FamilyAnswer a;
    a.family = std::move(family);
    a.lower = a.upper = claim;
    a.provenance = "formula:" + formula + "+solver";
    a.decomposition = checked(std::move(*r.decomposition), a.family);
    return a;
}

}  // namespace

FamilyAnswer kn_decomposition(int n) {
    require(n >= 2, "K_n decomposition needs n >= 2");
    Decomposition d{complete(n), {}};
    for (int i = 1; i <= 2 * n - 3; ++i) {
        std::vector<Edge> part;
        for (int r = 1; r <= n; ++r) {
            const int s = i + 2 - r;
            if (r < s && s <= n) part.emplace_back(r - 1, s - 1);
        }
        std::sort(part.begin(), part.end());
        d.parts.push_back(std::move(part));
    }
    FamilyAnswer a;
    a.family = "kn:" + std::to_string(n);
    a.lower = a.upper = 2 * n - 3;
    a.provenance = "formula:kn-antidiagonal";
    a.decomposition = checked(std::move(d), a.family);
    return a;
}

FamilyAnswer kmn_decomposition(int m, int n) {
    require(m >= 1 && n >= 1, "K_{m,n} decomposition needs m, n >= 1");
    Decomposition d{complete_bipartite(m, n), {}};
    for (int k = 1; k < m + n; ++k) {
        std::vector<Edge> part;
        for (int i = 1; i <= m; ++i) {
            const int j = k + 1 - i;
            if (j >= 1 && j <= n) part.emplace_back(i - 1, m + j - 1);
        }
        std::sort(part.begin(), part.end());
        d.parts.push_back(std::move(part));
    }
    FamilyAnswer a;
    a.family = "kmn:" + std::to_string(m) + "," + std::to_string(n);
    a.lower = a.upper = m + n - 1;
    a.provenance = "formula:kmn-antidiagonal";
    a.decomposition = checked(std::move(d), a.family);
    return a;
}

Decomposition multipartite_upper_decomposition(std::vector<int> sizes) {
    const auto mp = complete_multipartite(std::move(sizes));
    const int parts = static_cast<int>(mp.sizes.size());
    // Position in the labeling C_m, C_1, ..., C_{m-1} of every vertex.
    std::vector<Vertex> order;
    for (int x = 0; x < mp.sizes.back(); ++x) order.push_back(mp.first.back() + x);
    for (int c = 0; c + 1 < parts; ++c) {
        for (int x = 0; x < mp.sizes[static_cast<std::size_t>(c)]; ++x) order.push_back(mp.first[static_cast<std::size_t>(c)] + x);
    }
    const int total = mp.graph.order();
    Decomposition d{mp.graph, {}};
    for (int i = 1; i <= 2 * total - 3; ++i) {
        std::vector<Edge> part;
        for (int r = 1; r <= total; ++r) {
            const int s = i + 2 - r;
            if (r < s && s <= total) {
                const Edge e(order[static_cast<std::size_t>(r - 1)], order[static_cast<std::size_t>(s - 1)]);
                if (mp.graph.has_edge(e.u, e.v)) part.push_back(e);
            }
        }
        if (part.empty()) continue;
        std::sort(part.begin(), part.end());
        d.parts.push_back(std::move(part));
    }
    return checked(std::move(d), "multipartite restriction");
}

FamilyAnswer multipartite_bounds(std::vector<int> sizes) {
    const auto mp = complete_multipartite(sizes);
    const int total = mp.graph.order();
    const int m = static_cast<int>(mp.sizes.size());
    const int nm = mp.sizes[static_cast<std::size_t>(m - 1)];
    const int nm1 = mp.sizes[static_cast<std::size_t>(m - 2)];
    FamilyAnswer a;
    a.family = "kpartite:";
    for (std::size_t i = 0; i < mp.sizes.size(); ++i) a.family += (i ? "," : "") + std::to_string(mp.sizes[i]);
    a.lower = std::max({(3 * total + 1) / 2 - nm - 1, total + (m + 1) / 2 - 2, max_degree(mp.graph)});
    a.upper = 2 * total - nm1 - nm - 1;
    a.provenance = "bound:multipartite-ceiled+formula:multipartite-restriction";
    a.decomposition = multipartite_upper_decomposition(std::move(sizes));
    if (a.decomposition->size() != a.upper) {
        throw InternalError("multipartite restriction has " + std::to_string(a.decomposition->size()) + " parts, expected " +
                            std::to_string(a.upper));
    }
    return a;
}

Decomposition forest_decomposition(const Graph& g) {
    require(is_forest(g), "forest decomposition needs a forest");
    std::map<Edge, int> color;
    std::vector<int> parent_color(static_cast<std::size_t>(g.order()), -1);
    std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
    int colors = 0;
    for (Vertex root = 0; root < g.order(); ++root) {
        if (seen[static_cast<std::size_t>(root)]) continue;
        std::queue<Vertex> q;
        q.push(root);
        seen[static_cast<std::size_t>(root)] = true;
        while (!q.empty()) {
            const Vertex v = q.front();
            q.pop();
            int c = 0;
            for (Vertex w : g.neighbors(v)) {
                if (seen[static_cast<std::size_t>(w)]) continue;
                if (c == parent_color[static_cast<std::size_t>(v)]) ++c;
                color[Edge(v, w)] = c;
                colors = std::max(colors, c + 1);
                parent_color[static_cast<std::size_t>(w)] = c;
                seen[static_cast<std::size_t>(w)] = true;
                q.push(w);
                ++c;
            }
        }
    }
    Decomposition d{g, std::vector<std::vector<Edge>>(static_cast<std::size_t>(colors))};
    for (const auto& [e, c] : color) d.parts[static_cast<std::size_t>(c)].push_back(e);
    return checked(std::move(d), "forest coloring");
}

FamilyAnswer tree_decomposition(const Graph& g) {
    require(g.order() >= 1 && is_forest(g) && is_connected(g), "tree decomposition needs a tree");
    FamilyAnswer a;
    a.family = "tree";
    a.lower = a.upper = g.empty() ? 0 : max_degree(g);
    a.provenance = "formula:tree-edge-coloring";
    a.decomposition = forest_decomposition(g);
    return a;
}

FamilyAnswer cycle_decomposition(int n) {
    const Graph g = cycle(n);
    std::vector<Edge> first;
    for (int i = 0; 2 * i + 1 <= n - 2; ++i) first.emplace_back(2 * i, 2 * i + 1);
    return from_witness("cycle:" + std::to_string(n), 3, prefix_then_paths(g, {first}), "cycle-gap");
}

FamilyAnswer cl_decomposition(int n) {
    const Graph g = circular_ladder(n);
    const std::string name = "cl:" + std::to_string(n);
    if (n == 4) return solver_witness(name, g, 5, "ladder");
    const Labels L{n};
    std::vector<Edge> m1;
    std::vector<Edge> m2;
    if (n % 2 == 1) {
        for (int i = 1; i <= n - 2; i += 2) m1.emplace_back(L.u(i), L.v(i));
        m1.emplace_back(L.v(n - 1), L.v(n));
        for (int i = 2; i <= n - 1; i += 2) m2.emplace_back(L.u(i), L.v(i));
        m2.emplace_back(L.u(n), L.u(1));
    } else {
        for (int i = 1; i <= n - 1; i += 2) m1.emplace_back(L.u(i), L.v(i));
        for (int i = 2; i <= n - 2; i += 2) m2.emplace_back(L.u(i), L.v(i));
        m2.emplace_back(L.v(n - 1), L.v(n));
        m2.emplace_back(L.u(n), L.u(1));
    }
    return from_witness(name, 4, prefix_then_paths(g, {m1, m2}), "ladder");
}

FamilyAnswer mobius_decomposition(int n) {
    const Graph g = mobius_ladder(n);
    const Labels L{n};
    std::vector<Edge> n1;
    std::vector<Edge> n2;
    if (n % 2 == 1) {
        for (int i = 2; i <= n - 1; i += 2) n1.emplace_back(L.u(i), L.v(i));
        n1.emplace_back(L.u(1), L.v(n));
        // odd spokes, ending with u_n v_n
        for (int i = 1; i <= n; i += 2) n2.emplace_back(L.u(i), L.v(i));
    } else {
        for (int i = 2; i <= n - 2; i += 2) n1.emplace_back(L.u(i), L.v(i));
        n1.emplace_back(L.u(1), L.v(n));
        n1.emplace_back(L.u(n - 1), L.u(n));
        for (int i = 3; i <= n - 1; i += 2) n2.emplace_back(L.u(i), L.v(i));
        n2.emplace_back(L.u(n), L.v(1));
        n2.emplace_back(L.u(1), L.u(2));
    }
    // M_3 is K_{3,3}, whose value is 5.
    return from_witness("mob:" + std::to_string(n), n == 3 ? 5 : 4, prefix_then_paths(g, {n1, n2}), "mobius");
}

int gp_claimed_value(int n, int k) {
    require(n >= 3 && k >= 1 && 2 * k <= n, "GP(n,k) needs n >= 3 and 1 <= k <= n/2");
    if (k == 1) return n == 4 ? 5 : 4;
    if (n == 2 * k) return k == 3 ? 4 : 3;
    return 4;
}

int gp_literal_value(int n, int k) {
    require(n >= 3 && k >= 1 && 2 * k <= n, "GP(n,k) needs n >= 3 and 1 <= k <= n/2");
    if (n == 2 * k && k != 3) return 3;
    if (n == 8 && k == 1) return 5;
    return 4;
}

FamilyAnswer gp_decomposition(int n, int k) {
    const int claim = gp_claimed_value(n, k);
    const std::string name = "gp:" + std::to_string(n) + "," + std::to_string(k);
    if (k == 1) {
        auto a = cl_decomposition(n);
        a.family = name;
        return a;
    }
    const Graph g = generalized_petersen(n, k);
    const Labels L{n};
    if (n == 2 * k) {
        if (k == 3) return solver_witness(name, g, claim, "gp-half");
        std::vector<Edge> m;
        if (k % 2 == 0) {
            for (int i = 1; i <= k / 2; ++i) m.emplace_back(L.u(2 * i - 1), L.u(2 * i));
            for (int i = k + 1; i <= n; ++i) m.emplace_back(L.u(i), L.v(i));
        } else {
            m = {Edge(L.u(1), L.v(1)), Edge(L.u(2), L.u(3)), Edge(L.u(4), L.v(4))};
            for (int i = 3; i <= k; ++i) m.emplace_back(L.u(2 * i - 1), L.u(2 * i));
        }
        return from_witness(name, claim, prefix_then_paths(g, {m}), "gp-half");
    }

    std::vector<Edge> m1;
    std::vector<Edge> m2;
    const int d = std::gcd(n, k);
    if (d == 1) {
        m1.emplace_back(L.v(1), L.v(k + 1));
        for (int i = 1; i <= k / 2; ++i) m1.emplace_back(L.u(2 * i), L.v(2 * i));
        for (int i = 1; i <= (n - k) / 2; ++i) m1.emplace_back(L.u(k + 2 * i), L.v(k + 2 * i));
        m2.emplace_back(L.u(1), L.u(2));
        for (int i = 1; 2 * i < k; ++i) m2.emplace_back(L.u(2 * i + 1), L.v(2 * i + 1));
        for (int i = 1; i <= (n - k + 1) / 2; ++i) m2.emplace_back(L.u(k + 2 * i - 1), L.v(k + 2 * i - 1));
        return from_witness(name, claim, prefix_then_paths(g, {m1, m2}), "gp-coprime");
    }
    for (int i = 1; i <= d; ++i) m1.emplace_back(L.v(i), L.v(i + k));
    for (int i = 1; i <= (k - d + 1) / 2; ++i) m1.emplace_back(L.u(d + 2 * i - 1), L.v(d + 2 * i - 1));
    for (int i = 1; i <= (n - k - d + 1) / 2; ++i) m1.emplace_back(L.u(d + k + 2 * i - 1), L.v(d + k + 2 * i - 1));
    for (int i = 1; i <= d; ++i) m2.emplace_back(L.u(i), L.v(i));
    for (int i = 1; i <= (k - d) / 2; ++i) m2.emplace_back(L.u(d + 2 * i), L.v(d + 2 * i));
    for (int i = 1; i <= d - 2; ++i) m2.emplace_back(L.u(k + i), L.v(k + i));
    m2.emplace_back(L.u(d + k - 1), L.u(d + k));
    for (int i = 1; i <= (n - k - d) / 2; ++i) m2.emplace_back(L.u(d + k + 2 * i), L.v(d + k + 2 * i));
    return from_witness(name, claim, prefix_then_paths(g, {m1, m2}), "gp-inner-cycles");
}

FamilyAnswer hypercube_decomposition(int n) {
    const Graph g = hypercube(n);
    const int top = 1 << (n - 1);  // e_n
    auto coset = [&](const Edge& e) {
        const int dir = e.u ^ e.v;
        std::vector<Edge> out;
        for (int x = 0; x < (1 << n); ++x) {
            if ((x & dir) || (std::popcount(static_cast<unsigned>(x)) & 1)) continue;
            out.emplace_back(e.u ^ x, e.v ^ x);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<Edge> lower_copy;
    std::vector<Edge> upper_copy;
    std::vector<Edge> cross;
    for (const Edge& e : g.edges()) {
        if ((e.u ^ e.v) == top) {
            cross.push_back(e);
        } else {
            ((e.u & top) ? upper_copy : lower_copy).push_back(e);
        }
    }
    std::vector<std::vector<Edge>> parts;
    std::vector<Edge> taken;
    auto consider = [&](const std::vector<Edge>& pool) {
        for (const Edge& e : pool) {
            if (static_cast<int>(parts.size()) == 2 * n - 2) return;
            auto c = coset(e);
            const bool clash = std::any_of(c.begin(), c.end(), [&](const Edge& f) {
                return std::find(taken.begin(), taken.end(), f) != taken.end();
            });
            if (clash) continue;
            taken.insert(taken.end(), c.begin(), c.end());
            parts.push_back(std::move(c));
        }
    };
    consider(lower_copy);
    consider(upper_copy);
    if (static_cast<int>(parts.size()) != 2 * n - 2 || taken.size() != lower_copy.size() + upper_copy.size()) {
        throw InternalError("coset representatives for Q_" + std::to_string(n) + " not found");
    }
    for (const auto& part : parts) {
        const Graph support = induced_subgraph(g, [&] {
                                  std::vector<Vertex> vs;
                                  for (const Edge& e : part) vs.insert(vs.end(), {e.u, e.v});
                                  std::sort(vs.begin(), vs.end());
                                  return vs;
                              }())
                                  .graph;
        if (support.size() != static_cast<int>(part.size())) {
            throw InternalError("a coset of Q_" + std::to_string(n) + " does not induce a matching");
        }
    }
    parts.push_back(cross);
    FamilyAnswer a;
    a.family = "q:" + std::to_string(n);
    a.lower = n;
    a.upper = 2 * n - 1;
    a.upper_only = true;
    a.provenance = "formula:hypercube-cosets";
    a.decomposition = checked(Decomposition{g, std::move(parts)}, a.family);
    return a;
}

SubdivisionMatching subdivision_positive_matching(const Graph& g, std::span<const int> stub_edge) {
    require(is_connected(g) && max_degree(g) >= 3, "subdivision matching needs a connected graph with max degree >= 3");
    require(stub_edge.empty() || static_cast<int>(stub_edge.size()) == g.order(), "one stub edge per vertex");
    SubdivisionMatching out;
    out.subdivision = subdivide_by_five(g);
    const auto& sub = out.subdivision;
    for (const auto& s : sub.edges) out.matching.push_back(s.middle);
    for (Vertex v = 0; v < g.order(); ++v) {
        int t = -1;
        if (!stub_edge.empty()) {
            t = stub_edge[static_cast<std::size_t>(v)];
        } else {
            for (int k = 0; k < g.size() && t < 0; ++k) {
                if (g.edges()[static_cast<std::size_t>(k)].touches(v)) t = k;
            }
        }
        require(t >= 0 && t < g.size() && g.edges()[static_cast<std::size_t>(t)].touches(v),
                "stub edge " + std::to_string(t) + " does not touch vertex " + std::to_string(v));
        const auto& s = sub.edges[static_cast<std::size_t>(t)];
        out.matching.push_back(v == s.original.u ? s.path[0] : s.path[4]);
    }
    std::sort(out.matching.begin(), out.matching.end());
    const Graph& h = sub.graph;
    if (!is_positive(h, Matching(h, out.matching))) throw InternalError("subdivision matching is not positive");
    const Graph rest = remove_edges(h, out.matching);
    if (max_degree(rest) > max_degree(h) - 1) throw InternalError("subdivision matching misses a vertex of maximum degree");
    auto tail = forest_decomposition(rest);
    out.decomposition = Decomposition{h, {out.matching}};
    out.decomposition.parts.insert(out.decomposition.parts.end(), tail.parts.begin(), tail.parts.end());
    out.decomposition = checked(std::move(out.decomposition), "subdivision decomposition");
    return out;
}

FamilyAnswer cactus_pmd(const Graph& g, const SolverOptions& options) {
    require(is_cactus(g), "cactus_pmd needs a cactus");
    FamilyAnswer a;
    a.family = "cactus";
    const int delta = g.empty() ? 0 : max_degree(g);
    const bool is_cycle = g.order() >= 3 && regular_degree(g) == 2;
    a.lower = delta;
    a.upper = g.empty() ? 0 : delta + 1;
    a.provenance = "bound:cactus";
    if (is_cycle) {
        a.lower = a.upper = 3;
        a.provenance = "formula:cycle";
    } else if (!g.empty() && is_triangle_free(g)) {
        a.upper = delta;
        a.provenance = "formula:cactus-triangle-free";
    }
    try {
        auto r = pmd_exact(g, options);
        if (r.exact()) {
            a.decomposition = std::move(r.decomposition);
            a.provenance += "+solver";
        }
    } catch (const CapExceeded&) {
        // interval only
    }
    return a;
}

FamilyAnswer family_answer(const FamilySpec& spec, const SolverOptions& options) {
    const auto& p = spec.params;
    switch (spec.family) {
        case Family::complete: return kn_decomposition(p.at(0));
        case Family::complete_bipartite: return kmn_decomposition(p.at(0), p.at(1));
        case Family::complete_multipartite: {
            auto a = multipartite_bounds(p);
            a.decomposition = multipartite_upper_decomposition(p);
            return a;
        }
        case Family::path:
        case Family::star:
        case Family::tree_random: return tree_decomposition(build_family(spec));
        case Family::cycle: return cycle_decomposition(p.at(0));
        case Family::circular_ladder: return cl_decomposition(p.at(0));
        case Family::mobius_ladder: return mobius_decomposition(p.at(0));
        case Family::generalized_petersen: return gp_decomposition(p.at(0), p.at(1));
        case Family::hypercube: return hypercube_decomposition(p.at(0));
        case Family::cactus_random: return cactus_pmd(build_family(spec), options);
        case Family::subdivision5: {
            auto sm = subdivision_positive_matching(build_family(spec.inner.at(0)));
            FamilyAnswer a;
            a.family = "sub5";
            a.lower = max_degree(sm.subdivision.graph);
            a.upper = sm.decomposition.size();
            a.decomposition = std::move(sm.decomposition);
            a.provenance = "formula:subdivision";
            return a;
        }
        case Family::corona: {
            const Graph g = build_family(spec);
            const int delta = max_degree(g);
            auto base = family_answer(spec.inner.at(0), options);
            FamilyAnswer a;
            a.family = "corona";
            a.lower = std::max(base.lower, delta);
            a.upper = std::max(base.upper, delta);
            a.upper_only = base.upper_only;
            a.provenance = "formula:pendant-core(" + base.provenance + ")";
            const auto red = reduce_pendants(g);
            const Graph core = build_family(spec.inner.at(0));
            const bool same_core = base.decomposition && red.core.size() == core.size() &&
                std::ranges::all_of(core.edges(), [&](const Edge& e) { return red.core.has_edge(e.u, e.v); });
            if (same_core) {
                a.decomposition = checked(reattach_pendants(g, red, base.decomposition->parts), "corona decomposition");
            }
            return a;
        }
    }
    throw Error("unhandled family");
}

}  // namespace pmd
