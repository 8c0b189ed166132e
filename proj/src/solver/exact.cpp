#include <algorithm>
#include <array>
#include <bit>
#include <unordered_map>

#include "edge_bits.hpp"
#include "pmd/solver.hpp"

namespace pmd {

namespace {

using detail::EdgeBits;
using detail::EdgeBitsHash;
using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr Mask bit(int v) { return Mask{1} << v; }

struct BudgetExhausted {};

struct Candidate {
    EdgeBits part;
    int residual_delta = 0;
    int size = 0;
};

// Branch and bound on an instance with at most 64 vertices and 256 edges.
// Every level takes a maximal positive matching of the residual that covers
// all vertices whose degree equals the number of levels left.
class Search {
public:
    Search(const Graph& g, const SolverOptions& opt) : n_(g.order()), opt_(opt), start_(Clock::now()) {
        for (auto& row : eid_) row.fill(-1);
        for (const Edge& e : g.edges()) {
            const int k = static_cast<int>(eu_.size());
            eu_.push_back(e.u);
            ev_.push_back(e.v);
            eid_[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = static_cast<std::int16_t>(k);
            eid_[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = static_cast<std::int16_t>(k);
        }
    }

    std::optional<std::vector<EdgeBits>> solve(const EdgeBits& r, int levels) {
        tick();
        if (r.none()) return std::vector<EdgeBits>{};
        std::array<Mask, 64> adj{};
        fill_adjacency(r, adj);
        if (max_deg(adj) > levels) return std::nullopt;
        if (levels <= 1) return std::vector<EdgeBits>{r};

        EdgeBits core = r;
        std::vector<std::pair<int, int>> peeled;  // (edge, attachment vertex)
        if (opt_.use_pendant_reduction) {
            peel(core, adj, peeled);
            if (core.none()) return reattach({}, peeled);
            if (levels < 3) return std::nullopt;
        }

        std::vector<EdgeBits> merged;
        for (const EdgeBits& comp : components(core, adj)) {
            auto sub = solve_component(comp, levels);
            if (!sub) return std::nullopt;
            if (sub->size() > merged.size()) merged.resize(sub->size());
            for (std::size_t i = 0; i < sub->size(); ++i) merged[i] |= (*sub)[i];
        }
        return reattach(std::move(merged), peeled);
    }

    std::uint64_t nodes() const { return nodes_; }
    int edge_u(int k) const { return eu_[static_cast<std::size_t>(k)]; }
    int edge_v(int k) const { return ev_[static_cast<std::size_t>(k)]; }

private:
    void tick() {
        ++nodes_;
        if (opt_.node_budget != 0 && nodes_ > opt_.node_budget) throw BudgetExhausted{};
        if (opt_.seconds_budget > 0 && (nodes_ & 255U) == 0) {
            std::chrono::duration<double> spent = Clock::now() - start_;
            if (spent.count() > opt_.seconds_budget) throw BudgetExhausted{};
        }
    }

    void fill_adjacency(const EdgeBits& r, std::array<Mask, 64>& adj) const {
        r.for_each([&](int k) {
            const int u = edge_u(k);
            const int v = edge_v(k);
            adj[static_cast<std::size_t>(u)] |= bit(v);
            adj[static_cast<std::size_t>(v)] |= bit(u);
        });
    }

    int max_deg(const std::array<Mask, 64>& adj) const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, std::popcount(adj[static_cast<std::size_t>(v)]));
        return d;
    }

    int edge_id(int u, int v) const { return eid_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }

    // Strips degree-1 vertices, smallest id first; `adj` follows `core`.
    void peel(EdgeBits& core, std::array<Mask, 64>& adj, std::vector<std::pair<int, int>>& peeled) const {
        Mask leaves = 0;
        for (int v = 0; v < n_; ++v) {
            if (std::popcount(adj[static_cast<std::size_t>(v)]) == 1) leaves |= bit(v);
        }
        while (leaves) {
            const int v = std::countr_zero(leaves);
            leaves &= ~bit(v);
            const int w = std::countr_zero(adj[static_cast<std::size_t>(v)]);
            const int k = edge_id(v, w);
            core.reset(k);
            peeled.emplace_back(k, w);
            adj[static_cast<std::size_t>(v)] = 0;
            auto& aw = adj[static_cast<std::size_t>(w)];
            aw &= ~bit(v);
            const int dw = std::popcount(aw);
            if (dw == 1) leaves |= bit(w);
            if (dw == 0) leaves &= ~bit(w);
        }
    }

    std::vector<EdgeBits> reattach(std::vector<EdgeBits> parts, const std::vector<std::pair<int, int>>& peeled) const {
        std::vector<Mask> covered;
        for (const auto& p : parts) {
            Mask c = 0;
            p.for_each([&](int k) { c |= bit(edge_u(k)) | bit(edge_v(k)); });
            covered.push_back(c);
        }
        for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
            const auto [k, anchor] = *it;
            std::size_t slot = 0;
            while (slot < parts.size() && (covered[slot] & bit(anchor))) ++slot;
            if (slot == parts.size()) {
                parts.emplace_back();
                covered.push_back(0);
            }
            parts[slot].set(k);
            covered[slot] |= bit(edge_u(k)) | bit(edge_v(k));
        }
        return parts;
    }

    std::vector<EdgeBits> components(const EdgeBits& r, const std::array<Mask, 64>& adj) const {
        Mask todo = 0;
        for (int v = 0; v < n_; ++v) {
            if (adj[static_cast<std::size_t>(v)]) todo |= bit(v);
        }
        std::vector<Mask> comps;
        while (todo) {
            Mask comp = bit(std::countr_zero(todo));
            Mask frontier = comp;
            while (frontier) {
                const int v = std::countr_zero(frontier);
                frontier &= ~bit(v);
                const Mask fresh = adj[static_cast<std::size_t>(v)] & ~comp;
                comp |= fresh;
                frontier |= fresh;
            }
            todo &= ~comp;
            comps.push_back(comp);
        }
        std::vector<EdgeBits> out(comps.size());
        r.for_each([&](int k) {
            for (std::size_t c = 0; c < comps.size(); ++c) {
                if (comps[c] & bit(edge_u(k))) {
                    out[c].set(k);
                    break;
                }
            }
        });
        return out;
    }

    std::optional<std::vector<EdgeBits>> solve_component(const EdgeBits& c, int levels) {
        auto hit = memo_.find(c);
        if (hit != memo_.end() && hit->second >= levels) return std::nullopt;

        for (const Candidate& cand : first_parts(c, levels)) {
            auto rest = solve(c - cand.part, levels - 1);
            if (rest) {
                rest->insert(rest->begin(), cand.part);
                return rest;
            }
        }
        int& known = memo_[c];
        known = std::max(known, levels);
        return std::nullopt;
    }

    // Maximal positive matchings of component `c` covering its tight vertices.
    std::vector<Candidate> first_parts(const EdgeBits& c, int levels) {
        Enum e;
        fill_adjacency(c, e.adj);
        c.for_each([&](int k) { e.edges.push_back(k); });
        for (int v = 0; v < n_; ++v) {
            const int d = std::popcount(e.adj[static_cast<std::size_t>(v)]);
            e.deg[static_cast<std::size_t>(v)] = d;
            if (d == levels) e.tight |= bit(v);
        }
        e.chosen.reserve(32);
        cover_tight(e);
        std::sort(e.out.begin(), e.out.end(), [](const Candidate& a, const Candidate& b) {
            if (a.residual_delta != b.residual_delta) return a.residual_delta < b.residual_delta;
            return a.size > b.size;
        });
        return std::move(e.out);
    }

    struct Enum {
        std::array<Mask, 64> adj{};
        std::array<int, 64> deg{};
        Mask tight = 0;
        std::vector<int> edges;
        std::vector<int> chosen;
        Mask used = 0;
        std::vector<Candidate> out;
    };

    // Pendant peeling inside G[V(M)] with the matching given by `chosen`.
    bool positive(const Enum& e) const {
        Mask alive = e.used;
        std::array<int, 32> left{};
        int count = 0;
        for (int k : e.chosen) left[static_cast<std::size_t>(count++)] = k;
        while (count > 0) {
            int found = -1;
            for (int i = 0; i < count; ++i) {
                const int k = left[static_cast<std::size_t>(i)];
                if (std::popcount(e.adj[static_cast<std::size_t>(edge_u(k))] & alive) == 1 ||
                    std::popcount(e.adj[static_cast<std::size_t>(edge_v(k))] & alive) == 1) {
                    found = i;
                    break;
                }
            }
            if (found < 0) return false;
            const int k = left[static_cast<std::size_t>(found)];
            alive &= ~(bit(edge_u(k)) | bit(edge_v(k)));
            left[static_cast<std::size_t>(found)] = left[static_cast<std::size_t>(--count)];
        }
        return true;
    }

    bool try_push(Enum& e, int k) const {
        const Mask ends = bit(edge_u(k)) | bit(edge_v(k));
        if (e.used & ends) return false;
        e.chosen.push_back(k);
        e.used |= ends;
        if (positive(e)) return true;
        pop(e);
        return false;
    }

    void pop(Enum& e) const {
        const int k = e.chosen.back();
        e.chosen.pop_back();
        e.used &= ~(bit(edge_u(k)) | bit(edge_v(k)));
    }

    void cover_tight(Enum& e) {
        tick();
        const Mask open = e.tight & ~e.used;
        if (!open) {
            extend(e, 0);
            return;
        }
        const int t = std::countr_zero(open);
        for (int k : e.edges) {
            if (edge_u(k) != t && edge_v(k) != t) continue;
            if (!try_push(e, k)) continue;
            cover_tight(e);
            pop(e);
        }
    }

    void extend(Enum& e, std::size_t pos) {
        if ((pos & 7U) == 0) tick();
        while (pos < e.edges.size()) {
            const int k = e.edges[pos];
            if (!(e.used & (bit(edge_u(k)) | bit(edge_v(k))))) break;
            ++pos;
        }
        if (pos == e.edges.size()) {
            record(e);
            return;
        }
        const int k = e.edges[pos];
        if (try_push(e, k)) {
            extend(e, pos + 1);
            pop(e);
        }
        extend(e, pos + 1);
    }

    void record(Enum& e) {
        // Maximality: no free edge can be added while staying positive.
        for (int k : e.edges) {
            if (try_push(e, k)) {
                pop(e);
                return;
            }
        }
        Candidate cand;
        for (int k : e.chosen) cand.part.set(k);
        cand.size = static_cast<int>(e.chosen.size());
        for (int v = 0; v < n_; ++v) {
            const int d = e.deg[static_cast<std::size_t>(v)] - ((e.used & bit(v)) ? 1 : 0);
            cand.residual_delta = std::max(cand.residual_delta, d);
        }
        e.out.push_back(std::move(cand));
    }

    int n_;
    SolverOptions opt_;
    Clock::time_point start_;
    std::uint64_t nodes_ = 0;
    std::vector<int> eu_;
    std::vector<int> ev_;
    std::array<std::array<std::int16_t, 64>, 64> eid_{};
    std::unordered_map<EdgeBits, int, EdgeBitsHash> memo_;  // largest level count known infeasible
};

}  // namespace

PmdResult pmd_exact(const Graph& g, const SolverOptions& options) {
    const auto started = Clock::now();
    PmdResult result;
    if (g.empty()) {
        result.decomposition = Decomposition{g, {}};
        result.elapsed = Clock::now() - started;
        return result;
    }
    const int delta = max_degree(g);
    result.lower_bound_used = pmd_lower_bound(g);
    result.upper_bound_used = pmd_upper_bound(g);

    PendantReduction red;
    if (options.use_pendant_reduction) {
        red = reduce_pendants(g);
    } else {
        red.core = g;
        red.delta_original = delta;
    }

    std::vector<std::vector<Edge>> core_parts;
    if (!red.core.empty()) {
        std::vector<Vertex> active;
        for (Vertex v = 0; v < red.core.order(); ++v) {
            if (degree(red.core, v) > 0) active.push_back(v);
        }
        const int cap = std::min(options.max_core_vertices, 64);
        if (static_cast<int>(active.size()) > cap) {
            throw CapExceeded("core has " + std::to_string(active.size()) + " vertices, cap is " + std::to_string(cap));
        }
        if (red.core.size() > EdgeBits::kCapacity) {
            throw CapExceeded("core has " + std::to_string(red.core.size()) + " edges, cap is 256");
        }
        const auto compact = induced_subgraph(red.core, active);
        const Graph& h = compact.graph;

        Search search(h, options);
        EdgeBits all;
        for (int k = 0; k < h.size(); ++k) all.set(k);
        const int lo = pmd_lower_bound(h);
        const int hi = pmd_upper_bound(h);
        std::optional<std::vector<EdgeBits>> found;
        try {
            for (int levels = lo; levels <= hi && !found; ++levels) {
                found = search.solve(all, levels);
            }
        } catch (const BudgetExhausted&) {
            result.status = ResultStatus::budget_exhausted;
            result.value = result.upper_bound_used;
            result.nodes_explored = search.nodes();
            result.elapsed = Clock::now() - started;
            return result;
        }
        result.nodes_explored = search.nodes();
        if (!found) throw InternalError("no decomposition within the upper bound " + std::to_string(hi));
        for (const EdgeBits& part : *found) {
            std::vector<Edge> edges;
            part.for_each([&](int k) {
                const Edge e = h.edges()[static_cast<std::size_t>(k)];
                edges.emplace_back(compact.new_to_old[static_cast<std::size_t>(e.u)],
                                   compact.new_to_old[static_cast<std::size_t>(e.v)]);
            });
            core_parts.push_back(std::move(edges));
        }
    }

    Decomposition d = reattach_pendants(g, red, std::move(core_parts));
    auto check = verify_decomposition(d);
    if (!check) throw InternalError("solver produced an invalid decomposition: " + check.message);
    if (d.size() < result.lower_bound_used || d.size() > result.upper_bound_used) {
        throw InternalError("solver value " + std::to_string(d.size()) + " is outside [" +
                            std::to_string(result.lower_bound_used) + ", " +
                            std::to_string(result.upper_bound_used) + "]");
    }
    result.value = d.size();
    result.decomposition = std::move(d);
    result.elapsed = Clock::now() - started;
    return result;
}

}  // namespace pmd
