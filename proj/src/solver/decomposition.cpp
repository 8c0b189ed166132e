#include <algorithm>
#include <set>

#include "pmd/solver.hpp"

namespace pmd {

namespace {

DecompositionCheck failure(DecompositionFailure kind, int part, std::optional<Edge> edge, std::string message) {
    DecompositionCheck check;
    check.valid = false;
    check.failure = kind;
    check.part = part;
    check.edge = edge;
    check.message = std::move(message);
    return check;
}

std::string part_label(std::size_t i) {
    return "part " + std::to_string(i + 1);
}

}  // namespace

DecompositionCheck verify_decomposition(const Decomposition& d) {
    const Graph& host = d.host;
    std::vector<int> owner(static_cast<std::size_t>(host.size()), -1);
    std::vector<Edge> residual(host.edges().begin(), host.edges().end());

    for (std::size_t i = 0; i < d.parts.size(); ++i) {
        const auto& part = d.parts[i];
        const int idx = static_cast<int>(i);
        if (part.empty()) return failure(DecompositionFailure::empty_part, idx, std::nullopt, part_label(i) + " is empty");
        std::set<Vertex> seen;
        for (const Edge& e : part) {
            int k = host.edge_index(e);
            if (k < 0) {
                return failure(DecompositionFailure::non_edge, idx, e, part_label(i) + " contains non-edge " + to_string(e));
            }
            if (owner[static_cast<std::size_t>(k)] >= 0) {
                return failure(DecompositionFailure::overlap, idx, e,
                               "edge " + to_string(e) + " appears in " +
                                   part_label(static_cast<std::size_t>(owner[static_cast<std::size_t>(k)])) + " and " +
                                   part_label(i));
            }
            owner[static_cast<std::size_t>(k)] = idx;
            if (!seen.insert(e.u).second || !seen.insert(e.v).second) {
                return failure(DecompositionFailure::not_matching, idx, e,
                               part_label(i) + " is not a matching (edge " + to_string(e) + ")");
            }
        }
        Graph stage(host.order(), residual);
        Matching m(stage, part);
        if (!is_positive(stage, m)) {
            auto walk = find_alternating_closed_walk(stage, m);
            auto check = failure(DecompositionFailure::alternating_walk, idx, std::nullopt,
                                 part_label(i) + " has alternating closed walk " + (walk ? walk->to_string() : "?"));
            check.walk = std::move(walk);
            return check;
        }
        std::erase_if(residual, [&](const Edge& e) { return m.contains(e); });
    }
    if (!residual.empty()) {
        return failure(DecompositionFailure::uncovered_edge, -1, residual.front(),
                       "edge " + to_string(residual.front()) + " is not covered by any part");
    }
    return DecompositionCheck{};
}

Decomposition restrict_decomposition(const Decomposition& d, const Graph& h) {
    if (h.order() != d.host.order()) throw Error("restriction target has a different vertex set");
    for (const Edge& e : h.edges()) {
        if (!d.host.has_edge(e.u, e.v)) throw Error("restriction target edge " + to_string(e) + " is not in the host");
    }
    Decomposition out{h, {}};
    for (const auto& part : d.parts) {
        std::vector<Edge> kept;
        for (const Edge& e : part) {
            if (h.has_edge(e.u, e.v)) kept.push_back(e);
        }
        if (!kept.empty()) out.parts.push_back(std::move(kept));
    }
    return out;
}

PendantReduction reduce_pendants(const Graph& g) {
    PendantReduction red;
    red.delta_original = g.order() > 0 ? max_degree(g) : 0;
    std::vector<int> deg(static_cast<std::size_t>(g.order()));
    std::vector<bool> gone(static_cast<std::size_t>(g.size()), false);
    std::set<Vertex> pendants;
    for (Vertex v = 0; v < g.order(); ++v) {
        deg[static_cast<std::size_t>(v)] = degree(g, v);
        if (deg[static_cast<std::size_t>(v)] == 1) pendants.insert(v);
    }
    while (!pendants.empty()) {
        Vertex v = *pendants.begin();
        pendants.erase(pendants.begin());
        for (Vertex w : g.neighbors(v)) {
            int k = g.edge_index(Edge(v, w));
            if (gone[static_cast<std::size_t>(k)]) continue;
            gone[static_cast<std::size_t>(k)] = true;
            red.removed.push_back({Edge(v, w), v});
            deg[static_cast<std::size_t>(v)] = 0;
            auto& dw = deg[static_cast<std::size_t>(w)];
            --dw;
            if (dw == 1) pendants.insert(w);
            if (dw == 0) pendants.erase(w);
            break;
        }
    }
    std::vector<Edge> kept;
    for (int k = 0; k < g.size(); ++k) {
        if (!gone[static_cast<std::size_t>(k)]) kept.push_back(g.edges()[static_cast<std::size_t>(k)]);
    }
    red.core = Graph(g.order(), std::move(kept));
    return red;
}

Decomposition reattach_pendants(const Graph& g, const PendantReduction& red,
                                std::vector<std::vector<Edge>> core_parts) {
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<std::vector<bool>> covered;
    for (const auto& part : core_parts) {
        std::vector<bool> cov(n, false);
        for (const Edge& e : part) cov[static_cast<std::size_t>(e.u)] = cov[static_cast<std::size_t>(e.v)] = true;
        covered.push_back(std::move(cov));
    }
    for (auto it = red.removed.rbegin(); it != red.removed.rend(); ++it) {
        const Vertex anchor = it->edge.other(it->pendant);
        std::size_t slot = 0;
        while (slot < core_parts.size() && covered[slot][static_cast<std::size_t>(anchor)]) ++slot;
        if (slot == core_parts.size()) {
            core_parts.emplace_back();
            covered.emplace_back(n, false);
        }
        core_parts[slot].push_back(it->edge);
        covered[slot][static_cast<std::size_t>(it->edge.u)] = covered[slot][static_cast<std::size_t>(it->edge.v)] = true;
    }
    for (auto& part : core_parts) std::sort(part.begin(), part.end());
    return Decomposition{g, std::move(core_parts)};
}

}  // namespace pmd
