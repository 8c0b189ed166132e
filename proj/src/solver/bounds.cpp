#include <algorithm>

#include "pmd/solver.hpp"

namespace pmd {

namespace {

int ceil_half(int x) { return (x + 1) / 2; }

struct ComponentBounds {
    std::vector<BoundTerm> lower;
    std::vector<BoundTerm> upper;
};

ComponentBounds component_bounds(const Graph& c) {
    ComponentBounds out;
    const int n = c.order();
    out.lower.push_back({"max_degree", max_degree(c)});

    out.upper.push_back({"general_2n-3", 2 * n - 3});
    out.upper.push_back({"edges", c.size()});
    if (bipartition_of(c)) {
        out.upper.push_back({"bipartite_n-1", n - 1});
        if (auto r = regular_degree(c)) out.upper.push_back({"regular_bipartite", *r * (*r - 1) / 2 + 2});
    }
    if (auto parts = complete_multipartite_parts(c)) {
        const int N = n;
        const int m = static_cast<int>(parts->size());
        const int nm = parts->back();
        const int nm1 = (*parts)[parts->size() - 2];
        out.lower.push_back({"multipartite_3N/2", ceil_half(3 * N) - nm - 1});
        out.lower.push_back({"multipartite_N+m/2", N + ceil_half(m) - 2});
        out.upper.push_back({"multipartite", 2 * N - nm1 - nm - 1});
    }
    return out;
}

int best_lower(const std::vector<BoundTerm>& terms) {
    int v = 0;
    for (const auto& t : terms) v = std::max(v, t.value);
    return v;
}

int best_upper(const std::vector<BoundTerm>& terms) {
    int v = terms.front().value;
    for (const auto& t : terms) v = std::min(v, t.value);
    return v;
}

}  // namespace

BoundsReport bounds_report(const Graph& g) {
    if (g.order() < 2) throw Error("bounds need at least two vertices");
    BoundsReport report;
    for (const auto& comp : connected_components(g)) {
        if (comp.size() < 2) continue;
        auto sub = induced_subgraph(g, comp);
        auto b = component_bounds(sub.graph);
        const int lo = best_lower(b.lower);
        const int hi = best_upper(b.upper);
        if (lo > report.lower) {
            report.lower = lo;
            report.lower_terms = b.lower;
        }
        if (hi > report.upper) {
            report.upper = hi;
            report.upper_terms = b.upper;
        }
    }
    return report;
}

int pmd_lower_bound(const Graph& g) {
    if (g.empty()) throw Error("lower bound of an edgeless graph");
    return bounds_report(g).lower;
}

int pmd_upper_bound(const Graph& g) {
    return bounds_report(g).upper;
}

}  // namespace pmd
