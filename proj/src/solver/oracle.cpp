#include <limits>

#include "pmd/solver.hpp"

namespace pmd {

// Positivity here goes through the weight definition only; the peel and walk
// routines are never consulted.
int pmd_bruteforce_oracle(const Graph& g) {
    const int m = g.size();
    if (m > 8) throw CapExceeded("oracle handles at most 8 edges, got " + std::to_string(m));
    const auto all = g.edges();
    const unsigned full = (1U << m) - 1U;
    constexpr int kInf = std::numeric_limits<int>::max() / 2;
    std::vector<int> best(full + 1U, kInf);
    best[0] = 0;

    auto edges_of = [&](unsigned mask) {
        std::vector<Edge> out;
        for (int i = 0; i < m; ++i) {
            if (mask >> i & 1U) out.push_back(all[static_cast<std::size_t>(i)]);
        }
        return out;
    };
    auto is_matching = [&](unsigned mask) {
        std::vector<bool> used(static_cast<std::size_t>(g.order()), false);
        for (const Edge& e : edges_of(mask)) {
            if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) return false;
            used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = true;
        }
        return true;
    };

    // Proper subsets of s are numerically smaller, so they are settled first.
    for (unsigned s = 1; s <= full; ++s) {
        Graph residual(g.order(), edges_of(s));
        for (unsigned p = s; p != 0; p = (p - 1U) & s) {
            if (best[s & ~p] + 1 >= best[s] || !is_matching(p)) continue;
            Matching part(residual, edges_of(p));
            const auto bound = certificate_magnitude_bound(part.size());
            if (search_weight_certificate(residual, part, bound)) best[s] = best[s & ~p] + 1;
        }
    }
    return best[full];
}

}  // namespace pmd
