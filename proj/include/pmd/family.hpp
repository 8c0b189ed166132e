#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmd/generators.hpp"
#include "pmd/solver.hpp"

namespace pmd {

/// Closed-form pmd claim for a family member, optionally with a witness.
/// When `upper_only` is set the claim is just pmd <= upper.
struct FamilyAnswer {
    std::string family;
    int lower = 0;
    int upper = 0;
    bool upper_only = false;
    std::optional<Decomposition> decomposition;
    std::string provenance;  // formula:<name> | solver | bound | mixes joined by '+'

    bool exact() const { return !upper_only && lower == upper; }
};

FamilyAnswer kn_decomposition(int n);
FamilyAnswer kmn_decomposition(int m, int n);

/// Interval with ceiled lower ends; the witness is the restriction of the
/// anti-diagonal K_N decomposition under the order C_m, C_1, ..., C_{m-1}.
FamilyAnswer multipartite_bounds(std::vector<int> sizes);
Decomposition multipartite_upper_decomposition(std::vector<int> sizes);

/// Proper Delta-edge-coloring grown from each component's smallest vertex.
FamilyAnswer tree_decomposition(const Graph& g);
/// Same coloring for any forest; parts listed by color.
Decomposition forest_decomposition(const Graph& g);

FamilyAnswer cycle_decomposition(int n);
FamilyAnswer cl_decomposition(int n);
FamilyAnswer mobius_decomposition(int n);

/// Claimed pmd(GP(n,k)): 3 for n = 2k with k != 3, 4 otherwise, except
/// k = 1 which follows the ladder values (5 only for CL_4).
int gp_claimed_value(int n, int k);
/// The three-way rule read literally (its middle case names n = 8, k = 1).
int gp_literal_value(int n, int k);
FamilyAnswer gp_decomposition(int n, int k);

/// 2n-1 parts: 2n-2 cosets e + G_e with representatives taken greedily in
/// edge order, then the matching {h, h + e_n}. For n = 2 the hyperplane has
/// a single edge, so the second representative comes from the other copy.
FamilyAnswer hypercube_decomposition(int n);

struct SubdivisionMatching {
    Subdivision subdivision;
    std::vector<Edge> matching;  // middle edges plus one stub per original vertex
    Decomposition decomposition;  // matching first, then a forest coloring
};

/// `stub_edge[v]`, when given, names the original edge whose stub at v joins
/// the matching; by default the lowest-index edge at v is used.
SubdivisionMatching subdivision_positive_matching(const Graph& g, std::span<const int> stub_edge = {});

/// Interval [Delta, Delta+1], collapsed for cycles and triangle-free
/// non-cycles; the solver supplies a witness when the graph fits its caps.
FamilyAnswer cactus_pmd(const Graph& g, const SolverOptions& options = {});

/// Dispatches a parsed spec to the matching construction. Coronas combine
/// the base answer with the maximum degree; the host of any decomposition is
/// build_family(spec).
FamilyAnswer family_answer(const FamilySpec& spec, const SolverOptions& options = {});

}  // namespace pmd
