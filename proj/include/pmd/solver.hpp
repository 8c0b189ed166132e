#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmd/graph.hpp"
#include "pmd/positive_matching.hpp"

namespace pmd {

/// Ordered edge partition E_1..E_p of `host`; E_i must be a positive
/// matching of host minus E_1..E_{i-1}.
struct Decomposition {
    Graph host;
    std::vector<std::vector<Edge>> parts;

    int size() const { return static_cast<int>(parts.size()); }
};

enum class DecompositionFailure {
    none,
    empty_part,
    non_edge,
    not_matching,
    overlap,
    uncovered_edge,
    alternating_walk,
};

struct DecompositionCheck {
    bool valid = true;
    DecompositionFailure failure = DecompositionFailure::none;
    int part = -1;                     // 0-based index of the offending part
    std::optional<Edge> edge;          // offending edge, when one applies
    std::optional<AlternatingClosedWalk> walk;
    std::string message;               // uses 1-based part numbers

    explicit operator bool() const { return valid; }
};

DecompositionCheck verify_decomposition(const Decomposition& d);

/// Intersects every part with h's edges and drops empty parts.
/// h must have the same order as d.host and a subset of its edges.
Decomposition restrict_decomposition(const Decomposition& d, const Graph& h);

struct PeeledEdge {
    Edge edge;
    Vertex pendant;  // the degree-1 endpoint at removal time
};

/// Maximum pendant-free subgraph plus the peel history.
struct PendantReduction {
    Graph core;                        // same vertex ids as the input
    int delta_original = 0;
    std::vector<PeeledEdge> removed;   // in removal order
};

PendantReduction reduce_pendants(const Graph& g);

/// Re-attaches peeled edges (in reverse removal order) to a decomposition of
/// the core: each edge joins the first part missing its attachment vertex,
/// or opens a new part. Yields max(|core parts|, max degree) parts.
Decomposition reattach_pendants(const Graph& g, const PendantReduction& red,
                                std::vector<std::vector<Edge>> core_parts);

struct BoundTerm {
    std::string name;
    int value = 0;
};

struct BoundsReport {
    int lower = 0;
    int upper = 0;
    std::vector<BoundTerm> lower_terms;
    std::vector<BoundTerm> upper_terms;
};

/// Max degree, and the complete multipartite lower bound
/// max{ceil(3N/2) - n_m - 1, N + ceil(m/2) - 2} when g is complete multipartite.
/// Throws Error on an edgeless graph.
int pmd_lower_bound(const Graph& g);

/// Minimum of the applicable upper bounds, taken per component (2n-3,
/// bipartite n-1, regular bipartite C(r,2)+2, complete multipartite
/// 2N - n_{m-1} - n_m - 1, and |E|). Throws Error when g.order() < 2.
int pmd_upper_bound(const Graph& g);

BoundsReport bounds_report(const Graph& g);

struct SolverOptions {
    int max_core_vertices = 16;
    std::uint64_t node_budget = 0;  // 0: unlimited
    double seconds_budget = 0.0;    // 0: unlimited
    bool use_pendant_reduction = true;
};

enum class ResultStatus { exact, budget_exhausted };

struct PmdResult {
    ResultStatus status = ResultStatus::exact;
    /// The exact value, or the best upper bound when the budget ran out.
    int value = 0;
    std::optional<Decomposition> decomposition;
    int lower_bound_used = 0;
    int upper_bound_used = 0;
    std::uint64_t nodes_explored = 0;
    std::chrono::duration<double> elapsed{};

    bool exact() const { return status == ResultStatus::exact; }
};

/// Exact pmd by iterative deepening with memoized branch and bound over
/// maximal positive first parts. Edgeless graphs have pmd 0.
/// Throws CapExceeded when the (reduced) instance is over the vertex cap.
PmdResult pmd_exact(const Graph& g, const SolverOptions& options = {});

/// Independent oracle: minimum over ordered partitions of E into parts whose
/// positivity is decided only by bounded weight search. Needs |E| <= 8.
int pmd_bruteforce_oracle(const Graph& g);

}  // namespace pmd
