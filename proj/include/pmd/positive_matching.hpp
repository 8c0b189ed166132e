#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmd/graph.hpp"

namespace pmd {

/// A set of pairwise vertex-disjoint edges of some host graph.
///
/// The host is not stored; every operation takes it explicitly. Edges are
/// kept sorted.
class Matching {
public:
    Matching() = default;
    /// Throws Error if an edge is missing from `host` or two edges share a vertex.
    Matching(const Graph& host, std::vector<Edge> edges);

    std::span<const Edge> edges() const { return edges_; }
    int size() const { return static_cast<int>(edges_.size()); }
    bool empty() const { return edges_.empty(); }
    /// V(M), ascending.
    std::vector<Vertex> vertices() const;
    bool contains(const Edge& e) const;
    /// Partner of v in the matching, or -1.
    Vertex partner(Vertex v) const;

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    std::vector<Edge> edges_;
};

/// Ordering e_1..e_k of a matching in which every e_i is pendant in the
/// subgraph induced by V({e_1..e_i}).
struct PeelOrder {
    std::vector<Edge> edges;
};

/// Integer vertex weights on V(M): matched edges sum > 0, every other edge
/// of the induced subgraph sums < 0.
struct WeightCertificate {
    std::map<Vertex, long long> weights;
};

/// Closed walk u_1 v_1 u_2 v_2 ... u_r v_r u_1 alternating between matched
/// edges (u_i v_i) and unmatched edges (v_i u_{i+1}) of the induced subgraph.
struct AlternatingClosedWalk {
    /// u_1, v_1, ..., u_r, v_r, u_1 (first vertex repeated at the end).
    std::vector<Vertex> vertices;
    /// in_matching[i] describes the step vertices[i] -> vertices[i+1].
    std::vector<bool> in_matching;

    int length() const { return static_cast<int>(in_matching.size()); }
    /// "0-1-2-3-0"
    std::string to_string() const;
};

/// Positivity by pendant peeling. On success returns the peel order (the
/// removal order reversed); ties go to the lexicographically smallest edge.
std::optional<PeelOrder> peel_order(const Graph& host, const Matching& m);
bool is_positive(const Graph& host, const Matching& m);
/// Positivity of an arbitrary edge list known to be a matching of `host`.
bool is_positive_edges(const Graph& host, std::span<const Edge> edges);

/// Checks the pendant condition at every prefix of `order`.
bool is_valid_peel_order(const Graph& host, std::span<const Edge> order);

/// Searches the (edge, exit endpoint) digraph for a directed cycle and unfolds
/// it. The walk is reported in a canonical rotation/direction.
std::optional<AlternatingClosedWalk> find_alternating_closed_walk(const Graph& host, const Matching& m);
bool is_alternating_closed_walk(const Graph& host, const Matching& m, const AlternatingClosedWalk& walk);

/// Certificate following the peel order: the non-pendant endpoint q of e_i
/// gets -(B + 1) and the pendant endpoint gets B + 2, where B is one more than
/// the largest magnitude assigned so far (B = 1 at the start). Magnitudes
/// stay at most 3k for k matched edges. Throws Error on an invalid order.
WeightCertificate build_weight_certificate(const Graph& host, const Matching& m, const PeelOrder& order);
/// Throws Error if a vertex of V(M) has no weight.
bool verify_certificate(const Graph& host, const Matching& m, const WeightCertificate& c);

/// Largest weight magnitude build_weight_certificate can emit for k edges.
long long certificate_magnitude_bound(int k);

/// Exhaustive backtracking search for integer weights in [-bound, bound]
/// straight from the sign conditions. Uses no peeling.
std::optional<WeightCertificate> search_weight_certificate(const Graph& host, const Matching& m, long long bound);

/// Maximum-cardinality positive matching by branch and bound.
/// Throws CapExceeded when host.order() > cap.
Matching max_positive_matching(const Graph& host, int cap = 14);

/// Reorders b.y_side so that y_side[i] is the partner of x_side[i].
/// Throws Error unless m is a perfect matching across the two sides.
Bipartition align_to_matching(const Graph& host, const Bipartition& b, const Matching& m);

/// Digraph on i = 0..n-1 with arc (i, j) iff i != j and x_i y_j is an edge.
/// Requires m = {x_i y_i}; use align_to_matching first.
Digraph matching_digraph(const Graph& host, const Bipartition& b, const Matching& m);

enum class SplitMode { automatic, exact, greedy };

struct MatchingSplit {
    std::vector<Matching> parts;
    bool minimum = false;  // true when the count is certified minimal
};

/// Partitions m into positive matchings: the minimum number when exact
/// (|m| <= exact_cap), otherwise greedily by maximal positive subsets.
MatchingSplit split_matching_min_positive(const Graph& host, const Matching& m,
                                          SplitMode mode = SplitMode::automatic, int exact_cap = 14);

}  // namespace pmd
