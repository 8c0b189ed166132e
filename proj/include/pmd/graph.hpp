#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmd {

using Vertex = int;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input text that does not follow graph6 or the edge-list format.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A self-produced result failed its own verification.
class InternalError : public Error {
public:
    using Error::Error;
};

/// An instance larger than an exact-search cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Undirected edge in canonical order (u < v).
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    constexpr Edge() = default;
    constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    constexpr bool touches(Vertex w) const { return u == w || v == w; }
    constexpr Vertex other(Vertex w) const { return w == u ? v : u; }

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

/// Immutable simple graph on vertices 0..n-1.
///
/// Adjacency is kept as sorted neighbor lists; graphs with at most 64
/// vertices also carry one bit row per vertex.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    /// Throws Error on loops, duplicates or out-of-range endpoints.
    Graph(int n, std::vector<Edge> edges);

    int order() const { return n_; }
    int size() const { return static_cast<int>(edges_.size()); }
    bool empty() const { return edges_.empty(); }

    std::span<const Edge> edges() const { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const;
    bool has_edge(Vertex a, Vertex b) const;
    /// Position of `e` in edges(), or -1.
    int edge_index(const Edge& e) const;

    bool has_bit_rows() const { return !rows_.empty() || n_ == 0; }
    std::uint64_t row(Vertex v) const { return rows_[static_cast<std::size_t>(v)]; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    void check_vertex(Vertex v) const;

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::uint64_t> rows_;
};

int degree(const Graph& g, Vertex v);
/// Throws on the empty graph (n = 0).
int max_degree(const Graph& g);
int min_degree(const Graph& g);
/// Number of vertices with positive degree.
int non_isolated_count(const Graph& g);

struct InducedSubgraph {
    Graph graph;
    std::vector<int> old_to_new;   // -1 for dropped vertices
    std::vector<Vertex> new_to_old;
};

/// Subgraph induced by `vs`; new ids follow the ascending order of `vs`.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vs);

/// Same vertex set, edges g.edges() minus `es`. Every edge of `es` must exist.
Graph remove_edges(const Graph& g, std::span<const Edge> es);

/// Same vertex set, only the edges `es` (each must exist in g).
Graph edge_subgraph(const Graph& g, std::span<const Edge> es);

/// Components ordered by their smallest vertex; vertices ascending inside.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
bool is_forest(const Graph& g);

/// Two ordered sides; order is significant (it is the slope labeling).
struct Bipartition {
    std::vector<Vertex> x_side;
    std::vector<Vertex> y_side;
};

/// A 2-coloring, or nullopt when an odd cycle exists. In every component the
/// side holding the smallest vertex id goes to x_side; both sides ascending.
std::optional<Bipartition> bipartition_of(const Graph& g);

/// Sorted part sizes when g is complete multipartite with at least two parts
/// (and at least one edge), otherwise nullopt.
std::optional<std::vector<int>> complete_multipartite_parts(const Graph& g);

/// Regular degree when every vertex of g has the same degree.
std::optional<int> regular_degree(const Graph& g);

/// Small directed graph without self-loops.
class Digraph {
public:
    Digraph() = default;
    Digraph(int n, std::vector<std::pair<int, int>> arcs);

    int order() const { return n_; }
    std::span<const std::pair<int, int>> arcs() const { return arcs_; }
    std::span<const int> successors(int i) const { return out_[static_cast<std::size_t>(i)]; }
    bool has_arc(int i, int j) const;

    /// A directed cycle (node sequence, first node not repeated), if any.
    std::optional<std::vector<int>> find_cycle() const;
    /// True when the sub-digraph induced by `nodes` has no directed cycle.
    bool induces_acyclic(std::span<const int> nodes) const;

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> arcs_;
    std::vector<std::vector<int>> out_;
};

}  // namespace pmd
