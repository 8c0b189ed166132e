#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmd/graph.hpp"

namespace pmd {

// Vertex ids, 1-based textbook names on the left:
//   K_n            u_i -> i-1
//   K_{m,n}        u_i -> i-1, v_j -> m+j-1
//   CL_n, M_n      u_i -> i-1, v_i -> n+i-1
//   GP(n,k)        u_i -> (i-1 mod n), v_i -> n + (i-1 mod n)
//   Q_n            bit vector read as an integer (e_1 is bit 0)

Graph complete(int n);
Graph complete_bipartite(int m, int n);
Graph path(int n);   // n vertices
Graph cycle(int n);
Graph star(int n);   // K_{1,n}, center 0

struct MultipartiteGraph {
    Graph graph;
    std::vector<int> sizes;        // ascending
    std::vector<int> permutation;  // sizes[i] came from argument position permutation[i]
    std::vector<Vertex> first;     // first vertex id of each (sorted) part
};

/// Parts are laid out in ascending size order, whatever the argument order.
MultipartiteGraph complete_multipartite(std::vector<int> sizes);

Graph circular_ladder(int n);
Graph mobius_ladder(int n);
/// For n = 2k every inner pair v_i v_{i+k} appears once.
Graph generalized_petersen(int n, int k);
Graph hypercube(int n);

/// Appends counts[v] pendant vertices at every v (zero allowed).
Graph corona(const Graph& g, std::span<const int> counts);

struct RootedTree {
    Graph tree;
    Vertex root = 0;
};

/// Glues trees[v] to v by its root; the other tree vertices are appended
/// in (v, tree id) order. A one-vertex tree adds nothing.
Graph antler(const Graph& g, std::span<const RootedTree> trees);

struct SubdividedEdge {
    Edge original;
    std::array<Vertex, 4> inner;  // u_e, u'_e, v'_e, v_e with u < v
    std::array<Edge, 5> path;
    Edge middle;
};

struct Subdivision {
    Graph graph;
    std::vector<SubdividedEdge> edges;  // in g.edges() order
};

/// Replaces edge number t = uv by u, n+4t, n+4t+1, n+4t+2, n+4t+3, v.
Subdivision subdivide_by_five(const Graph& g);

/// Uniform labeled tree by Prufer decoding.
Graph random_tree(int n, std::uint64_t seed);
/// Grows from one vertex by pendant edges and cycles hung at random vertices.
Graph random_cactus(int n, std::uint64_t seed);

/// Connected, and every block is a single edge or a cycle.
bool is_cactus(const Graph& g);
bool is_triangle_free(const Graph& g);

enum class Family {
    complete,
    complete_bipartite,
    complete_multipartite,
    path,
    cycle,
    star,
    tree_random,
    circular_ladder,
    mobius_ladder,
    generalized_petersen,
    hypercube,
    corona,
    subdivision5,
    cactus_random,
};

/// Text forms: kn:5 kmn:3,4 kpartite:2,2,3 path:6 cycle:7 star:4 tree:10,SEED
/// cl:4 mob:5 gp:7,2 q:3 cactus:12,SEED corona:COUNT:SPEC sub5:SPEC
struct FamilySpec {
    Family family = Family::complete;
    std::vector<int> params;
    std::optional<std::uint64_t> seed;
    std::vector<FamilySpec> inner;  // base graph of corona / sub5

    std::string to_string() const;
};

/// Throws ParseError on unknown names or bad parameters.
FamilySpec parse_family_spec(std::string_view text);
Graph build_family(const FamilySpec& spec);

}  // namespace pmd
