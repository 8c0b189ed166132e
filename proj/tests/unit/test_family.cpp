#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "pmd/family.hpp"
#include "pmd/generators.hpp"

using namespace pmd;

namespace {

int solve(const Graph& g) {
    SolverOptions o;
    o.max_core_vertices = 64;
    const auto r = pmd_exact(g, o);
    REQUIRE(r.exact());
    return r.value;
}

// Decomposition present, valid, on the expected host, with `upper` parts.
void check_answer(const FamilyAnswer& a, const Graph& host) {
    REQUIRE(a.decomposition);
    CHECK(a.decomposition->host == host);
    const auto v = verify_decomposition(*a.decomposition);
    CHECK_MESSAGE(v.valid, v.message);
    CHECK(a.decomposition->size() == a.upper);
    CHECK(a.lower <= a.upper);
}

bool has_part(const Decomposition& d, std::vector<Edge> part) {
    part = testing::sorted(std::move(part));
    return std::ranges::any_of(d.parts, [&](const auto& p) { return testing::sorted(p) == part; });
}

}  // namespace

TEST_SUITE("family_constructions") {

TEST_CASE("complete graphs") {
    CHECK(kn_decomposition(2).upper == 1);
    const auto k4 = kn_decomposition(4);
    check_answer(k4, complete(4));
    CHECK(k4.upper == 5);
    CHECK(has_part(*k4.decomposition, {{0, 3}, {1, 2}}));
    CHECK(has_part(*k4.decomposition, {{0, 1}}));
    for (int n = 2; n <= 8; ++n) {
        const auto a = kn_decomposition(n);
        check_answer(a, complete(n));
        CHECK(a.exact());
        CHECK(a.upper == 2 * n - 3);
    }
}

TEST_CASE("complete bipartite graphs") {
    CHECK(kmn_decomposition(1, 1).upper == 1);
    CHECK(kmn_decomposition(3, 3).upper == 5);
    const auto a = kmn_decomposition(2, 5);
    check_answer(a, complete_bipartite(2, 5));
    CHECK(a.upper == 6);
}

TEST_CASE("multipartite interval") {
    for (int m = 1; m <= 4; ++m) {
        for (int n = m; n <= 5; ++n) {
            const auto a = multipartite_bounds({1, m, n});
            CHECK(a.lower == m + n + 1);
            CHECK(a.upper == m + n + 1);
        }
    }
    const auto a222 = multipartite_bounds({2, 2, 2});
    CHECK(a222.lower <= 6);
    CHECK(6 <= a222.upper);
    const auto a223 = multipartite_bounds({2, 3, 2});
    CHECK(a223.lower <= 7);
    CHECK(7 <= a223.upper);
    const auto d = multipartite_upper_decomposition({2, 2, 2});
    CHECK(verify_decomposition(d));
    CHECK(d.size() == 7);
    CHECK(multipartite_bounds({2, 3, 4}).upper == 10);
}

TEST_CASE("trees") {
    const auto s = tree_decomposition(star(5));
    check_answer(s, star(5));
    CHECK(s.upper == 5);
    for (const auto& p : s.decomposition->parts) CHECK(p.size() == 1);
    CHECK(tree_decomposition(path(7)).upper == 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph t = random_tree(15, seed);
        const auto a = tree_decomposition(t);
        check_answer(a, t);
        CHECK(a.upper == max_degree(t));
    }
    CHECK_THROWS_AS(tree_decomposition(cycle(4)), Error);
    const Graph forest(7, {{0, 1}, {1, 2}, {1, 3}, {4, 5}});
    const auto fd = forest_decomposition(forest);
    CHECK(verify_decomposition(fd));
    CHECK(fd.size() == 3);
}

TEST_CASE("cycles") {
    const auto c3 = cycle_decomposition(3);
    check_answer(c3, cycle(3));
    for (const auto& p : c3.decomposition->parts) CHECK(p.size() == 1);
    for (int n = 3; n <= 12; ++n) {
        const auto a = cycle_decomposition(n);
        check_answer(a, cycle(n));
        CHECK(a.upper == 3);
    }
}

TEST_CASE("ladders") {
    const auto cl5 = cl_decomposition(5);
    check_answer(cl5, circular_ladder(5));
    CHECK(cl5.upper == 4);
    // u_1 v_1, u_3 v_3, v_4 v_5
    CHECK(testing::sorted(cl5.decomposition->parts.front()) == testing::sorted({{0, 5}, {2, 7}, {8, 9}}));
    CHECK(cl_decomposition(4).upper == 5);
    for (int n = 3; n <= 8; ++n) check_answer(cl_decomposition(n), circular_ladder(n));

    const auto m6 = mobius_decomposition(6);
    check_answer(m6, mobius_ladder(6));
    CHECK(m6.upper == 4);
    // u_2 v_2, u_4 v_4, u_1 v_6, u_5 u_6
    CHECK(testing::sorted(m6.decomposition->parts.front()) == testing::sorted({{1, 7}, {3, 9}, {0, 11}, {4, 5}}));
    for (int n = 3; n <= 8; ++n) check_answer(mobius_decomposition(n), mobius_ladder(n));
    CHECK(mobius_decomposition(3).upper == 5);
}

TEST_CASE("generalized Petersen") {
    CHECK(gp_decomposition(5, 2).upper == 4);
    CHECK(gp_decomposition(8, 4).upper == 3);
    CHECK(gp_literal_value(8, 1) == 5);
    CHECK(gp_claimed_value(8, 1) == 4);
    CHECK(gp_claimed_value(4, 1) == 5);
    CHECK(gp_claimed_value(6, 3) == 4);
    for (int n = 3; n <= 8; ++n) {
        for (int k = 1; 2 * k <= n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            const auto a = gp_decomposition(n, k);
            check_answer(a, generalized_petersen(n, k));
            CHECK(a.upper == gp_claimed_value(n, k));
        }
    }
}

TEST_CASE("coprime construction falls back where it fails") {
    const auto a = gp_decomposition(5, 2);
    CHECK(a.provenance.find("+solver") != std::string::npos);
    const auto b = gp_decomposition(7, 2);
    CHECK(b.provenance.find("solver") == std::string::npos);
}

TEST_CASE("hypercubes") {
    CHECK(hypercube_decomposition(1).upper == 1);
    CHECK(hypercube_decomposition(2).upper == 3);
    for (int n = 1; n <= 5; ++n) {
        const auto a = hypercube_decomposition(n);
        check_answer(a, hypercube(n));
        CHECK(a.upper == 2 * n - 1);
        CHECK(a.upper_only);
    }
}

TEST_CASE("subdivision matching") {
    const auto k4 = subdivision_positive_matching(complete(4));
    CHECK(k4.matching.size() == 10);
    CHECK(is_positive(k4.subdivision.graph, Matching(k4.subdivision.graph, k4.matching)));
    CHECK(verify_decomposition(k4.decomposition));
    CHECK(k4.decomposition.size() == 3);

    const auto star3 = subdivision_positive_matching(star(3));
    CHECK(star3.decomposition.size() == 3);
    CHECK(verify_decomposition(star3.decomposition));

    // what is left is starlike: trees with at most one vertex of degree > 2
    const Graph rest = remove_edges(k4.subdivision.graph, k4.matching);
    for (const auto& comp : connected_components(rest)) {
        const Graph part = induced_subgraph(rest, comp).graph;
        CHECK(is_forest(part));
        int branch = 0;
        for (Vertex v = 0; v < part.order(); ++v) branch += degree(part, v) > 2 ? 1 : 0;
        CHECK(branch <= 1);
    }
    CHECK_THROWS_AS(subdivision_positive_matching(cycle(4)), Error);
}

TEST_CASE("cacti") {
    SolverOptions o;
    o.max_core_vertices = 24;
    const Graph hex = testing::hexagon_cactus();
    const auto a = cactus_pmd(hex, o);
    CHECK(a.lower == 3);
    CHECK(a.upper == 4);
    REQUIRE(a.decomposition);
    CHECK(a.decomposition->size() == 4);
    CHECK(verify_decomposition(*a.decomposition));

    CHECK(cactus_pmd(cycle(10)).upper == 3);
    CHECK(cactus_pmd(cycle(10)).exact());
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph c = random_cactus(12, seed);
        const auto ans = cactus_pmd(c, o);
        const int v = solve(c);
        CHECK(ans.lower <= v);
        CHECK(v <= ans.upper);
        if (is_triangle_free(c) && !regular_degree(c)) CHECK(v == max_degree(c));
    }
    CHECK_THROWS_AS(cactus_pmd(complete(4)), Error);
}

TEST_CASE("claimed values agree with the solver") {
    for (int n = 2; n <= 6; ++n) CHECK(solve(complete(n)) == kn_decomposition(n).upper);
    for (int m = 1; m <= 4; ++m) {
        for (int n = m; m + n <= 8; ++n) CHECK(solve(complete_bipartite(m, n)) == kmn_decomposition(m, n).upper);
    }
    for (int n = 3; n <= 10; ++n) CHECK(solve(cycle(n)) == 3);
    for (int n = 3; n <= 6; ++n) {
        CHECK(solve(circular_ladder(n)) == cl_decomposition(n).upper);
        CHECK(solve(mobius_ladder(n)) == mobius_decomposition(n).upper);
    }
}

TEST_CASE("dispatch by spec") {
    SolverOptions o;
    o.max_core_vertices = 32;
    for (const char* s : {"kn:5", "kmn:2,4", "kpartite:1,2,3", "path:6", "star:4", "tree:11,2", "cycle:7", "cl:5",
                          "mob:4", "gp:7,3", "q:3", "cactus:10,1", "sub5:star:3", "corona:1:cycle:5",
                          "corona:2:kn:4"}) {
        CAPTURE(s);
        const auto spec = parse_family_spec(s);
        const auto a = family_answer(spec, o);
        REQUIRE(a.decomposition);
        CHECK(a.decomposition->host == build_family(spec));
        CHECK(verify_decomposition(*a.decomposition));
    }
    const auto c = family_answer(parse_family_spec("corona:2:kn:4"), o);
    CHECK(c.upper == 5);
    CHECK(c.lower == 5);
}

}
