#include <doctest.h>

#include <functional>

#include "fixtures.hpp"
#include "pmd/family.hpp"
#include "pmd/generators.hpp"

using namespace pmd;

namespace {

std::vector<std::vector<Edge>> all_matchings(const Graph& g) {
    std::vector<std::vector<Edge>> out;
    std::vector<Edge> cur;
    std::vector<bool> used(static_cast<std::size_t>(g.order()), false);
    const auto es = g.edges();
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == es.size()) {
            if (!cur.empty()) out.push_back(cur);
            return;
        }
        rec(i + 1);
        const Edge e = es[i];
        if (!used[static_cast<std::size_t>(e.u)] && !used[static_cast<std::size_t>(e.v)]) {
            used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = true;
            cur.push_back(e);
            rec(i + 1);
            cur.pop_back();
            used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = false;
        }
    };
    rec(0);
    return out;
}

}  // namespace

TEST_SUITE("positive_matching") {

TEST_CASE("matching construction") {
    CHECK_THROWS_AS(Matching(path(3), {{0, 1}, {1, 2}}), Error);
    CHECK_THROWS_AS(Matching(path(3), {{0, 2}}), Error);
    const Matching m(path(4), {{2, 3}, {0, 1}});
    CHECK(m.edges().front() == Edge(0, 1));
    CHECK(m.partner(3) == 2);
    CHECK(m.partner(5) == -1);
    CHECK(m.vertices() == std::vector<Vertex>{0, 1, 2, 3});
}

TEST_CASE("alternating square") {
    const Graph c4 = cycle(4);
    const Matching m(c4, {{0, 1}, {2, 3}});
    CHECK_FALSE(is_positive(c4, m));
    CHECK_FALSE(peel_order(c4, m));
    auto walk = find_alternating_closed_walk(c4, m);
    REQUIRE(walk);
    CHECK(walk->length() == 4);
    CHECK(walk->to_string() == "0-1-2-3-0");
    CHECK(is_alternating_closed_walk(c4, m, *walk));
    CHECK_FALSE(search_weight_certificate(c4, m, certificate_magnitude_bound(2)));
}

TEST_CASE("hexagon alternates around") {
    const Graph c6 = cycle(6);
    const Matching m(c6, {{0, 1}, {2, 3}, {4, 5}});
    auto walk = find_alternating_closed_walk(c6, m);
    REQUIRE(walk);
    CHECK(walk->length() == 6);
    CHECK(is_alternating_closed_walk(c6, m, *walk));
}

TEST_CASE("single edges and paths are positive") {
    const Graph k5 = complete(5);
    for (const Edge& e : k5.edges()) CHECK(is_positive(k5, Matching(k5, {e})));
    const Graph p4 = path(4);
    const Matching m(p4, {{0, 1}, {2, 3}});
    auto order = peel_order(p4, m);
    REQUIRE(order);
    CHECK(is_valid_peel_order(p4, order->edges));
    CHECK_FALSE(find_alternating_closed_walk(p4, m));
    const auto cert = build_weight_certificate(p4, m, *order);
    CHECK(verify_certificate(p4, m, cert));
    const auto& w = cert.weights;
    CHECK(w.at(0) + w.at(1) > 0);
    CHECK(w.at(2) + w.at(3) > 0);
    CHECK(w.at(1) + w.at(2) < 0);
}

TEST_CASE("peel order validation") {
    const Graph p4 = path(4);
    CHECK(is_valid_peel_order(p4, std::vector<Edge>{{0, 1}, {2, 3}}));
    // the middle edge is not pendant among its own vertices once both ends are present
    const Graph c4 = cycle(4);
    CHECK_FALSE(is_valid_peel_order(c4, std::vector<Edge>{{0, 1}, {2, 3}}));
    CHECK_THROWS_AS(build_weight_certificate(c4, Matching(c4, {{0, 1}, {2, 3}}), PeelOrder{{{0, 1}, {2, 3}}}), Error);
}

TEST_CASE("certificate verification rejects bad weights") {
    const Graph p4 = path(4);
    const Matching m(p4, {{0, 1}, {2, 3}});
    const auto cert = build_weight_certificate(p4, m, *peel_order(p4, m));
    WeightCertificate zero;
    for (Vertex v : m.vertices()) zero.weights[v] = 0;
    CHECK_FALSE(verify_certificate(p4, m, zero));
    WeightCertificate negated = cert;
    for (auto& [v, w] : negated.weights) w = -w;
    CHECK_FALSE(verify_certificate(p4, m, negated));
    WeightCertificate missing = cert;
    missing.weights.erase(3);
    CHECK_THROWS_AS(verify_certificate(p4, m, missing), Error);
}

TEST_CASE("certificates stay within 3k") {
    for (const Graph& g : testing::load_corpus("connected_upto7.g6")) {
        if (g.order() > 6) continue;
        for (const auto& es : all_matchings(g)) {
            const Matching m(g, es);
            auto order = peel_order(g, m);
            if (!order) continue;
            const auto cert = build_weight_certificate(g, m, *order);
            for (const auto& [v, w] : cert.weights) REQUIRE(std::llabs(w) <= certificate_magnitude_bound(m.size()));
        }
    }
}

TEST_CASE("stub matching on the subdivided diamond") {
    const Graph g = testing::diamond();
    const auto stubs = testing::diamond_stubs(g);
    const auto sm = subdivision_positive_matching(g, stubs);
    CHECK(sm.matching.size() == 9);
    const Graph& h = sm.subdivision.graph;
    const Matching m(h, sm.matching);
    auto order = peel_order(h, m);
    REQUIRE(order);
    CHECK(verify_certificate(h, m, build_weight_certificate(h, m, *order)));
    // the five middle edges a'b', b'c', c'd', d'a', a'c' are all present
    for (const auto& se : sm.subdivision.edges) CHECK(m.contains(se.middle));
}

TEST_CASE("four recognition routes agree on small graphs") {
    int matchings = 0;
    int positive = 0;
    for (const Graph& g : testing::load_corpus("connected_upto7.g6")) {
        if (g.order() > 5) continue;
        for (const auto& es : all_matchings(g)) {
            const Matching m(g, es);
            const auto order = peel_order(g, m);
            const bool peel = order.has_value();
            const bool no_walk = !find_alternating_closed_walk(g, m);
            const bool search = search_weight_certificate(g, m, certificate_magnitude_bound(m.size())).has_value();
            const bool built = peel && verify_certificate(g, m, build_weight_certificate(g, m, *order));
            REQUIRE(peel == no_walk);
            REQUIRE(peel == search);
            REQUIRE(peel == built);
            ++matchings;
            positive += peel ? 1 : 0;
        }
    }
    CHECK(matchings > 0);
    CHECK(positive < matchings);
}

TEST_CASE("maximum positive matching") {
    CHECK(max_positive_matching(path(4)).size() == 2);
    CHECK(max_positive_matching(cycle(4)).size() == 1);
    // exhaustive cross-check on K_{3,3}
    const Graph k33 = complete_bipartite(3, 3);
    int best = 0;
    for (const auto& es : all_matchings(k33)) {
        if (is_positive(k33, Matching(k33, es))) best = std::max(best, static_cast<int>(es.size()));
    }
    CHECK(max_positive_matching(k33).size() == best);
    // any two disjoint edges of K_{3,3} close an alternating 4-cycle
    CHECK(best == 1);
    CHECK_THROWS_AS(max_positive_matching(complete(15)), CapExceeded);
}

TEST_CASE("matching digraph") {
    const Graph c6 = cycle(6);
    const Matching m(c6, {{0, 1}, {2, 3}, {4, 5}});
    const auto b = align_to_matching(c6, *bipartition_of(c6), m);
    const auto d = matching_digraph(c6, b, m);
    CHECK(d.order() == 3);
    CHECK(d.arcs().size() == 3);
    CHECK(d.find_cycle());

    const Graph k22 = complete_bipartite(2, 2);
    const Matching pm(k22, {{0, 2}, {1, 3}});
    const auto d2 = matching_digraph(k22, align_to_matching(k22, *bipartition_of(k22), pm), pm);
    CHECK(d2.arcs().size() == 2);

    const Graph two(4, {{0, 2}, {1, 3}});
    const Matching tm(two, {{0, 2}, {1, 3}});
    const Bipartition sides{{0, 1}, {2, 3}};
    CHECK(matching_digraph(two, align_to_matching(two, sides, tm), tm).arcs().size() == 0);
}

TEST_CASE("splitting a matching into positive parts") {
    const Graph p4 = path(4);
    const Matching pos(p4, {{0, 1}, {2, 3}});
    CHECK(split_matching_min_positive(p4, pos).parts.size() == 1);

    const Graph c6 = cycle(6);
    const auto split = split_matching_min_positive(c6, Matching(c6, {{0, 1}, {2, 3}, {4, 5}}), SplitMode::exact);
    CHECK(split.parts.size() == 2);
    CHECK(split.minimum);

    const Graph k33 = complete_bipartite(3, 3);
    const Matching pm(k33, {{0, 3}, {1, 4}, {2, 5}});
    const auto s33 = split_matching_min_positive(k33, pm, SplitMode::exact);
    CHECK(s33.parts.size() == 3);
    for (const auto& part : s33.parts) CHECK(is_positive(k33, part));
    const auto greedy = split_matching_min_positive(k33, pm, SplitMode::greedy);
    int covered = 0;
    for (const auto& part : greedy.parts) {
        CHECK(is_positive(k33, part));
        covered += part.size();
    }
    CHECK(covered == 3);
}

}
