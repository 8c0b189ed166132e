// One PASS/FAIL line per acceptance criterion.
//
//   acceptance [--only N[,N...]] [--expect-fail N[,N...]]
//
// All value comparisons are exact integer equality. Each criterion also has
// a wall-clock limit; exceeding it is a FAIL. The exit status is 0 when the
// set of failing criteria equals the --expect-fail set.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "pmd/family.hpp"
#include "pmd/generators.hpp"

using namespace pmd;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Every solved instance passes through here; criterion 8 reports the tally.
struct Sanity {
    long checked = 0;
    std::vector<std::string> violations;

    void check(const Graph& g, int value, std::optional<int> kappa = std::nullopt) {
        ++checked;
        auto v = testing::bounds_violation(g, value, kappa);
        if (!v.empty() && violations.size() < 10) violations.push_back(emit_graph6(g) + ":" + v);
        if (!v.empty()) ++bad;
    }
    long bad = 0;
};

Sanity sanity;

int solve(const Graph& g, SolverOptions o = {}) {
    if (o.max_core_vertices == 16) o.max_core_vertices = 64;
    const auto r = pmd_exact(g, o);
    if (!r.exact()) throw Error("solver budget exhausted on " + emit_graph6(g));
    if (!r.decomposition || !verify_decomposition(*r.decomposition) || r.decomposition->size() != r.value) {
        throw InternalError("solver witness failed on " + emit_graph6(g));
    }
    sanity.check(g, r.value);
    return r.value;
}

class Mismatches {
public:
    void expect(const std::string& what, int got, int want) {
        ++total_;
        if (got == want) return;
        if (bad_ < 12) list_ += (list_.empty() ? "" : "; ") + what + " = " + std::to_string(got) + " (want " + std::to_string(want) + ")";
        ++bad_;
    }
    void fail(const std::string& what) {
        ++total_;
        ++bad_;
        list_ += (list_.empty() ? "" : "; ") + what;
    }
    Outcome outcome(const std::string& label) const {
        std::string d = std::to_string(total_ - bad_) + "/" + std::to_string(total_) + " " + label;
        if (bad_) d += "; mismatches: " + list_;
        return {bad_ == 0, d};
    }

private:
    int total_ = 0;
    int bad_ = 0;
    std::string list_;
};

std::string gp_name(int n, int k) { return "GP(" + std::to_string(n) + "," + std::to_string(k) + ")"; }

Outcome family_exactness() {
    Mismatches m;
    for (int n = 2; n <= 6; ++n) m.expect("K_" + std::to_string(n), solve(complete(n)), 2 * n - 3);
    for (int a = 1; a <= 7; ++a) {
        for (int b = a; a + b <= 8; ++b) {
            m.expect("K_{" + std::to_string(a) + "," + std::to_string(b) + "}", solve(complete_bipartite(a, b)), a + b - 1);
        }
    }
    for (int n = 3; n <= 10; ++n) m.expect("C_" + std::to_string(n), solve(cycle(n)), 3);
    std::mt19937_64 rng(20240101);
    for (int i = 0; i < 50; ++i) {
        const int n = std::uniform_int_distribution<int>(2, 12)(rng);
        const Graph t = random_tree(n, rng());
        m.expect("tree " + emit_graph6(t), solve(t), max_degree(t));
    }
    return m.outcome("instances equal");
}

Outcome ladder_table() {
    Mismatches m;
    for (int n : {3, 5, 6}) m.expect("CL_" + std::to_string(n), solve(circular_ladder(n)), 4);
    m.expect("CL_4", solve(circular_ladder(4)), 5);
    for (int n = 3; n <= 6; ++n) m.expect("M_" + std::to_string(n), solve(mobius_ladder(n)), 4);
    for (int n = 3; n <= 8; ++n) {
        for (int k = 1; 2 * k <= n; ++k) {
            m.expect(gp_name(n, k), solve(generalized_petersen(n, k)), gp_literal_value(n, k));
        }
    }
    return m.outcome("claimed values reproduced");
}

Outcome multipartite() {
    Mismatches m;
    m.expect("K_{2,2,2}", solve(complete_multipartite({2, 2, 2}).graph), 6);
    m.expect("K_{2,2,3}", solve(complete_multipartite({2, 2, 3}).graph), 7);
    for (int a = 1; a <= 5; ++a) {
        for (int b = a; a + b <= 6; ++b) {
            m.expect("K_{1," + std::to_string(a) + "," + std::to_string(b) + "}",
                     solve(complete_multipartite({1, a, b}).graph), a + b + 1);
        }
    }
    // interval containment on every complete multipartite graph with N <= 8
    int intervals = 0;
    std::function<void(std::vector<int>, int, int)> parts = [&](std::vector<int> cur, int left, int max_part) {
        if (left == 0) {
            if (cur.size() < 2) return;
            const int v = solve(complete_multipartite(cur).graph);
            const auto a = multipartite_bounds(cur);
            ++intervals;
            if (v < a.lower || v > a.upper) {
                std::string name = "K_{";
                for (int s : cur) name += std::to_string(s) + ",";
                name.back() = '}';
                m.fail(name + " = " + std::to_string(v) + " outside [" + std::to_string(a.lower) + "," +
                       std::to_string(a.upper) + "]");
            }
            return;
        }
        for (int s = std::min(left, max_part); s >= 1; --s) {
            cur.push_back(s);
            parts(cur, left - s, s);
            cur.pop_back();
        }
    };
    for (int total = 2; total <= 8; ++total) parts({}, total, total);
    auto out = m.outcome("checks hold");
    out.detail += " (" + std::to_string(intervals) + " intervals)";
    return out;
}

Outcome oracle_equivalence() {
    Mismatches m;
    for (const Graph& g : testing::load_corpus("connected_upto7.g6")) {
        if (g.size() > 6) continue;
        m.expect(emit_graph6(g), solve(g), pmd_bruteforce_oracle(g));
    }
    return m.outcome("connected graphs with <= 6 edges agree");
}

Outcome four_routes() {
    long matchings = 0;
    long positive = 0;
    std::vector<std::string> bad;
    for (const Graph& g : testing::load_corpus("connected_upto7.g6")) {
        const auto es = g.edges();
        std::vector<Edge> cur;
        std::uint64_t used = 0;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == es.size()) {
                if (cur.empty()) return;
                const Matching m(g, cur);
                const auto order = peel_order(g, m);
                const bool peel = order.has_value();
                const bool no_walk = !find_alternating_closed_walk(g, m);
                const bool search = search_weight_certificate(g, m, certificate_magnitude_bound(m.size())).has_value();
                const bool built = peel && verify_certificate(g, m, build_weight_certificate(g, m, *order));
                ++matchings;
                positive += peel;
                if ((peel != no_walk || peel != search || peel != built) && bad.size() < 5) {
                    bad.push_back(emit_graph6(g));
                }
                return;
            }
            rec(i + 1);
            const std::uint64_t ends = (std::uint64_t{1} << es[i].u) | (std::uint64_t{1} << es[i].v);
            if ((used & ends) == 0) {
                used |= ends;
                cur.push_back(es[i]);
                rec(i + 1);
                cur.pop_back();
                used &= ~ends;
            }
        };
        rec(0);
    }
    std::string d = std::to_string(matchings) + " matchings (" + std::to_string(positive) + " positive)";
    if (!bad.empty()) {
        d += "; disagreement on";
        for (const auto& b : bad) d += " " + b;
    }
    return {bad.empty(), d};
}

Outcome antler_property() {
    Mismatches m;
    const auto corpus = testing::load_corpus("connected_upto7.g6");
    std::vector<Graph> cores;
    for (const Graph& g : corpus) {
        if (g.order() >= 3 && g.order() <= 6 && min_degree(g) >= 2) cores.push_back(g);
    }
    std::mt19937_64 rng(7);
    SolverOptions plain;
    plain.use_pendant_reduction = false;
    plain.max_core_vertices = 64;
    for (int i = 0; i < 100; ++i) {
        const Graph& core = cores[std::uniform_int_distribution<std::size_t>(0, cores.size() - 1)(rng)];
        Graph g;
        if (i % 2 == 0) {
            std::vector<int> counts(static_cast<std::size_t>(core.order()));
            for (int& c : counts) c = std::uniform_int_distribution<int>(0, 2)(rng);
            g = corona(core, counts);
        } else {
            std::vector<RootedTree> trees;
            for (Vertex v = 0; v < core.order(); ++v) {
                const int n = std::uniform_int_distribution<int>(1, 4)(rng);
                const Graph t = random_tree(n, rng());
                trees.push_back({t, std::uniform_int_distribution<Vertex>(0, n - 1)(rng)});
            }
            g = antler(core, trees);
        }
        const int whole = solve(g, plain);
        m.expect("antler of " + emit_graph6(core) + " -> " + emit_graph6(g), whole,
                 std::max(solve(core), max_degree(g)));
    }
    return m.outcome("pairs satisfy pmd = max(pmd(core), Delta)");
}

Outcome algorithm_fidelity() {
    using testing::x;
    using testing::y;
    Mismatches m;
    const auto lab = testing::sample_labeling();
    const auto left = run_slope_algorithm(testing::slope_sample_a(), lab);
    const std::vector<std::vector<Edge>> left_parts{testing::sorted({{x(3), y(1)}, {x(1), y(2)}}),
                                                    testing::sorted({{x(2), y(1)}, {x(3), y(2)}, {x(1), y(3)}}),
                                                    testing::sorted({{x(2), y(3)}})};
    if (left.parts.parts != left_parts) m.fail("left parts differ from the claimed ones");
    m.expect("left kappa(tau)", left.kappa, 3);
    m.expect("left slopes", left.slope_count, 4);
    const Graph rg = testing::slope_sample_b();
    const auto right = run_slope_algorithm(rg, lab);
    const std::vector<std::vector<Edge>> right_parts{testing::sorted({{x(3), y(1)}, {x(2), y(3)}}),
                                                     testing::sorted({{x(1), y(1)}, {x(3), y(3)}}),
                                                     testing::sorted({{x(1), y(2)}}), testing::sorted({{x(1), y(3)}})};
    if (right.parts.parts != right_parts) m.fail("right parts differ from the claimed ones");
    m.expect("right kappa(tau)", right.kappa, 4);
    const int p = solve(rg);
    m.expect("right pmd", p, 3);
    sanity.check(rg, p, right.kappa);
    sanity.check(testing::slope_sample_a(), solve(testing::slope_sample_a()), left.kappa);
    return m.outcome("claimed facts reproduced");
}

Outcome hypercube_construction(std::string& note) {
    Mismatches m;
    for (int n = 1; n <= 4; ++n) {
        const auto a = hypercube_decomposition(n);
        if (!a.decomposition || !verify_decomposition(*a.decomposition)) {
            m.fail("Q_" + std::to_string(n) + " construction does not verify");
            continue;
        }
        m.expect("Q_" + std::to_string(n) + " parts", a.decomposition->size(), 2 * n - 1);
    }
    const int q3 = solve(hypercube(3));
    note = "pmd(Q_3) = " + std::to_string(q3) + (q3 == 5 ? " (matches 2n-1)" : " (DIFFERS from 2n-1 = 5)");
    return m.outcome("constructions verified");
}

Outcome subdivision() {
    Mismatches m;
    for (const auto& [name, g] : {std::pair{"K_4", complete(4)}, std::pair{"K_{1,3}", star(3)}}) {
        const auto sm = subdivision_positive_matching(g);
        const Graph& h = sm.subdivision.graph;
        if (!is_positive(h, Matching(h, sm.matching))) m.fail(std::string(name) + " matching not positive");
        if (!verify_decomposition(sm.decomposition)) m.fail(std::string(name) + " decomposition invalid");
        m.expect(std::string(name) + " construction parts", sm.decomposition.size(), max_degree(h));
        m.expect(std::string(name) + " solver", solve(h), max_degree(h));
    }
    m.expect("K_4 matching size", static_cast<int>(subdivision_positive_matching(complete(4)).matching.size()), 10);
    return m.outcome("checks hold");
}

Outcome two_delta_scan() {
    const auto corpus = testing::load_corpus("connected_upto7.g6");
    SolverOptions o;
    o.max_core_vertices = 64;
    const int jobs = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    const auto rep = scan_two_delta(corpus, o, jobs);
    for (const auto& r : rep.records) {
        if (r.is_exact()) sanity.check(parse_graph6(r.graph6), r.upper);
    }
    const bool ok = rep.hits.empty() && rep.skipped == 0 &&
                    rep.summary.find("none found in corpus") != std::string::npos;
    return {ok, rep.summary};
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::istringstream in(s);
    for (std::string item; std::getline(in, item, ',');) out.insert(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    std::set<int> expected;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--only") {
            only = parse_list(argv[i + 1]);
        } else if (flag == "--expect-fail") {
            expected = parse_list(argv[i + 1]);
        } else {
            std::cerr << "unknown option " << flag << '\n';
            return 2;
        }
    }

    std::string q3_note;
    struct Criterion {
        int id;
        std::string title;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    // 8 runs last: it reports on every instance solved by the others.
    const std::vector<Criterion> criteria{
        {1, "family exactness", 60, family_exactness},
        {2, "ladder, Mobius and GP table", 600, ladder_table},
        {3, "multipartite values and interval", 600, multipartite},
        {4, "oracle equivalence", 300, oracle_equivalence},
        {5, "four-way positivity equivalence", 600, four_routes},
        {6, "pendant core identity", 600, antler_property},
        {7, "slope algorithm fidelity", 1, algorithm_fidelity},
        {9, "hypercube construction", 300, [&] { return hypercube_construction(q3_note); }},
        {10, "subdivision construction", 120, subdivision},
        {11, "2*Delta-1 scan", 1800, two_delta_scan},
        {8, "bounds sanity", 1e9, [] {
             Outcome o;
             o.pass = sanity.bad == 0;
             o.detail = std::to_string(sanity.checked) + " solved instances checked, " + std::to_string(sanity.bad) +
                        " violations";
             for (const auto& v : sanity.violations) o.detail += "; " + v;
             return o;
         }},
    };

    std::map<int, std::string> lines;
    std::set<int> failed;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.contains(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds) {
            o.pass = false;
            o.detail += "; over the time limit";
        }
        if (c.id == 9 && !q3_note.empty()) o.detail += "; " + q3_note;
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " (" << std::fixed;
        line.precision(2);
        line << secs << " s";
        if (c.limit_seconds < 1e8) line << ", limit " << c.limit_seconds << " s";
        line << "): " << o.detail;
        lines[c.id] = line.str();
        if (!o.pass) failed.insert(c.id);
        std::cerr << "  done " << c.id << '\n';
    }
    for (const auto& [id, line] : lines) std::cout << line << '\n';

    bool as_expected = true;
    for (int id : failed) {
        if (!expected.contains(id)) {
            std::cout << "unexpected FAIL: " << id << '\n';
            as_expected = false;
        }
    }
    for (int id : expected) {
        if (lines.contains(id) && !failed.contains(id)) {
            std::cout << "unexpected PASS: " << id << " (remove it from --expect-fail)\n";
            as_expected = false;
        }
    }
    if (!expected.empty()) {
        std::cout << "expected failures:";
        for (int id : expected) std::cout << ' ' << id;
        std::cout << (as_expected ? " (failed as documented)" : "") << '\n';
    }
    return as_expected ? 0 : 1;
}
