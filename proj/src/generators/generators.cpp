#include "pmd/generators.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace pmd {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(what);
}

}  // namespace

Graph complete(int n) {
    require(n >= 1, "complete graph needs n >= 1");
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    }
    return Graph(n, std::move(es));
}

Graph complete_bipartite(int m, int n) {
    require(m >= 1 && n >= 1, "complete bipartite graph needs m, n >= 1");
    std::vector<Edge> es;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) es.emplace_back(i, m + j);
    }
    return Graph(m + n, std::move(es));
}

Graph path(int n) {
    require(n >= 1, "path needs n >= 1");
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph(n, std::move(es));
}

Graph cycle(int n) {
    require(n >= 3, "cycle needs n >= 3");
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(es));
}

Graph star(int n) {
    require(n >= 1, "star needs n >= 1");
    std::vector<Edge> es;
    for (int i = 1; i <= n; ++i) es.emplace_back(0, i);
    return Graph(n + 1, std::move(es));
}

MultipartiteGraph complete_multipartite(std::vector<int> sizes) {
    require(sizes.size() >= 2, "complete multipartite graph needs at least two parts");
    for (int s : sizes) require(s >= 1, "part sizes must be positive");
    MultipartiteGraph out;
    out.permutation.resize(sizes.size());
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    std::stable_sort(out.permutation.begin(), out.permutation.end(),
                     [&](int a, int b) { return sizes[static_cast<std::size_t>(a)] < sizes[static_cast<std::size_t>(b)]; });
    int next = 0;
    std::vector<int> part_of;
    for (int idx : out.permutation) {
        const int s = sizes[static_cast<std::size_t>(idx)];
        out.first.push_back(next);
        out.sizes.push_back(s);
        for (int i = 0; i < s; ++i) part_of.push_back(static_cast<int>(out.sizes.size()) - 1);
        next += s;
    }
    std::vector<Edge> es;
    for (int a = 0; a < next; ++a) {
        for (int b = a + 1; b < next; ++b) {
            if (part_of[static_cast<std::size_t>(a)] != part_of[static_cast<std::size_t>(b)]) es.emplace_back(a, b);
        }
    }
    out.graph = Graph(next, std::move(es));
    return out;
}

Graph circular_ladder(int n) {
    require(n >= 3, "circular ladder needs n >= 3");
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        es.emplace_back(i, (i + 1) % n);
        es.emplace_back(n + i, n + (i + 1) % n);
        es.emplace_back(i, n + i);
    }
    return Graph(2 * n, std::move(es));
}

Graph mobius_ladder(int n) {
    require(n >= 3, "Mobius ladder needs n >= 3");
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) {
        es.emplace_back(i, i + 1);
        es.emplace_back(n + i, n + i + 1);
    }
    es.emplace_back(n - 1, n);      // u_n v_1
    es.emplace_back(2 * n - 1, 0);  // v_n u_1
    for (int i = 0; i < n; ++i) es.emplace_back(i, n + i);
    return Graph(2 * n, std::move(es));
}

Graph generalized_petersen(int n, int k) {
    require(n >= 3 && k >= 1 && 2 * k <= n, "GP(n,k) needs n >= 3 and 1 <= k <= n/2");
    std::set<Edge> es;
    for (int i = 0; i < n; ++i) {
        es.emplace(i, (i + 1) % n);
        es.emplace(n + i, n + (i + k) % n);
        es.emplace(i, n + i);
    }
    return Graph(2 * n, std::vector<Edge>(es.begin(), es.end()));
}

Graph hypercube(int n) {
    require(n >= 1 && n <= 5, "hypercube needs 1 <= n <= 5");
    const int size = 1 << n;
    std::vector<Edge> es;
    for (int x = 0; x < size; ++x) {
        for (int b = 0; b < n; ++b) {
            const int y = x ^ (1 << b);
            if (x < y) es.emplace_back(x, y);
        }
    }
    return Graph(size, std::move(es));
}

Graph corona(const Graph& g, std::span<const int> counts) {
    require(static_cast<int>(counts.size()) == g.order(), "corona needs one count per vertex");
    std::vector<Edge> es(g.edges().begin(), g.edges().end());
    int next = g.order();
    for (Vertex v = 0; v < g.order(); ++v) {
        const int c = counts[static_cast<std::size_t>(v)];
        require(c >= 0, "pendant counts must be non-negative");
        for (int i = 0; i < c; ++i) es.emplace_back(v, next++);
    }
    return Graph(next, std::move(es));
}

Graph antler(const Graph& g, std::span<const RootedTree> trees) {
    require(static_cast<int>(trees.size()) == g.order(), "antler needs one tree per vertex");
    std::vector<Edge> es(g.edges().begin(), g.edges().end());
    int next = g.order();
    for (Vertex v = 0; v < g.order(); ++v) {
        const auto& t = trees[static_cast<std::size_t>(v)];
        require(is_forest(t.tree) && is_connected(t.tree), "antler pieces must be trees");
        std::vector<Vertex> id(static_cast<std::size_t>(t.tree.order()));
        for (Vertex x = 0; x < t.tree.order(); ++x) id[static_cast<std::size_t>(x)] = x == t.root ? v : next++;
        for (const Edge& e : t.tree.edges()) es.emplace_back(id[static_cast<std::size_t>(e.u)], id[static_cast<std::size_t>(e.v)]);
    }
    return Graph(next, std::move(es));
}

Subdivision subdivide_by_five(const Graph& g) {
    Subdivision out;
    std::vector<Edge> es;
    const int n = g.order();
    int t = 0;
    for (const Edge& e : g.edges()) {
        SubdividedEdge s;
        s.original = e;
        const int base = n + 4 * t;
        s.inner = {base, base + 1, base + 2, base + 3};
        s.path = {Edge(e.u, base), Edge(base, base + 1), Edge(base + 1, base + 2), Edge(base + 2, base + 3),
                  Edge(base + 3, e.v)};
        s.middle = s.path[2];
        es.insert(es.end(), s.path.begin(), s.path.end());
        out.edges.push_back(s);
        ++t;
    }
    out.graph = Graph(n + 4 * g.size(), std::move(es));
    return out;
}

Graph random_tree(int n, std::uint64_t seed) {
    require(n >= 1, "tree needs n >= 1");
    if (n == 1) return Graph(1);
    if (n == 2) return Graph(2, {Edge(0, 1)});
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> code(static_cast<std::size_t>(n - 2));
    for (int& c : code) c = pick(rng);

    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int c : code) ++deg[static_cast<std::size_t>(c)];
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 0; v < n; ++v) {
        if (deg[static_cast<std::size_t>(v)] == 1) leaves.push(v);
    }
    std::vector<Edge> es;
    for (int c : code) {
        const int leaf = leaves.top();
        leaves.pop();
        es.emplace_back(leaf, c);
        if (--deg[static_cast<std::size_t>(c)] == 1) leaves.push(c);
    }
    const int a = leaves.top();
    leaves.pop();
    es.emplace_back(a, leaves.top());
    return Graph(n, std::move(es));
}

Graph random_cactus(int n, std::uint64_t seed) {
    require(n >= 1, "cactus needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Edge> es;
    int count = 1;
    while (count < n) {
        const int at = std::uniform_int_distribution<int>(0, count - 1)(rng);
        const int room = n - count;
        if (room >= 2 && std::bernoulli_distribution(0.5)(rng)) {
            const int len = std::uniform_int_distribution<int>(3, std::min(6, room + 1))(rng);
            int prev = at;
            for (int i = 1; i < len; ++i) {
                es.emplace_back(prev, count);
                prev = count++;
            }
            es.emplace_back(prev, at);
        } else {
            es.emplace_back(at, count++);
        }
    }
    return Graph(n, std::move(es));
}

bool is_cactus(const Graph& g) {
    if (g.order() == 0 || !is_connected(g)) return false;
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<int> disc(n, -1);
    std::vector<int> low(n, 0);
    std::vector<Edge> stack;
    int timer = 0;
    bool ok = true;

    std::function<void(Vertex, Vertex)> dfs = [&](Vertex v, Vertex parent) {
        disc[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = timer++;
        for (Vertex w : g.neighbors(v)) {
            if (w == parent) continue;
            if (disc[static_cast<std::size_t>(w)] < 0) {
                stack.emplace_back(v, w);
                dfs(w, v);
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
                if (low[static_cast<std::size_t>(w)] >= disc[static_cast<std::size_t>(v)]) {
                    std::set<Vertex> verts;
                    std::size_t edges = 0;
                    for (;;) {
                        const Edge e = stack.back();
                        stack.pop_back();
                        verts.insert(e.u);
                        verts.insert(e.v);
                        ++edges;
                        if (e == Edge(v, w)) break;
                    }
                    if (edges > 1 && edges != verts.size()) ok = false;
                }
            } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(v)]) {
                stack.emplace_back(v, w);
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
            }
        }
    };
    dfs(0, -1);
    return ok;
}

bool is_triangle_free(const Graph& g) {
    for (const Edge& e : g.edges()) {
        for (Vertex w : g.neighbors(e.u)) {
            if (w != e.v && g.has_edge(w, e.v)) return false;
        }
    }
    return true;
}

// ---- FamilySpec -----------------------------------------------------------

namespace {

struct FamilyName {
    Family family;
    std::string_view name;
};

constexpr std::array kNames{
    FamilyName{Family::complete, "kn"},
    FamilyName{Family::complete_bipartite, "kmn"},
    FamilyName{Family::complete_multipartite, "kpartite"},
    FamilyName{Family::path, "path"},
    FamilyName{Family::cycle, "cycle"},
    FamilyName{Family::star, "star"},
    FamilyName{Family::tree_random, "tree"},
    FamilyName{Family::circular_ladder, "cl"},
    FamilyName{Family::mobius_ladder, "mob"},
    FamilyName{Family::generalized_petersen, "gp"},
    FamilyName{Family::hypercube, "q"},
    FamilyName{Family::corona, "corona"},
    FamilyName{Family::subdivision5, "sub5"},
    FamilyName{Family::cactus_random, "cactus"},
};

std::string_view name_of(Family f) {
    for (const auto& n : kNames) {
        if (n.family == f) return n.name;
    }
    return "?";
}

std::vector<long long> parse_numbers(std::string_view text, std::string_view spec) {
    std::vector<long long> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto token = text.substr(0, comma);
        long long value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
            throw ParseError("bad number '" + std::string(token) + "' in family spec '" + std::string(spec) + "'");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

void expect_count(const std::vector<long long>& nums, std::size_t lo, std::size_t hi, std::string_view spec) {
    if (nums.size() < lo || nums.size() > hi) {
        throw ParseError("wrong number of parameters in family spec '" + std::string(spec) + "'");
    }
}

}  // namespace

std::string FamilySpec::to_string() const {
    std::string out(name_of(family));
    out += ':';
    if (family == Family::corona) {
        return out + std::to_string(params.at(0)) + ":" + inner.at(0).to_string();
    }
    if (family == Family::subdivision5) return out + inner.at(0).to_string();
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(params[i]);
    }
    if (seed) out += "," + std::to_string(*seed);
    return out;
}

FamilySpec parse_family_spec(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("family spec '" + std::string(text) + "' lacks ':'");
    const auto name = text.substr(0, colon);
    const auto rest = text.substr(colon + 1);
    FamilySpec spec;
    auto it = std::find_if(kNames.begin(), kNames.end(), [&](const FamilyName& f) { return f.name == name; });
    if (it == kNames.end()) throw ParseError("unknown family '" + std::string(name) + "'");
    spec.family = it->family;

    if (spec.family == Family::subdivision5) {
        spec.inner.push_back(parse_family_spec(rest));
        return spec;
    }
    if (spec.family == Family::corona) {
        const auto second = rest.find(':');
        if (second == std::string_view::npos) throw ParseError("corona spec is corona:COUNT:SPEC");
        auto count = parse_numbers(rest.substr(0, second), text);
        expect_count(count, 1, 1, text);
        if (count[0] < 0) throw ParseError("corona count must be non-negative");
        spec.params.push_back(static_cast<int>(count[0]));
        spec.inner.push_back(parse_family_spec(rest.substr(second + 1)));
        return spec;
    }

    auto nums = parse_numbers(rest, text);
    switch (spec.family) {
        case Family::complete_multipartite: expect_count(nums, 2, 64, text); break;
        case Family::complete_bipartite:
        case Family::generalized_petersen: expect_count(nums, 2, 2, text); break;
        case Family::tree_random:
        case Family::cactus_random:
            expect_count(nums, 1, 2, text);
            if (nums.size() == 2) {
                if (nums[1] < 0) throw ParseError("seed must be non-negative");
                spec.seed = static_cast<std::uint64_t>(nums[1]);
                nums.pop_back();
            }
            break;
        default: expect_count(nums, 1, 1, text); break;
    }
    for (long long v : nums) {
        if (v < 0 || v > 1000000) throw ParseError("parameter out of range in '" + std::string(text) + "'");
        spec.params.push_back(static_cast<int>(v));
    }
    return spec;
}

Graph build_family(const FamilySpec& spec) {
    const auto& p = spec.params;
    auto at = [&](std::size_t i) { return p.at(i); };
    switch (spec.family) {
        case Family::complete: return complete(at(0));
        case Family::complete_bipartite: return complete_bipartite(at(0), at(1));
        case Family::complete_multipartite: return complete_multipartite(p).graph;
        case Family::path: return path(at(0));
        case Family::cycle: return cycle(at(0));
        case Family::star: return star(at(0));
        case Family::tree_random: return random_tree(at(0), spec.seed.value_or(0));
        case Family::circular_ladder: return circular_ladder(at(0));
        case Family::mobius_ladder: return mobius_ladder(at(0));
        case Family::generalized_petersen: return generalized_petersen(at(0), at(1));
        case Family::hypercube: return hypercube(at(0));
        case Family::corona: {
            Graph base = build_family(spec.inner.at(0));
            std::vector<int> counts(static_cast<std::size_t>(base.order()), at(0));
            return corona(base, counts);
        }
        case Family::subdivision5: return subdivide_by_five(build_family(spec.inner.at(0))).graph;
        case Family::cactus_random: return random_cactus(at(0), spec.seed.value_or(0));
    }
    throw Error("unhandled family");
}

}  // namespace pmd
