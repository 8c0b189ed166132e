#include "pmd/slope.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "pmd/graph_io.hpp"

namespace pmd {

namespace {

struct Positions {
    std::vector<int> x;  // 1-based position on the x side, 0 if absent
    std::vector<int> y;
};

Positions positions(const Graph& g, const SlopeLabeling& lab) {
    Positions p{std::vector<int>(static_cast<std::size_t>(g.order()), 0),
                std::vector<int>(static_cast<std::size_t>(g.order()), 0)};
    auto place = [&](const std::vector<Vertex>& side, std::vector<int>& pos) {
        for (std::size_t i = 0; i < side.size(); ++i) {
            const Vertex v = side[i];
            if (v < 0 || v >= g.order()) throw Error("labeling names vertex " + std::to_string(v) + " outside the graph");
            if (p.x[static_cast<std::size_t>(v)] || p.y[static_cast<std::size_t>(v)]) {
                throw Error("labeling lists vertex " + std::to_string(v) + " twice");
            }
            pos[static_cast<std::size_t>(v)] = static_cast<int>(i) + 1;
        }
    };
    place(lab.x, p.x);
    place(lab.y, p.y);
    return p;
}

// Slope with the x end first; throws when the edge stays inside a side or
// touches an unlabeled vertex.
int slope_at(const Positions& p, const Edge& e) {
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    if (p.x[u] && p.y[v]) return p.y[v] - p.x[u];
    if (p.x[v] && p.y[u]) return p.y[u] - p.x[v];
    throw Error("edge " + to_string(e) + " does not join the two labeled sides");
}

Vertex x_end(const Positions& p, const Edge& e) { return p.x[static_cast<std::size_t>(e.u)] ? e.u : e.v; }
Vertex y_end(const Positions& p, const Edge& e) { return p.x[static_cast<std::size_t>(e.u)] ? e.v : e.u; }

// Parts as edge indices; the labeling is assumed valid.
std::vector<std::vector<int>> sweep(const Graph& g, const Positions& p) {
    const auto edges = g.edges();
    const auto m = edges.size();
    std::vector<int> s(m);
    for (std::size_t k = 0; k < m; ++k) s[k] = slope_at(p, edges[k]);
    std::vector<bool> alive(m, true);
    std::size_t left = m;
    std::vector<std::vector<int>> parts;
    const auto n = static_cast<std::size_t>(g.order());
    while (left > 0) {
        std::vector<bool> in_x(n, false);
        for (std::size_t k = 0; k < m; ++k) {
            if (alive[k]) in_x[static_cast<std::size_t>(x_end(p, edges[k]))] = true;
        }
        std::vector<bool> in_y(n, false);
        std::vector<int> part;
        for (;;) {
            int best = 0;
            bool any = false;
            for (std::size_t k = 0; k < m; ++k) {
                if (alive[k] && in_x[static_cast<std::size_t>(x_end(p, edges[k]))] && (!any || s[k] < best)) {
                    best = s[k];
                    any = true;
                }
            }
            if (!any) break;
            std::vector<int> level;
            for (std::size_t k = 0; k < m; ++k) {
                if (alive[k] && s[k] == best && in_x[static_cast<std::size_t>(x_end(p, edges[k]))]) {
                    level.push_back(static_cast<int>(k));
                }
            }
            for (int k : level) {
                if (!in_y[static_cast<std::size_t>(y_end(p, edges[static_cast<std::size_t>(k)]))]) part.push_back(k);
            }
            for (int k : level) {
                in_x[static_cast<std::size_t>(x_end(p, edges[static_cast<std::size_t>(k)]))] = false;
                in_y[static_cast<std::size_t>(y_end(p, edges[static_cast<std::size_t>(k)]))] = true;
            }
        }
        for (int k : part) alive[static_cast<std::size_t>(k)] = false;
        left -= part.size();
        parts.push_back(std::move(part));
    }
    return parts;
}

int count_slopes(const Graph& g, const Positions& p) {
    std::set<int> seen;
    for (const Edge& e : g.edges()) seen.insert(slope_at(p, e));
    return static_cast<int>(seen.size());
}

struct Sides {
    std::vector<std::vector<Vertex>> a;  // per component: the side holding the smallest id
    std::vector<std::vector<Vertex>> b;
};

Sides component_sides(const Graph& g) {
    auto bip = bipartition_of(g);
    if (!bip) throw Error("graph is not bipartite");
    std::vector<bool> on_x(static_cast<std::size_t>(g.order()), false);
    for (Vertex v : bip->x_side) on_x[static_cast<std::size_t>(v)] = true;
    Sides s;
    for (const auto& comp : connected_components(g)) {
        if (comp.size() < 2) continue;
        std::vector<Vertex> a;
        std::vector<Vertex> b;
        for (Vertex v : comp) (on_x[static_cast<std::size_t>(v)] ? a : b).push_back(v);
        s.a.push_back(std::move(a));
        s.b.push_back(std::move(b));
    }
    return s;
}

SlopeLabeling orientation(const Sides& s, std::uint64_t flips) {
    SlopeLabeling lab;
    for (std::size_t c = 0; c < s.a.size(); ++c) {
        const bool flip = (flips >> c) & 1U;
        const auto& xs = flip ? s.b[c] : s.a[c];
        const auto& ys = flip ? s.a[c] : s.b[c];
        lab.x.insert(lab.x.end(), xs.begin(), xs.end());
        lab.y.insert(lab.y.end(), ys.begin(), ys.end());
    }
    std::sort(lab.x.begin(), lab.x.end());
    std::sort(lab.y.begin(), lab.y.end());
    return lab;
}

struct Tracker {
    const Graph& g;
    std::optional<SlopeLabeling> best;
    int best_kappa = 0;
    int min_slopes = 0;
    int kappa_at_min = 0;
    std::uint64_t tried = 0;

    int evaluate(const SlopeLabeling& lab) {
        const auto p = positions(g, lab);
        const int kappa = static_cast<int>(sweep(g, p).size());
        const int slopes = count_slopes(g, p);
        if (tried == 0 || kappa < best_kappa) {
            best_kappa = kappa;
            best = lab;
        }
        if (tried == 0 || slopes < min_slopes) {
            min_slopes = slopes;
            kappa_at_min = kappa;
        } else if (slopes == min_slopes) {
            kappa_at_min = std::min(kappa_at_min, kappa);
        }
        ++tried;
        return kappa;
    }
};

}  // namespace

SlopeLabeling default_labeling(const Graph& g) {
    return orientation(component_sides(g), 0);
}

int slope(const SlopeLabeling& labeling, const Edge& e) {
    auto pos = [](const std::vector<Vertex>& side, Vertex v) {
        auto it = std::find(side.begin(), side.end(), v);
        return it == side.end() ? 0 : static_cast<int>(it - side.begin()) + 1;
    };
    if (int i = pos(labeling.x, e.u), j = pos(labeling.y, e.v); i && j) return j - i;
    if (int i = pos(labeling.x, e.v), j = pos(labeling.y, e.u); i && j) return j - i;
    throw Error("edge " + to_string(e) + " does not join the two labeled sides");
}

int slope_count(const Graph& g, const SlopeLabeling& labeling) {
    return count_slopes(g, positions(g, labeling));
}

KappaReport run_slope_algorithm(const Graph& g, const SlopeLabeling& labeling) {
    const auto p = positions(g, labeling);
    KappaReport report;
    report.labeling = labeling;
    report.parts.host = g;
    for (const auto& idx : sweep(g, p)) {
        std::vector<Edge> part;
        for (int k : idx) part.push_back(g.edges()[static_cast<std::size_t>(k)]);
        std::sort(part.begin(), part.end());
        report.parts.parts.push_back(std::move(part));
    }
    report.kappa = report.parts.size();
    report.slope_count = count_slopes(g, p);
    auto check = verify_decomposition(report.parts);
    if (!check) throw InternalError("slope sweep produced an invalid decomposition: " + check.message);
    return report;
}

KappaSearchResult kappa_search(const Graph& g, const KappaSearchOptions& options) {
    const Sides sides = component_sides(g);
    if (sides.a.size() > 20) throw Error("too many components for a labeling search");
    const std::uint64_t orientations = std::uint64_t{1} << sides.a.size();
    Tracker t{g, std::nullopt};
    KappaSearchResult result;

    if (options.mode == KappaMode::exhaustive) {
        bool done = true;
        for (std::uint64_t f = 0; f < orientations && done; ++f) {
            SlopeLabeling lab = orientation(sides, f);
            do {
                do {
                    if (t.tried >= options.max_labelings) {
                        done = false;
                        break;
                    }
                    t.evaluate(lab);
                } while (std::next_permutation(lab.y.begin(), lab.y.end()));
            } while (done && std::next_permutation(lab.x.begin(), lab.x.end()));
        }
        result.certified = done;
        result.budget_exhausted = !done;
    } else {
        std::mt19937_64 rng(options.seed);
        for (int r = 0; r < options.restarts && t.tried < options.max_labelings; ++r) {
            SlopeLabeling lab = orientation(sides, std::uniform_int_distribution<std::uint64_t>(0, orientations - 1)(rng));
            std::shuffle(lab.x.begin(), lab.x.end(), rng);
            std::shuffle(lab.y.begin(), lab.y.end(), rng);
            int current = t.evaluate(lab);
            bool improved = true;
            while (improved && t.tried < options.max_labelings) {
                improved = false;
                for (auto* side : {&lab.x, &lab.y}) {
                    for (std::size_t i = 0; i + 1 < side->size() && !improved; ++i) {
                        if (t.tried >= options.max_labelings) break;
                        std::swap((*side)[i], (*side)[i + 1]);
                        const int k = t.evaluate(lab);
                        if (k < current) {
                            current = k;
                            improved = true;
                        } else {
                            std::swap((*side)[i], (*side)[i + 1]);
                        }
                    }
                    if (improved) break;
                }
            }
        }
        result.budget_exhausted = t.tried >= options.max_labelings;
    }
    result.labelings_tried = t.tried;
    result.min_slope_count = t.min_slopes;
    result.kappa_at_min_slopes = t.kappa_at_min;
    result.best = run_slope_algorithm(g, t.best.value_or(SlopeLabeling{}));
    return result;
}

QuestionReport question_scan(const std::vector<Graph>& corpus, const SolverOptions& solver, std::uint64_t max_labelings) {
    QuestionReport report;
    for (const Graph& g : corpus) {
        QuestionRecord rec;
        rec.graph6 = emit_graph6(g);
        rec.order = g.order();
        rec.size = g.size();
        auto skip = [&](std::string why) {
            rec.skipped = true;
            rec.reason = std::move(why);
            ++report.skipped;
        };
        if (g.empty()) {
            skip("edgeless");
        } else if (!bipartition_of(g)) {
            skip("not bipartite");
        } else {
            try {
                KappaSearchOptions opt;
                opt.max_labelings = max_labelings;
                auto k = kappa_search(g, opt);
                auto r = pmd_exact(g, solver);
                if (!k.certified) {
                    skip("labeling budget exhausted");
                } else if (!r.exact()) {
                    skip("solver budget exhausted");
                } else {
                    rec.pmd = r.value;
                    rec.kappa = k.best.kappa;
                    rec.min_slopes = k.min_slope_count;
                    rec.kappa_at_min_slopes = k.kappa_at_min_slopes;
                    rec.kappa_exceeds_pmd = rec.pmd < rec.kappa;
                    rec.kappa_below_min_slopes = rec.kappa_at_min_slopes < rec.min_slopes;
                    report.kappa_exceeds_pmd += rec.kappa_exceeds_pmd ? 1 : 0;
                    report.kappa_below_min_slopes += rec.kappa_below_min_slopes ? 1 : 0;
                }
            } catch (const CapExceeded& e) {
                skip(e.what());
            }
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

}  // namespace pmd
