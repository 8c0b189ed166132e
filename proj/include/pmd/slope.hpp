#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmd/graph.hpp"
#include "pmd/solver.hpp"

namespace pmd {

/// Ordered sides: x[i] is x_{i+1}, y[j] is y_{j+1}.
struct SlopeLabeling {
    std::vector<Vertex> x;
    std::vector<Vertex> y;

    friend bool operator==(const SlopeLabeling&, const SlopeLabeling&) = default;
};

/// Sides from bipartition_of, each in ascending id order; isolated vertices
/// are left out. Throws Error when g is not bipartite.
SlopeLabeling default_labeling(const Graph& g);

/// j - i for the edge x_i y_j. Throws Error if the edge does not cross sides.
int slope(const SlopeLabeling& labeling, const Edge& e);

/// Number of distinct slopes over g's edges.
int slope_count(const Graph& g, const SlopeLabeling& labeling);

struct KappaReport {
    SlopeLabeling labeling;
    Decomposition parts;
    int kappa = 0;
    int slope_count = 0;
};

/// The slope sweep: each outer round scans ascending slopes over the
/// shrinking x set X', keeps an edge only if its y is not yet in Y', and
/// drops from X' every x met at that slope. Throws InternalError if the
/// output fails verification, Error on a bad labeling.
KappaReport run_slope_algorithm(const Graph& g, const SlopeLabeling& labeling);

enum class KappaMode { exhaustive, heuristic };

struct KappaSearchOptions {
    KappaMode mode = KappaMode::exhaustive;
    std::uint64_t max_labelings = 5'000'000;
    int restarts = 64;
    std::uint64_t seed = 0;
};

struct KappaSearchResult {
    KappaReport best;
    bool certified = false;          // every labeling was evaluated
    bool budget_exhausted = false;
    std::uint64_t labelings_tried = 0;
    int min_slope_count = 0;         // over the labelings tried
    int kappa_at_min_slopes = 0;     // least kappa among labelings with min_slope_count
};

/// Labelings range over both side choices of every component and all
/// orders of each side. Exhaustive mode stops at the budget and reports
/// best-so-far; heuristic mode uses random restarts and adjacent swaps.
KappaSearchResult kappa_search(const Graph& g, const KappaSearchOptions& options = {});

struct QuestionRecord {
    std::string graph6;
    int order = 0;
    int size = 0;
    bool skipped = false;
    std::string reason;
    int pmd = 0;
    int kappa = 0;
    int min_slopes = 0;
    int kappa_at_min_slopes = 0;
    bool kappa_exceeds_pmd = false;         // pmd < kappa
    bool kappa_below_min_slopes = false;    // kappa(tau) < s at a slope-minimal tau
};

struct QuestionReport {
    std::vector<QuestionRecord> records;
    int skipped = 0;
    int kappa_exceeds_pmd = 0;
    int kappa_below_min_slopes = 0;
};

/// Non-bipartite and over-cap graphs are listed as skipped.
QuestionReport question_scan(const std::vector<Graph>& corpus, const SolverOptions& solver = {},
                             std::uint64_t max_labelings = 5'000'000);

}  // namespace pmd
