#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pmd/graph.hpp"
#include "pmd/solver.hpp"

namespace pmd {

/// A results store or witness file written under another schema version.
class SchemaMismatch : public Error {
public:
    using Error::Error;
};

inline constexpr int kSchemaVersion = 1;

enum class RecordFlag { exact, bounded, budget_exhausted, skipped, error };

std::string_view to_string(RecordFlag f);
std::optional<RecordFlag> parse_record_flag(std::string_view text);

struct ResultRecord {
    std::size_t index = 0;  // position in the input
    std::string graph6;
    int order = 0;
    int size = 0;
    int delta = 0;
    int lower = 0;
    int upper = 0;
    RecordFlag flag = RecordFlag::exact;
    std::optional<int> kappa;
    std::optional<bool> kappa_certified;
    double elapsed_seconds = 0.0;
    std::string provenance;  // solver | formula:<name> | bound
    std::string command;
    std::string options;     // canonical option string, part of the store key
    std::string note;        // error text, skip reason or scan remark
    std::optional<std::vector<std::vector<Edge>>> parts;

    bool is_exact() const { return flag == RecordFlag::exact; }
};

std::string record_to_json(const ResultRecord& r);
ResultRecord record_from_json(std::string_view line);

/// Fixed column order: index,graph6,n,m,delta,lower,upper,flag,kappa,elapsed,provenance,note
std::string csv_header();
std::string record_to_csv(const ResultRecord& r);

/// Newline-delimited JSON; the first line is {"schema": 1}. Appends are
/// idempotent on (graph6, command, options).
class ResultsStore {
public:
    /// Creates the file with its header, or loads it. Throws SchemaMismatch
    /// on a foreign header.
    explicit ResultsStore(std::filesystem::path path);

    /// False when a record with the same key is already stored.
    bool append(const ResultRecord& r);

    struct Filter {
        std::optional<std::string> graph6;
        std::optional<std::string> command;
        std::optional<int> order;
        std::optional<int> delta;
        std::optional<RecordFlag> flag;
        std::optional<int> min_value;  // applied to `upper`
        std::optional<int> max_value;
    };
    std::vector<ResultRecord> query(const Filter& f) const;
    std::size_t size() const { return records_.size(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::vector<ResultRecord> records_;
    std::set<std::string> keys_;
};

struct GraphInput {
    std::size_t line = 0;  // 1-based source line, 0 when not line-based
    std::optional<Graph> graph;
    std::string error;
};

/// One graph per non-empty line; malformed lines keep their error text.
std::vector<GraphInput> read_graph6_lines(std::istream& in);

/// Runs work(i) for i < count on up to `jobs` threads and hands results to
/// `sink` on the calling thread in index order.
void run_batch(std::size_t count, int jobs, const std::function<ResultRecord(std::size_t)>& work,
               const std::function<void(ResultRecord&&)>& sink);

/// Solver record; over-cap graphs become `skipped`, budget hits `budget_exhausted`.
ResultRecord exact_record(const Graph& g, const SolverOptions& options, bool keep_parts = false);
ResultRecord bounds_record(const Graph& g);

/// {schema, graph6, parts: [[[u, v], ...], ...], certificates: [{vertex: weight}, ...]}
std::string witness_json(const Decomposition& d);

struct WitnessCheck {
    DecompositionCheck decomposition;
    bool certificates_valid = true;
    std::string message;  // "valid, 7 parts" or "invalid: ..."
};

/// Parses a witness, rebuilding the host from its graph6 unless `graph` is
/// given (then the two must agree), and checks parts and certificates.
WitnessCheck check_witness(std::string_view json_text, const std::optional<Graph>& graph = std::nullopt);
Decomposition parse_witness(std::string_view json_text, const std::optional<Graph>& graph = std::nullopt);

/// Undirected DOT; each edge is colored by its part index.
std::string decomposition_dot(const Decomposition& d);

struct ScanReport {
    std::string kind;
    std::vector<ResultRecord> records;
    std::vector<std::string> hits;  // graph6 of every counterexample or affirmative instance
    int checked = 0;
    int skipped = 0;
    std::string summary;
};

/// pmd <= 2 Delta - 1 on every solved graph.
ScanReport scan_two_delta(const std::vector<Graph>& corpus, const SolverOptions& options, int jobs);
/// pmd(K_{2,m,n}) against m + n + 2 for 1 <= m <= n <= max_mn.
ScanReport scan_k2mn(int max_mn, const SolverOptions& options, int jobs);
/// pmd(Q_n) against 2n - 1 for n <= max_n.
ScanReport scan_hypercube(int max_n, const SolverOptions& options);
/// pmd < kappa, and kappa below the minimum slope count, on bipartite graphs.
ScanReport scan_questions(const std::vector<Graph>& corpus, const SolverOptions& options);

}  // namespace pmd
