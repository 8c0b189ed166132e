// pmd: positive matching decompositions from the command line.
//
//   pmd <exact|bounds|check|witness|slope|family|scan>
//       [--family SPEC | --g6 FILE | --edges FILE | --stdin] [options]
//
// Exit codes: 0 success, 1 usage or I/O error, 2 budget exhausted on some
// graph, 3 a self-produced result failed verification. `check` exits 1 on
// an invalid witness.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmd/corpus.hpp"
#include "pmd/family.hpp"
#include "pmd/generators.hpp"
#include "pmd/graph_io.hpp"
#include "pmd/slope.hpp"

namespace {

using namespace pmd;

enum Exit : int { ok = 0, usage = 1, budget = 2, invariant = 3 };

struct Options {
    std::string family;
    std::string g6;
    std::string edges;
    bool from_stdin = false;
    std::string witness;
    std::string dot;
    std::string format = "json";
    int jobs = 0;
    std::uint64_t budget_nodes = 0;
    double budget_seconds = 0.0;
    std::uint64_t seed = 0;
    bool strict = false;
    int max_core = 16;
    std::string store;
    std::string kind = "two-delta";
    int max_param = 3;
    std::string labeling;
    std::string search = "exhaustive";
    std::uint64_t max_labelings = 5'000'000;
};

struct Input {
    std::string source;  // family spec, file name or "stdin"
    std::vector<GraphInput> items;
    std::optional<FamilySpec> spec;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Input load_input(const Options& o) {
    const int sources = !o.family.empty() + !o.g6.empty() + !o.edges.empty() + o.from_stdin;
    if (sources != 1) throw CLI::ValidationError("input", "give exactly one of --family, --g6, --edges, --stdin");
    Input in;
    if (!o.family.empty()) {
        in.source = o.family;
        in.spec = parse_family_spec(o.family);
        in.items.push_back({0, build_family(*in.spec), {}});
    } else if (!o.edges.empty()) {
        in.source = o.edges;
        in.items.push_back({0, parse_edge_list(read_file(o.edges)), {}});
    } else if (o.from_stdin) {
        in.source = "stdin";
        in.items = read_graph6_lines(std::cin);
    } else if (std::filesystem::exists(o.g6)) {
        in.source = o.g6;
        std::ifstream f(o.g6);
        if (!f) throw Error("cannot read " + o.g6);
        in.items = read_graph6_lines(f);
    } else {
        // a literal graph6 string is accepted for convenience
        in.source = "argument";
        in.items.push_back({0, parse_graph6(o.g6), {}});
    }
    bool bad = false;
    for (const auto& item : in.items) {
        if (item.graph) continue;
        std::cerr << in.source << ":" << item.line << ": " << item.error << '\n';
        bad = true;
    }
    if (bad && o.strict) throw Error("malformed input (--strict)");
    return in;
}

SolverOptions solver_options(const Options& o) {
    SolverOptions s;
    s.max_core_vertices = o.max_core;
    s.node_budget = o.budget_nodes;
    s.seconds_budget = o.budget_seconds;
    return s;
}

int jobs(const Options& o) {
    return o.jobs > 0 ? o.jobs : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

std::string options_key(const Options& o) {
    return "nodes=" + std::to_string(o.budget_nodes) + ";seconds=" + std::to_string(o.budget_seconds) +
           ";max_core=" + std::to_string(o.max_core);
}

class Emitter {
public:
    explicit Emitter(const Options& o, std::ostream& out = std::cout) : out_(out), csv_(o.format == "csv") {
        std::string path = o.store;
        if (path.empty()) {
            if (const char* env = std::getenv("PMD_RESULTS")) path = env;
        }
        if (!path.empty()) store_ = std::make_unique<ResultsStore>(path);
        if (csv_) out_ << csv_header() << '\n';
    }

    void operator()(const ResultRecord& r) {
        out_ << (csv_ ? record_to_csv(r) : record_to_json(r)) << '\n';
        if (store_) store_->append(r);
        if (r.flag == RecordFlag::budget_exhausted) exit_ = Exit::budget;
    }

    int exit_code() const { return exit_; }
    void raise(int code) { exit_ = std::max(exit_, code); }

private:
    std::ostream& out_;
    bool csv_;
    std::unique_ptr<ResultsStore> store_;
    int exit_ = Exit::ok;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

// Witness files for every solved graph: one JSON document for a single
// input, one per line otherwise. Each is re-checked before it is written.
int write_witnesses(const Options& o, const std::vector<Decomposition>& ds) {
    std::string json_text;
    std::string dot_text;
    for (const auto& d : ds) {
        const auto w = witness_json(d);
        const auto check = check_witness(w);
        if (!check.decomposition || !check.certificates_valid) {
            std::cerr << "self-check failed: " << check.message << '\n';
            return Exit::invariant;
        }
        json_text += w + '\n';
        dot_text += decomposition_dot(d);
    }
    if (!o.witness.empty()) write_text(o.witness, json_text);
    if (!o.dot.empty()) write_text(o.dot, dot_text);
    return Exit::ok;
}

int cmd_exact(const Options& o, bool witness_only) {
    const Input in = load_input(o);
    const auto solver = solver_options(o);
    const bool keep = witness_only || !o.witness.empty() || !o.dot.empty();
    // `witness` without a file prints the witness itself on stdout
    Emitter emit(o, witness_only && o.witness.empty() ? std::cerr : std::cout);
    std::vector<Decomposition> witnesses;
    run_batch(
        in.items.size(), jobs(o),
        [&](std::size_t i) {
            const auto& item = in.items[i];
            ResultRecord r;
            if (!item.graph) {
                r.flag = RecordFlag::error;
                r.note = "line " + std::to_string(item.line) + ": " + item.error;
            } else {
                r = exact_record(*item.graph, solver, keep);
            }
            r.index = i;
            r.command = "exact";
            r.options = options_key(o);
            return r;
        },
        [&](ResultRecord&& r) {
            if (r.parts) {
                witnesses.push_back({*in.items[r.index].graph, *r.parts});
                if (witness_only) r.parts.reset();
            }
            emit(r);
        });
    if (keep) {
        if (witness_only && o.witness.empty()) {
            for (const auto& d : witnesses) std::cout << witness_json(d) << '\n';
        }
        emit.raise(write_witnesses(o, witnesses));
    }
    return emit.exit_code();
}

int cmd_bounds(const Options& o) {
    const Input in = load_input(o);
    Emitter emit(o);
    for (std::size_t i = 0; i < in.items.size(); ++i) {
        const auto& item = in.items[i];
        ResultRecord r;
        if (!item.graph) {
            r.flag = RecordFlag::error;
            r.note = "line " + std::to_string(item.line) + ": " + item.error;
        } else {
            r = bounds_record(*item.graph);
        }
        r.index = i;
        emit(r);
    }
    return emit.exit_code();
}

int cmd_check(const Options& o) {
    if (o.witness.empty()) throw CLI::ValidationError("--witness", "check needs a witness file");
    std::optional<Graph> graph;
    if (!o.family.empty() || !o.g6.empty() || !o.edges.empty() || o.from_stdin) {
        const Input in = load_input(o);
        if (in.items.size() != 1 || !in.items.front().graph) throw Error("check needs exactly one input graph");
        graph = in.items.front().graph;
    }
    std::istringstream lines(read_file(o.witness));
    int status = Exit::ok;
    for (std::string line; std::getline(lines, line);) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto verdict = check_witness(line, graph);
        std::cout << verdict.message << '\n';
        if (!verdict.decomposition || !verdict.certificates_valid) status = Exit::usage;
    }
    return status;
}

std::vector<Vertex> parse_ids(std::string_view text) {
    std::vector<Vertex> out;
    std::string item;
    std::istringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("--labeling", "bad vertex id '" + item + "'");
        }
    }
    return out;
}

// "x:3,1,2 y:2,1,3"
SlopeLabeling parse_labeling(const std::string& text) {
    SlopeLabeling lab;
    std::istringstream ss(text);
    for (std::string word; ss >> word;) {
        if (word.size() < 2 || word[1] != ':' || (word[0] != 'x' && word[0] != 'y')) {
            throw CLI::ValidationError("--labeling", "expected 'x:ids y:ids'");
        }
        (word[0] == 'x' ? lab.x : lab.y) = parse_ids(std::string_view(word).substr(2));
    }
    return lab;
}

nlohmann::json parts_json(const Decomposition& d) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& part : d.parts) {
        nlohmann::json p = nlohmann::json::array();
        for (const Edge& e : part) p.push_back({e.u, e.v});
        out.push_back(p);
    }
    return out;
}

int cmd_slope(const Options& o) {
    const Input in = load_input(o);
    int status = Exit::ok;
    for (const auto& item : in.items) {
        if (!item.graph) continue;
        const Graph& g = *item.graph;
        nlohmann::json j{{"schema", kSchemaVersion}, {"graph6", emit_graph6(g)}};
        if (!o.labeling.empty() || o.search == "none") {
            const auto lab = o.labeling.empty() ? default_labeling(g) : parse_labeling(o.labeling);
            const auto rep = run_slope_algorithm(g, lab);
            j["labeling"] = {{"x", rep.labeling.x}, {"y", rep.labeling.y}};
            j["kappa_tau"] = rep.kappa;
            j["slopes"] = rep.slope_count;
            j["parts"] = parts_json(rep.parts);
        } else {
            KappaSearchOptions ko;
            ko.mode = o.search == "heuristic" ? KappaMode::heuristic : KappaMode::exhaustive;
            ko.seed = o.seed;
            ko.max_labelings = o.max_labelings;
            const auto res = kappa_search(g, ko);
            j["labeling"] = {{"x", res.best.labeling.x}, {"y", res.best.labeling.y}};
            j["kappa"] = res.best.kappa;
            j["certified"] = res.certified;
            j["labelings_tried"] = res.labelings_tried;
            j["min_slopes"] = res.min_slope_count;
            j["kappa_at_min_slopes"] = res.kappa_at_min_slopes;
            j["parts"] = parts_json(res.best.parts);
            if (res.budget_exhausted) status = Exit::budget;
        }
        std::cout << j.dump() << '\n';
    }
    return status;
}

int cmd_family(const Options& o) {
    if (o.family.empty()) throw CLI::ValidationError("--family", "family needs --family SPEC");
    const auto spec = parse_family_spec(o.family);
    const Graph g = build_family(spec);
    const auto a = family_answer(spec, solver_options(o));
    ResultRecord r = bounds_record(g);
    r.command = "family";
    r.options = spec.to_string();
    r.lower = a.lower;
    r.upper = a.upper;
    r.flag = a.exact() ? RecordFlag::exact : RecordFlag::bounded;
    r.provenance = a.provenance;
    r.note.clear();
    if (a.decomposition) r.parts = a.decomposition->parts;
    Emitter emit(o);
    emit(r);
    if (a.decomposition) emit.raise(write_witnesses(o, {*a.decomposition}));
    return emit.exit_code();
}

int cmd_scan(const Options& o) {
    const auto solver = solver_options(o);
    ScanReport rep;
    auto corpus = [&] {
        std::vector<Graph> gs;
        for (auto& item : load_input(o).items) {
            if (item.graph) gs.push_back(std::move(*item.graph));
        }
        return gs;
    };
    if (o.kind == "two-delta") {
        rep = scan_two_delta(corpus(), solver, jobs(o));
    } else if (o.kind == "k2mn") {
        rep = scan_k2mn(o.max_param, solver, jobs(o));
    } else if (o.kind == "hypercube") {
        rep = scan_hypercube(o.max_param, solver);
    } else if (o.kind == "questions") {
        rep = scan_questions(corpus(), solver);
    } else {
        throw CLI::ValidationError("--kind", "unknown scan kind " + o.kind);
    }
    Emitter emit(o);
    if (o.format == "csv") {
        for (auto& r : rep.records) {
            r.options = options_key(o);
            emit(r);
        }
        std::cout << "# " << rep.summary << '\n';
    } else {
        nlohmann::json records = nlohmann::json::array();
        for (auto& r : rep.records) records.push_back(nlohmann::json::parse(record_to_json(r)));
        nlohmann::json j{{"schema", kSchemaVersion}, {"kind", rep.kind},    {"checked", rep.checked},
                         {"skipped", rep.skipped},   {"hits", rep.hits},    {"summary", rep.summary},
                         {"records", records}};
        std::cout << j.dump(1) << '\n';
    }
    std::cerr << rep.summary << '\n';
    return emit.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positive matching decompositions of graphs"};
    app.require_subcommand(1);
    Options o;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--family", o.family, "Family spec, e.g. kn:5, gp:7,2, corona:1:cycle:5");
        sub->add_option("--g6", o.g6, "graph6 file, one graph per line (a literal graph6 string also works)");
        sub->add_option("--edges", o.edges, "Edge-list file");
        sub->add_flag("--stdin", o.from_stdin, "Read graph6 lines from standard input");
        sub->add_flag("--strict", o.strict, "Stop on the first malformed input line");
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--budget-nodes", o.budget_nodes, "Search node budget per graph (0: none)");
        sub->add_option("--budget-seconds", o.budget_seconds, "Time budget per graph in seconds (0: none)");
        sub->add_option("--max-core", o.max_core, "Vertex cap on the pendant-free core")->check(CLI::Range(1, 64));
        sub->add_option("--jobs", o.jobs, "Worker threads (default: logical cores)");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Record format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--store", o.store, "Append records to this results store (default: $PMD_RESULTS)");
    };

    auto* exact = app.add_subcommand("exact", "Exact pmd with the branch and bound solver");
    add_input(exact);
    add_solver(exact);
    add_output(exact);
    exact->add_option("--witness", o.witness, "Write the decomposition with certificates");
    exact->add_option("--dot", o.dot, "Write the decomposition as DOT");

    auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds with the terms that produced them");
    add_input(bounds);
    add_output(bounds);

    auto* check = app.add_subcommand("check", "Verify a witness file");
    add_input(check);
    check->add_option("--witness", o.witness, "Witness JSON file")->required();

    auto* witness = app.add_subcommand("witness", "Solve and emit a witness with per-part certificates");
    add_input(witness);
    add_solver(witness);
    add_output(witness);
    witness->add_option("--witness", o.witness, "Witness output file (default: standard output)");
    witness->add_option("--dot", o.dot, "DOT output file");

    auto* slope = app.add_subcommand("slope", "Slope sweep on a bipartite graph");
    add_input(slope);
    slope->add_option("--labeling", o.labeling, "Explicit side orders, e.g. \"x:0,1,2 y:3,4,5\"");
    slope->add_option("--search", o.search, "Labeling search when no labeling is given")
        ->check(CLI::IsMember({"exhaustive", "heuristic", "none"}));
    slope->add_option("--max-labelings", o.max_labelings, "Labeling budget");
    slope->add_option("--seed", o.seed, "Seed for the heuristic search");

    auto* family = app.add_subcommand("family", "Closed-form answer and construction for a family member");
    family->add_option("--family", o.family, "Family spec")->required();
    family->add_option("--witness", o.witness, "Write the construction with certificates");
    family->add_option("--dot", o.dot, "Write the construction as DOT");
    family->add_option("--max-core", o.max_core, "Vertex cap for solver fallbacks")->check(CLI::Range(1, 64));
    add_output(family);

    auto* scan = app.add_subcommand("scan", "Bound and question sweeps");
    add_input(scan);
    add_solver(scan);
    add_output(scan);
    scan->add_option("--kind", o.kind, "two-delta | k2mn | hypercube | questions")
        ->check(CLI::IsMember({"two-delta", "k2mn", "hypercube", "questions"}));
    scan->add_option("--max", o.max_param, "Largest m,n for k2mn, largest n for hypercube");
    scan->add_option("--seed", o.seed, "Unused by the exact scans; recorded for reproducibility");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (*exact) return cmd_exact(o, false);
        if (*witness) return cmd_exact(o, true);
        if (*bounds) return cmd_bounds(o);
        if (*check) return cmd_check(o);
        if (*slope) return cmd_slope(o);
        if (*family) return cmd_family(o);
        if (*scan) return cmd_scan(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return Exit::usage;
    } catch (const InternalError& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return Exit::invariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::usage;
    }
    return Exit::usage;
}
