#include "pmd/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pmd/generators.hpp"
#include "pmd/graph_io.hpp"
#include "pmd/slope.hpp"

namespace pmd {

using nlohmann::json;

std::string_view to_string(RecordFlag f) {
    switch (f) {
    case RecordFlag::exact: return "exact";
    case RecordFlag::bounded: return "bounded";
    case RecordFlag::budget_exhausted: return "budget_exhausted";
    case RecordFlag::skipped: return "skipped";
    case RecordFlag::error: return "error";
    }
    return "error";
}

std::optional<RecordFlag> parse_record_flag(std::string_view text) {
    for (auto f : {RecordFlag::exact, RecordFlag::bounded, RecordFlag::budget_exhausted, RecordFlag::skipped,
                   RecordFlag::error}) {
        if (to_string(f) == text) return f;
    }
    return std::nullopt;
}

namespace {

json parts_json(const std::vector<std::vector<Edge>>& parts) {
    json out = json::array();
    for (const auto& part : parts) {
        json p = json::array();
        for (const Edge& e : part) p.push_back({e.u, e.v});
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<std::vector<Edge>> parts_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("parts must be an array");
    std::vector<std::vector<Edge>> parts;
    for (const auto& p : j) {
        if (!p.is_array()) throw ParseError("each part must be an array of edges");
        std::vector<Edge> part;
        for (const auto& e : p) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                throw ParseError("each edge must be a pair of vertex ids");
            }
            const int u = e[0].get<int>();
            const int v = e[1].get<int>();
            if (u == v) throw ParseError("edge " + std::to_string(u) + "-" + std::to_string(v) + " is a loop");
            part.emplace_back(u, v);
        }
        parts.push_back(std::move(part));
    }
    return parts;
}

std::string store_key(const ResultRecord& r) { return r.graph6 + '\t' + r.command + '\t' + r.options; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

ResultRecord base_record(const Graph& g) {
    ResultRecord r;
    r.graph6 = emit_graph6(g);
    r.order = g.order();
    r.size = g.size();
    r.delta = g.empty() ? 0 : max_degree(g);
    return r;
}

// Residual graphs host - E_1 - ... - E_{i-1}, one per part.
std::vector<Graph> residuals(const Decomposition& d) {
    std::vector<Graph> out;
    Graph cur = d.host;
    for (const auto& part : d.parts) {
        out.push_back(cur);
        std::vector<Edge> present;
        for (const Edge& e : part) {
            if (cur.has_edge(e.u, e.v)) present.push_back(e);
        }
        cur = remove_edges(cur, present);
    }
    return out;
}

}  // namespace

std::string record_to_json(const ResultRecord& r) {
    json j{{"schema", kSchemaVersion},
           {"index", r.index},
           {"graph6", r.graph6},
           {"n", r.order},
           {"m", r.size},
           {"delta", r.delta},
           {"lower", r.lower},
           {"upper", r.upper},
           {"flag", std::string(to_string(r.flag))},
           {"elapsed", r.elapsed_seconds},
           {"provenance", r.provenance},
           {"command", r.command},
           {"options", r.options}};
    if (r.kappa) j["kappa"] = *r.kappa;
    if (r.kappa_certified) j["kappa_certified"] = *r.kappa_certified;
    if (!r.note.empty()) j["note"] = r.note;
    if (r.parts) j["parts"] = parts_json(*r.parts);
    return j.dump();
}

ResultRecord record_from_json(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed record: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("record must be a JSON object");
    if (j.value("schema", 0) != kSchemaVersion) {
        throw SchemaMismatch("record schema " + j.value("schema", json(nullptr)).dump() + ", expected " +
                             std::to_string(kSchemaVersion));
    }
    try {
        ResultRecord r;
        r.index = j.value("index", std::size_t{0});
        r.graph6 = j.at("graph6").get<std::string>();
        r.order = j.at("n").get<int>();
        r.size = j.at("m").get<int>();
        r.delta = j.at("delta").get<int>();
        r.lower = j.at("lower").get<int>();
        r.upper = j.at("upper").get<int>();
        auto flag = parse_record_flag(j.at("flag").get<std::string>());
        if (!flag) throw ParseError("unknown flag " + j.at("flag").dump());
        r.flag = *flag;
        r.elapsed_seconds = j.value("elapsed", 0.0);
        r.provenance = j.value("provenance", "");
        r.command = j.value("command", "");
        r.options = j.value("options", "");
        r.note = j.value("note", "");
        if (j.contains("kappa")) r.kappa = j["kappa"].get<int>();
        if (j.contains("kappa_certified")) r.kappa_certified = j["kappa_certified"].get<bool>();
        if (j.contains("parts")) r.parts = parts_from_json(j["parts"]);
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed record: ") + e.what());
    }
}

std::string csv_header() { return "index,graph6,n,m,delta,lower,upper,flag,kappa,elapsed,provenance,note"; }

std::string record_to_csv(const ResultRecord& r) {
    std::ostringstream out;
    out << r.index << ',' << csv_field(r.graph6) << ',' << r.order << ',' << r.size << ',' << r.delta << ','
        << r.lower << ',' << r.upper << ',' << to_string(r.flag) << ',';
    if (r.kappa) out << *r.kappa;
    out << ',' << std::fixed << std::setprecision(6) << r.elapsed_seconds << ',' << csv_field(r.provenance) << ','
        << csv_field(r.note);
    return out.str();
}

ResultsStore::ResultsStore(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) {
        std::ofstream out(path_);
        if (!out) throw Error("cannot create results store " + path_.string());
        out << json{{"schema", kSchemaVersion}}.dump() << '\n';
        return;
    }
    std::string line;
    if (!std::getline(in, line)) {
        std::ofstream out(path_);
        out << json{{"schema", kSchemaVersion}}.dump() << '\n';
        return;
    }
    json header;
    try {
        header = json::parse(line);
    } catch (const json::parse_error&) {
        throw SchemaMismatch(path_.string() + ": first line is not a schema header");
    }
    if (!header.is_object() || header.value("schema", json(nullptr)) != json(kSchemaVersion)) {
        throw SchemaMismatch(path_.string() + ": schema " + header.value("schema", json(nullptr)).dump() +
                             ", expected " + std::to_string(kSchemaVersion));
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            auto r = record_from_json(line);
            if (keys_.insert(store_key(r)).second) records_.push_back(std::move(r));
        } catch (const ParseError& e) {
            throw ParseError(path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

bool ResultsStore::append(const ResultRecord& r) {
    if (!keys_.insert(store_key(r)).second) return false;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw Error("cannot append to " + path_.string());
    out << record_to_json(r) << '\n';
    records_.push_back(r);
    return true;
}

std::vector<ResultRecord> ResultsStore::query(const Filter& f) const {
    std::vector<ResultRecord> out;
    for (const auto& r : records_) {
        if (f.graph6 && r.graph6 != *f.graph6) continue;
        if (f.command && r.command != *f.command) continue;
        if (f.order && r.order != *f.order) continue;
        if (f.delta && r.delta != *f.delta) continue;
        if (f.flag && r.flag != *f.flag) continue;
        if (f.min_value && r.upper < *f.min_value) continue;
        if (f.max_value && r.upper > *f.max_value) continue;
        out.push_back(r);
    }
    return out;
}

std::vector<GraphInput> read_graph6_lines(std::istream& in) {
    std::vector<GraphInput> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        GraphInput item;
        item.line = lineno;
        try {
            item.graph = parse_graph6(line);
        } catch (const ParseError& e) {
            item.error = e.what();
        }
        out.push_back(std::move(item));
    }
    return out;
}

void run_batch(std::size_t count, int jobs, const std::function<ResultRecord(std::size_t)>& work,
               const std::function<void(ResultRecord&&)>& sink) {
    const auto threads = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) sink(work(i));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::condition_variable ready;
    std::map<std::size_t, ResultRecord> done;
    std::exception_ptr failure;

    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(threads, count); ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                ResultRecord r;
                try {
                    r = work(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!failure) failure = std::current_exception();
                    next = count;
                    ready.notify_all();
                    return;
                }
                std::lock_guard lock(mu);
                done.emplace(i, std::move(r));
                ready.notify_all();
            }
        });
    }
    for (std::size_t i = 0; i < count; ++i) {
        std::unique_lock lock(mu);
        ready.wait(lock, [&] { return failure || done.contains(i); });
        if (failure) break;
        auto node = done.extract(i);
        lock.unlock();
        sink(std::move(node.mapped()));
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

ResultRecord exact_record(const Graph& g, const SolverOptions& options, bool keep_parts) {
    ResultRecord r = base_record(g);
    r.command = "exact";
    r.provenance = "solver";
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto res = pmd_exact(g, options);
        r.lower = res.exact() ? res.value : res.lower_bound_used;
        r.upper = res.value;
        r.flag = res.exact() ? RecordFlag::exact : RecordFlag::budget_exhausted;
        if (!res.exact()) r.provenance = "bound";
        if (keep_parts && res.decomposition) r.parts = res.decomposition->parts;
    } catch (const CapExceeded& e) {
        r.flag = RecordFlag::skipped;
        r.note = e.what();
        if (g.order() >= 2 && !g.empty()) {
            r.lower = pmd_lower_bound(g);
            r.upper = pmd_upper_bound(g);
            r.provenance = "bound";
        }
    }
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

ResultRecord bounds_record(const Graph& g) {
    ResultRecord r = base_record(g);
    r.command = "bounds";
    r.provenance = "bound";
    r.flag = RecordFlag::bounded;
    if (!g.empty()) {
        const auto rep = bounds_report(g);
        r.lower = rep.lower;
        r.upper = rep.upper;
        std::string terms;
        for (const auto& t : rep.lower_terms) terms += (terms.empty() ? "" : " ") + t.name + "=" + std::to_string(t.value);
        terms += " |";
        for (const auto& t : rep.upper_terms) terms += " " + t.name + "=" + std::to_string(t.value);
        r.note = terms;
        if (r.lower == r.upper) r.flag = RecordFlag::exact;
    } else {
        r.flag = RecordFlag::exact;
    }
    return r;
}

std::string witness_json(const Decomposition& d) {
    json certs = json::array();
    const auto hosts = residuals(d);
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
        const Matching m(hosts[i], d.parts[i]);
        auto order = peel_order(hosts[i], m);
        if (!order) throw InternalError("part " + std::to_string(i + 1) + " is not positive in its residual");
        const auto cert = build_weight_certificate(hosts[i], m, *order);
        json c = json::object();
        for (const auto& [v, w] : cert.weights) c[std::to_string(v)] = w;
        certs.push_back(std::move(c));
    }
    json j{{"schema", kSchemaVersion},
           {"graph6", emit_graph6(d.host)},
           {"parts", parts_json(d.parts)},
           {"certificates", std::move(certs)}};
    return j.dump();
}

namespace {

struct ParsedWitness {
    Decomposition d;
    std::optional<std::vector<WeightCertificate>> certificates;
};

ParsedWitness parse_witness_full(std::string_view text, const std::optional<Graph>& graph) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("witness is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("witness must be a JSON object");
    if (!j.contains("schema") || j["schema"] != json(kSchemaVersion)) {
        throw SchemaMismatch("witness schema " + j.value("schema", json(nullptr)).dump() + ", expected " +
                             std::to_string(kSchemaVersion));
    }
    if (!j.contains("parts")) throw ParseError("witness has no parts");
    ParsedWitness w;
    if (graph) {
        w.d.host = *graph;
        if (j.contains("graph6") && j["graph6"].is_string() && j["graph6"].get<std::string>() != emit_graph6(*graph)) {
            throw ParseError("witness graph6 " + j["graph6"].get<std::string>() + " does not match the input graph " +
                             emit_graph6(*graph));
        }
    } else {
        if (!j.contains("graph6") || !j["graph6"].is_string()) throw ParseError("witness has no graph6 and no graph was given");
        w.d.host = parse_graph6(j["graph6"].get<std::string>());
    }
    w.d.parts = parts_from_json(j["parts"]);
    if (j.contains("certificates")) {
        const auto& cj = j["certificates"];
        if (!cj.is_array()) throw ParseError("certificates must be an array");
        std::vector<WeightCertificate> certs;
        for (const auto& c : cj) {
            if (!c.is_object()) throw ParseError("each certificate must map vertex ids to weights");
            WeightCertificate wc;
            for (const auto& [k, v] : c.items()) {
                if (!v.is_number_integer()) throw ParseError("certificate weight for vertex " + k + " is not an integer");
                try {
                    std::size_t used = 0;
                    const int vertex = std::stoi(k, &used);
                    if (used != k.size()) throw std::invalid_argument(k);
                    wc.weights[vertex] = v.get<long long>();
                } catch (const std::logic_error&) {
                    throw ParseError("certificate key '" + k + "' is not a vertex id");
                }
            }
            certs.push_back(std::move(wc));
        }
        w.certificates = std::move(certs);
    }
    return w;
}

}  // namespace

Decomposition parse_witness(std::string_view json_text, const std::optional<Graph>& graph) {
    return parse_witness_full(json_text, graph).d;
}

WitnessCheck check_witness(std::string_view json_text, const std::optional<Graph>& graph) {
    const auto w = parse_witness_full(json_text, graph);
    WitnessCheck out;
    out.decomposition = verify_decomposition(w.d);
    if (!out.decomposition) {
        out.message = "invalid: " + out.decomposition.message;
        return out;
    }
    if (w.certificates) {
        if (w.certificates->size() != w.d.parts.size()) {
            out.certificates_valid = false;
            out.message = "invalid: " + std::to_string(w.certificates->size()) + " certificates for " +
                          std::to_string(w.d.parts.size()) + " parts";
            return out;
        }
        const auto hosts = residuals(w.d);
        for (std::size_t i = 0; i < hosts.size(); ++i) {
            const Matching m(hosts[i], w.d.parts[i]);
            if (!verify_certificate(hosts[i], m, (*w.certificates)[i])) {
                out.certificates_valid = false;
                out.message = "invalid: certificate " + std::to_string(i + 1) + " does not certify part " +
                              std::to_string(i + 1);
                return out;
            }
        }
    }
    out.message = "valid, " + std::to_string(w.d.parts.size()) + " parts";
    return out;
}

std::string decomposition_dot(const Decomposition& d) {
    static constexpr const char* palette[] = {"red",    "blue",   "green3",  "orange", "purple",  "brown",
                                              "cyan3",  "magenta", "gold3",  "gray40", "navy",    "darkgreen"};
    std::ostringstream out;
    out << "graph pmd {\n";
    for (Vertex v = 0; v < d.host.order(); ++v) out << "  " << v << ";\n";
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
        for (const Edge& e : d.parts[i]) {
            out << "  " << e.u << " -- " << e.v << " [color=" << palette[i % std::size(palette)]
                << ", label=" << i + 1 << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

namespace {

std::string hits_summary(const ScanReport& r, std::string_view what) {
    std::string s = std::to_string(r.checked) + " graphs checked, " + std::to_string(r.skipped) + " skipped; ";
    if (r.hits.empty()) return s + std::string(what) + ": none found in corpus";
    s += std::string(what) + ": " + std::to_string(r.hits.size()) + " found";
    for (const auto& h : r.hits) s += " " + h;
    return s;
}

}  // namespace

ScanReport scan_two_delta(const std::vector<Graph>& corpus, const SolverOptions& options, int jobs) {
    ScanReport rep;
    rep.kind = "two-delta";
    run_batch(
        corpus.size(), jobs,
        [&](std::size_t i) {
            auto r = exact_record(corpus[i], options);
            r.index = i;
            r.command = "scan:two-delta";
            return r;
        },
        [&](ResultRecord&& r) {
            if (r.flag == RecordFlag::exact) {
                ++rep.checked;
                if (r.size > 0 && r.upper > 2 * r.delta - 1) {
                    rep.hits.push_back(r.graph6);
                    r.note = "pmd exceeds 2*delta-1";
                }
            } else {
                ++rep.skipped;
            }
            rep.records.push_back(std::move(r));
        });
    rep.summary = hits_summary(rep, "counterexamples to pmd <= 2*delta-1");
    return rep;
}

ScanReport scan_k2mn(int max_mn, const SolverOptions& options, int jobs) {
    ScanReport rep;
    rep.kind = "k2mn";
    std::vector<std::pair<int, int>> cases;
    for (int m = 1; m <= max_mn; ++m) {
        for (int n = m; n <= max_mn; ++n) cases.emplace_back(m, n);
    }
    run_batch(
        cases.size(), jobs,
        [&](std::size_t i) {
            const auto [m, n] = cases[i];
            auto r = exact_record(complete_multipartite({2, m, n}).graph, options);
            r.index = i;
            r.command = "scan:k2mn";
            r.note = "K_{2," + std::to_string(m) + "," + std::to_string(n) + "} target " + std::to_string(m + n + 2);
            return r;
        },
        [&](ResultRecord&& r) {
            const auto [m, n] = cases[r.index];
            if (r.flag == RecordFlag::exact) {
                ++rep.checked;
                if (r.upper != m + n + 2) {
                    rep.hits.push_back(r.graph6);
                    r.note += ", got " + std::to_string(r.upper);
                }
            } else {
                ++rep.skipped;
            }
            rep.records.push_back(std::move(r));
        });
    rep.summary = hits_summary(rep, "mismatches with m+n+2");
    return rep;
}

ScanReport scan_hypercube(int max_n, const SolverOptions& options) {
    ScanReport rep;
    rep.kind = "hypercube";
    for (int n = 1; n <= max_n; ++n) {
        auto r = exact_record(hypercube(n), options);
        r.index = static_cast<std::size_t>(n - 1);
        r.command = "scan:hypercube";
        r.note = "Q_" + std::to_string(n) + " target " + std::to_string(2 * n - 1);
        if (r.flag == RecordFlag::exact) {
            ++rep.checked;
            if (r.upper != 2 * n - 1) {
                rep.hits.push_back(r.graph6);
                r.note += ", got " + std::to_string(r.upper);
            }
        } else {
            ++rep.skipped;
        }
        rep.records.push_back(std::move(r));
    }
    rep.summary = hits_summary(rep, "mismatches with 2n-1");
    return rep;
}

ScanReport scan_questions(const std::vector<Graph>& corpus, const SolverOptions& options) {
    ScanReport rep;
    rep.kind = "questions";
    const auto q = question_scan(corpus, options);
    for (std::size_t i = 0; i < q.records.size(); ++i) {
        const auto& qr = q.records[i];
        ResultRecord r = base_record(corpus[i]);
        r.index = i;
        r.command = "scan:questions";
        r.provenance = "solver";
        if (qr.skipped) {
            r.flag = RecordFlag::skipped;
            r.note = qr.reason;
            ++rep.skipped;
        } else {
            ++rep.checked;
            r.lower = r.upper = qr.pmd;
            r.kappa = qr.kappa;
            r.kappa_certified = true;
            r.note = "min_slopes=" + std::to_string(qr.min_slopes) +
                     " kappa_at_min_slopes=" + std::to_string(qr.kappa_at_min_slopes);
            if (qr.kappa_exceeds_pmd) {
                r.note += " pmd<kappa";
                rep.hits.push_back(r.graph6);
            }
            if (qr.kappa_below_min_slopes) r.note += " kappa<slopes";
        }
        rep.records.push_back(std::move(r));
    }
    rep.summary = std::to_string(rep.checked) + " bipartite graphs checked, " + std::to_string(rep.skipped) +
                  " skipped; pmd < kappa on " + std::to_string(q.kappa_exceeds_pmd) +
                  "; kappa below the minimum slope count on " + std::to_string(q.kappa_below_min_slopes);
    return rep;
}

}  // namespace pmd
