#include "pmd/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace pmd {

namespace {

constexpr int kMaxGraph6Order = 258047;

int graph6_value(char c) {
    auto byte = static_cast<unsigned char>(c);
    if (byte < 63 || byte > 126) {
        throw ParseError("graph6: character code " + std::to_string(byte) + " outside 63..126");
    }
    return byte - 63;
}

std::string_view trim(std::string_view s) {
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
    text = trim(text);
    constexpr std::string_view header = ">>graph6<<";
    if (text.starts_with(header)) text.remove_prefix(header.size());
    if (text.empty()) throw ParseError("graph6: malformed header (empty input)");

    std::size_t pos = 0;
    long long n = 0;
    if (text[0] != '~') {
        n = graph6_value(text[0]);
        pos = 1;
    } else {
        if (text.size() >= 2 && text[1] == '~') {
            throw ParseError("graph6: malformed header (8-byte order form is not supported)");
        }
        if (text.size() < 4) throw ParseError("graph6: malformed header (truncated order)");
        for (std::size_t i = 1; i < 4; ++i) n = (n << 6) | graph6_value(text[i]);
        if (n < 63) throw ParseError("graph6: malformed header (non-minimal order encoding)");
        pos = 4;
    }
    if (n > kMaxGraph6Order) throw ParseError("graph6: order too large");

    const long long bits = n * (n - 1) / 2;
    const long long chars = (bits + 5) / 6;
    const auto body = text.substr(pos);
    if (static_cast<long long>(body.size()) < chars) throw ParseError("graph6: truncated bit vector");
    if (static_cast<long long>(body.size()) > chars) throw ParseError("graph6: trailing characters after bit vector");

    std::vector<Edge> edges;
    long long k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            int value = graph6_value(body[static_cast<std::size_t>(k / 6)]);
            if ((value >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
        }
    }
    for (; k < chars * 6; ++k) {
        int value = graph6_value(body[static_cast<std::size_t>(k / 6)]);
        if ((value >> (5 - k % 6)) & 1) throw ParseError("graph6: nonzero padding bits");
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

std::string emit_graph6(const Graph& g) {
    const int n = g.order();
    if (n > kMaxGraph6Order) throw Error("graph6: order too large");
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back('~');
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
    int value = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            value = (value << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(value + 63));
                value = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>((value << (6 - filled)) + 63));
    return out;
}

namespace {

long long parse_int(std::string_view token, int line_no) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0) {
        throw ParseError("edge list line " + std::to_string(line_no) + ": non-integer token '" +
                         std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
    std::optional<long long> declared;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    long long max_id = -1;
    bool first_content = true;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        auto tokens = split_ws(line);
        if (first_content && tokens.size() == 2 && tokens[0] == "n") {
            declared = parse_int(tokens[1], line_no);
            first_content = false;
            continue;
        }
        first_content = false;
        if (tokens.size() != 2) {
            throw ParseError("edge list line " + std::to_string(line_no) + ": expected two vertex ids");
        }
        long long a = parse_int(tokens[0], line_no);
        long long b = parse_int(tokens[1], line_no);
        if (a == b) throw ParseError("edge list line " + std::to_string(line_no) + ": loop at vertex " + std::to_string(a));
        if (a > kMaxGraph6Order || b > kMaxGraph6Order) {
            throw ParseError("edge list line " + std::to_string(line_no) + ": vertex id too large");
        }
        Edge e(static_cast<Vertex>(a), static_cast<Vertex>(b));
        if (!seen.insert(e).second) {
            throw ParseError("edge list line " + std::to_string(line_no) + ": duplicate edge " + to_string(e));
        }
        edges.push_back(e);
        max_id = std::max({max_id, a, b});
        if (end == text.size()) break;
    }
    long long n = declared.value_or(max_id + 1);
    if (max_id >= n) throw ParseError("edge list: vertex id " + std::to_string(max_id) + " exceeds declared order");
    return Graph(static_cast<int>(n), std::move(edges));
}

std::string emit_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.order() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

}  // namespace pmd
