#pragma once

#include <string>
#include <string_view>

#include "pmd/graph.hpp"

namespace pmd {

/// Decodes one graph6 string. An optional ">>graph6<<" header and trailing
/// whitespace are accepted; anything else malformed throws ParseError.
Graph parse_graph6(std::string_view text);

/// Encodes g in graph6 (1-byte size header for n <= 62, 4-byte otherwise).
std::string emit_graph6(const Graph& g);

/// Parses "u v" lines. An optional first non-comment line "n <count>" fixes
/// the order; '#' starts a comment. Loops and duplicate edges throw.
Graph parse_edge_list(std::string_view text);

std::string emit_edge_list(const Graph& g);

}  // namespace pmd
