#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "graphivm/graph_store.hpp"

namespace graphivm {

/// Parses a graph document:
///   {"vertices": [{"id", "labels": [...], "properties": {...}}],
///    "edges":    [{"id", "src", "trg", "type", "properties": {...}}]}
/// A property value is a scalar or {"bag": [scalars]}; null values are dropped.
PropertyGraph load_graph(std::string_view document);
PropertyGraph load_graph_file(const std::string& path);

/// One delta record, e.g. {"op": "add_edge", "id": "6", "src": "e", ...}.
GraphDelta parse_delta(std::string_view record);

/// Newline-delimited delta script; blank lines and lines starting with '#'
/// are skipped. Errors carry the 1-based line number in pos().line.
struct ScriptLine {
  size_t line = 0;
  GraphDelta delta;
};
std::vector<ScriptLine> parse_delta_script(std::string_view text);

std::string delta_to_json(const GraphDelta& delta);

std::string read_file(const std::string& path);

}  // namespace graphivm
