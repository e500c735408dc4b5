#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphivm/changeset.hpp"
#include "graphivm/graph_store.hpp"
#include "graphivm/plan.hpp"

namespace graphivm::testing {

/// A binding of plan variables to values; properties are read from the graph
/// on demand instead of being carried.
using Row = std::map<std::string, Value>;

/// From-scratch evaluation of a GRA (or NRA) plan by direct graph traversal.
/// Shares no code with the compiler back end or the network.
std::vector<Row> naive_rows(const PlanNode& plan, const PropertyGraph& graph);

/// Rows of naive_rows as tuples over the root's nested schema, in result
/// order when the root is SortAndTop and in canonical order otherwise.
std::vector<Tuple> naive_result(const PlanNode& plan, const PropertyGraph& graph);

/// naive_result as a bag.
SignedBag naive_bag(const PlanNode& plan, const PropertyGraph& graph);

/// All edge-distinct paths of length in [max(low,1), up] along `types` in
/// `direction`, as (from, edges, to) triples, by depth-first enumeration.
struct TrailRow {
  uint32_t from;
  std::vector<uint32_t> edges;
  uint32_t to;
  bool operator<(const TrailRow& o) const {
    return std::tie(from, edges, to) < std::tie(o.from, o.edges, o.to);
  }
  bool operator==(const TrailRow&) const = default;
};
std::vector<TrailRow> enumerate_trails(const PropertyGraph& graph, const std::vector<std::string>& types,
                                       Direction direction, uint32_t low, std::optional<uint32_t> up);

}  // namespace graphivm::testing
