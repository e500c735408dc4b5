#pragma once

#include <random>
#include <string>
#include <vector>

#include "graphivm/graph_store.hpp"
#include "graphivm/plan.hpp"

namespace graphivm::testing {

using Rng = std::mt19937_64;

/// Vocabulary shared by the graph and query generators: labels A and B, a
/// common edge type R and a sparse type S (kept below kMaxSparseEdges so
/// unbounded transitive patterns stay small), string "name", integer "age",
/// float "score", bag "tags" on vertices and integer "w" on edges.
inline constexpr size_t kMaxVertices = 20;
inline constexpr size_t kMaxEdges = 40;
inline constexpr size_t kMaxSparseEdges = 6;

/// Produces valid deltas against the graph it is given, with fresh ids.
class DeltaGenerator {
 public:
  explicit DeltaGenerator(uint64_t seed) : rng_(seed) {}

  /// Deltas building a random graph with up to `vertices` / `edges` elements.
  std::vector<GraphDelta> initial_graph(size_t vertices, size_t edges);

  /// One random delta valid against `g`.
  GraphDelta next(const PropertyGraph& g);

  Rng& rng() { return rng_; }

 private:
  GraphDelta add_vertex();
  std::optional<GraphDelta> add_edge(const PropertyGraph& g, const std::vector<std::string>& vertices);
  PropertyMap vertex_properties();

  Rng rng_;
  size_t next_vertex_ = 0;
  size_t next_edge_ = 0;
};

/// A random query over the generator vocabulary. Every query parses,
/// validates and evaluates without type errors on generated graphs.
std::string random_query(Rng& rng);

/// A GRA plan whose root is a Union of two compiled random queries with
/// identical output columns.
PlanNode random_union_plan(Rng& rng);

/// Applies deltas to a fresh graph.
PropertyGraph build_graph(const std::vector<GraphDelta>& deltas);

}  // namespace graphivm::testing
