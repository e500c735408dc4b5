#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "graphivm/cypher/validate.hpp"
#include "graphivm/graph_store.hpp"
#include "graphivm/plan.hpp"
#include "graphivm/rete/network.hpp"

namespace graphivm {

enum class Stage { Gra, Nra, Fra };

std::string_view to_string(Stage s);
std::optional<Stage> parse_stage(std::string_view text);

/// An Error annotated with the pipeline step that raised it
/// ("parse", "validate", "compile", "lower", "network").
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// A continuous query with every intermediate plan kept for inspection.
struct RegisteredQuery {
  std::string name;
  std::string text;
  cypher::ValidatedQuery validated;
  PlanNode gra;
  PlanNode nra;
  PlanNode fra;
  std::unique_ptr<rete::Network> network;
};

/// Sink delta of one query after one propagation.
struct QueryDelta {
  std::string name;
  ChangeSet delta;
};

/// A graph plus the queries kept up to date against it.
class Session {
 public:
  explicit Session(rete::EngineConfig config = {});
  ~Session();

  /// Replaces the graph and re-initializes every registered query.
  void load(PropertyGraph graph);
  void load_file(const std::string& path);

  /// Runs the whole pipeline and initializes the network. Registering an
  /// existing name replaces that query. Errors are StageErrors.
  const RegisteredQuery& register_query(const std::string& name, const std::string& text);

  /// Applies one delta and propagates it. On a propagation failure the graph
  /// is rolled back and all networks are rebuilt before the error escapes.
  std::vector<QueryDelta> apply(const GraphDelta& delta);

  /// Applies a sequence of deltas with a single coalesced propagation. A
  /// delta that fails validation stops the sequence; the deltas before it
  /// stay applied and are propagated before the error is rethrown.
  std::vector<QueryDelta> apply_batch(const std::vector<GraphDelta>& deltas);

  const RegisteredQuery& query(const std::string& name) const;
  bool has_query(const std::string& name) const { return queries_.count(name) > 0; }
  std::vector<std::string> query_names() const;

  std::vector<Tuple> results(const std::string& name) const;
  std::string explain(const std::string& name, Stage stage) const;

  const PropertyGraph& graph() const { return *graph_; }
  const rete::EngineConfig& config() const { return config_; }

 private:
  void start(RegisteredQuery& q);
  void rebuild_all();
  std::vector<QueryDelta> propagate(const std::vector<Notification>& notes, bool coalesce,
                                    const std::vector<GraphDelta>& undo);

  rete::EngineConfig config_;
  std::unique_ptr<PropertyGraph> graph_;
  std::map<std::string, RegisteredQuery> queries_;
};

/// Tab-separated rendering of one result row.
std::string format_row(const Tuple& row, const IdNames* names);

}  // namespace graphivm
