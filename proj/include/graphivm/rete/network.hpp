#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <vector>

#include "graphivm/changeset.hpp"
#include "graphivm/graph_store.hpp"
#include "graphivm/plan.hpp"

namespace graphivm::rete {

struct EngineConfig {
  size_t path_budget = 1'000'000;  // cached paths per transitive node
  bool label_preservation = false;
};

class Node;

/// Propagation network mirroring a flat plan. Every node caches its output
/// bag; change sets travel child -> parent through a FIFO queue and are
/// processed one at a time on the calling thread.
class Network {
 public:
  Network(PlanNode fra, PropertyGraph& graph, EngineConfig config = {});
  ~Network();
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  /// Subscribes the leaves, propagates their initial scans to quiescence and
  /// returns the initial result as a positive change set.
  ChangeSet initialize();

  /// Feeds graph notifications (those addressed to other subscribers are
  /// ignored) and runs to quiescence. With `coalesce`, all changes to one
  /// subscription are merged into a single message first. Returns the
  /// result delta over the output columns.
  ChangeSet propagate(const std::vector<Notification>& notifications, bool coalesce = false);

  /// Current result rows: in window order under a SortAndTop root, canonical
  /// order otherwise.
  std::vector<Tuple> read_results() const;
  SignedBag result_bag() const;

  /// Output columns (the root's nested schema).
  const Schema& output_schema() const { return plan_.nested; }
  const PlanNode& plan() const { return plan_; }

  size_t node_count() const { return nodes_.size(); }
  const PlanNode& node_plan(size_t i) const;
  const SignedBag& node_output(size_t i) const;

  /// Drops all subscriptions (called automatically on destruction).
  void detach();

 private:
  struct Message {
    size_t node;
    size_t port;
    ChangeSet changes;
  };

  size_t build(const PlanNode& plan, std::optional<size_t> parent, size_t port);
  void run(SignedBag& sink);
  ChangeSet sink_delta(const SignedBag& sink) const;

  PlanNode plan_;
  PropertyGraph* graph_;
  EngineConfig config_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::vector<const PlanNode*> node_plans_;
  std::vector<std::optional<size_t>> parents_;
  std::vector<size_t> parent_ports_;
  std::vector<SignedBag> outputs_;
  // subscription id -> (node, port)
  std::vector<std::pair<SubscriptionId, std::pair<size_t, size_t>>> routes_;
  std::deque<Message> queue_;
  std::vector<size_t> output_columns_;
  SchemaPtr output_schema_;
  bool initialized_ = false;
};

}  // namespace graphivm::rete
