#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "graphivm/changeset.hpp"
#include "graphivm/graph_store.hpp"
#include "graphivm/plan.hpp"
#include "graphivm/rete/network.hpp"

namespace graphivm::rete {

/// One operator of the network. A node owns its caches exclusively and sees
/// the rest of the network only through the change sets passed to on_input.
class Node {
 public:
  explicit Node(const PlanNode& plan);
  virtual ~Node() = default;

  /// Consumes a delta arriving on input `port` (0 = left/only child,
  /// 1 = right child) and returns the resulting output delta. Throws
  /// InconsistentRetraction when a retraction exceeds cached multiplicity.
  virtual ChangeSet on_input(size_t port, const ChangeSet& delta) = 0;

  /// Graph scans feeding this node, one per input port (leaves only).
  virtual std::vector<NullaryDescriptor> subscriptions() const { return {}; }

  /// Output produced without any input (the unit relation).
  virtual std::optional<ChangeSet> initial() const { return std::nullopt; }

  /// Current output in presentation order, for order-sensitive operators.
  virtual std::optional<std::vector<Tuple>> ordered_output() const { return std::nullopt; }

  const SchemaPtr& schema() const { return schema_; }
  const PlanNode& plan() const { return plan_; }

 protected:
  const PlanNode& plan_;
  SchemaPtr schema_;
};

std::unique_ptr<Node> make_node(const PlanNode& plan, const EngineConfig& config);

/// Calls f(tuple, sign) for every retraction (sign -1) then every insertion (+1).
template <typename F>
void for_each_change(const ChangeSet& cs, F&& f) {
  for (const auto& t : cs.negative) f(t, int64_t{-1});
  for (const auto& t : cs.positive) f(t, int64_t{1});
}

/// Ordering used by SortAndTop: the sort keys (DESC reverses the total value
/// order, so nulls come last ascending and first descending), then the
/// canonical order of the whole row.
struct SortEntry {
  Tuple keys;
  Tuple row;
};
struct SortEntryLess {
  std::vector<bool> descending;
  bool operator()(const SortEntry& a, const SortEntry& b) const;
};

}  // namespace graphivm::rete
