#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphivm/cypher/ast.hpp"
#include "graphivm/graph_store.hpp"
#include "graphivm/schema.hpp"

namespace graphivm {

/// Operator kinds of all three algebras. Expand and TransitiveExpand only
/// occur in graph plans; GetEdges and TransitiveGetEdges only after lowering.
enum class OpKind {
  GetVertices,
  GetEdges,
  TransitiveGetEdges,
  Expand,
  TransitiveExpand,
  Selection,
  Projection,
  DedupAll,
  NaturalJoin,
  LeftOuterJoin,
  Semijoin,
  Antijoin,
  Union,
  Unwind,
  Grouping,
  SortAndTop,
  SingletonUnit,
};

std::string_view to_string(OpKind kind);

bool is_nullary(OpKind kind);
bool is_binary(OpKind kind);

/// A projection or grouping output. In a Grouping node, items whose
/// expression is an aggregate call are aggregates; the rest are criteria.
struct ProjectionItem {
  cypher::ExprPtr expr;
  std::string alias;
};

struct SortKey {
  cypher::ExprPtr expr;
  bool descending = false;
};

struct PlanNode {
  OpKind kind = OpKind::SingletonUnit;

  // Navigation and nullary scans. For Expand/TransitiveExpand and their
  // lowered forms, v is the bound source, e the edge (or path) variable and
  // w the target; `direction` is the navigation direction from v.
  std::string v, e, w;
  std::vector<std::string> labels;         // GetVertices L, Expand target L, GetEdges L1
  std::vector<std::string> target_labels;  // GetEdges L2
  std::vector<std::string> source_labels;  // TransitiveExpand: label constraint written on v
  std::vector<std::string> types;          // empty = any type
  Direction direction = Direction::Out;
  uint32_t low = 1;
  std::optional<uint32_t> up;              // nullopt = unbounded
  bool reverse_path = false;               // report the path against navigation order
  std::vector<std::string> path_labels;    // TransitiveGetEdges: labels required on every path vertex

  cypher::ExprPtr condition;               // Selection
  std::vector<ProjectionItem> items;       // Projection, Grouping
  cypher::ExprPtr unwind_expr;             // Unwind
  std::string unwind_alias;
  std::vector<SortKey> keys;               // SortAndTop
  int64_t skip = 0;
  std::optional<int64_t> limit;

  std::vector<PlanNode> children;

  Schema nested;                           // bottom-up nested schema
  std::vector<Attribute> required;         // sorted, set by property inference
  Schema flat;                             // set by flat-schema computation
  bool has_flat = false;

  const PlanNode& child(size_t i = 0) const { return children.at(i); }
  PlanNode& child(size_t i = 0) { return children.at(i); }
};

/// Recomputes `node.nested` from its children (which must be up to date).
void compute_nested_schema(PlanNode& node);

/// Join keys of a binary node: variables shared by both children's nested schemas.
std::vector<std::string> join_variables(const PlanNode& node);

/// Grouping helpers.
bool is_aggregate_item(const ProjectionItem& item);

/// "Kind[args]"
std::string node_label(const PlanNode& node);

/// Indented tree, one operator per line: "Kind[args] :: ⟨nested⟩", with
/// " | req: {…} | flat: ⟨…⟩" appended when flat schemas are present.
std::string plan_text(const PlanNode& root);

/// Structural equality of plans (labels, schemas and children).
bool same_plan(const PlanNode& a, const PlanNode& b);

/// Pre-order visit.
template <typename F>
void visit_plan(const PlanNode& node, F&& f) {
  f(node);
  for (const auto& c : node.children) visit_plan(c, f);
}

size_t count_nodes(const PlanNode& root, OpKind kind);

/// Node constructors; each computes the nested schema of the new node.
namespace ops {
PlanNode get_vertices(std::string v, std::vector<std::string> labels = {});
PlanNode get_edges(std::string v, std::string e, std::string w, std::vector<std::string> types,
                   std::vector<std::string> source_labels, std::vector<std::string> target_labels,
                   Direction direction);
PlanNode expand(PlanNode child, std::string v, std::string e, std::string w,
                std::vector<std::string> types, std::vector<std::string> labels, Direction direction);
PlanNode transitive_expand(PlanNode child, std::string v, std::string e, std::string w,
                           std::vector<std::string> types, std::vector<std::string> labels,
                           Direction direction, uint32_t low, std::optional<uint32_t> up,
                           bool reverse_path = false, std::vector<std::string> source_labels = {});
PlanNode transitive_get_edges(std::string v, std::string e, std::string w,
                              std::vector<std::string> types, Direction direction, uint32_t low,
                              std::optional<uint32_t> up, bool reverse_path = false,
                              std::vector<std::string> path_labels = {});
PlanNode selection(PlanNode child, cypher::ExprPtr condition);
PlanNode projection(PlanNode child, std::vector<ProjectionItem> items);
PlanNode grouping(PlanNode child, std::vector<ProjectionItem> items);
PlanNode dedup(PlanNode child);
PlanNode binary(OpKind kind, PlanNode left, PlanNode right);
PlanNode unwind(PlanNode child, cypher::ExprPtr expr, std::string alias);
PlanNode sort_and_top(PlanNode child, std::vector<SortKey> keys, int64_t skip,
                      std::optional<int64_t> limit);
PlanNode singleton();
}  // namespace ops

}  // namespace graphivm
