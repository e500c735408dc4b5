#include "graphivm/lowering.hpp"

#include <algorithm>
#include <set>

namespace graphivm {

using cypher::Expr;

namespace {

bool same_label_set(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

}  // namespace

PlanNode lower_to_nra(const PlanNode& gra, const LoweringOptions& options) {
  std::vector<PlanNode> children;
  for (const auto& c : gra.children) children.push_back(lower_to_nra(c, options));

  if (gra.kind == OpKind::Expand) {
    PlanNode& child = children[0];
    if (child.kind == OpKind::GetVertices && child.v == gra.v) {
      return ops::get_edges(gra.v, gra.e, gra.w, gra.types, child.labels, gra.labels, gra.direction);
    }
    return ops::binary(OpKind::NaturalJoin, std::move(child),
                       ops::get_edges(gra.v, gra.e, gra.w, gra.types, {}, gra.labels, gra.direction));
  }
  if (gra.kind == OpKind::TransitiveExpand) {
    const bool preserve = options.label_preservation && !gra.labels.empty() &&
                          same_label_set(gra.source_labels, gra.labels);
    PlanNode paths = ops::transitive_get_edges(gra.v, gra.e, gra.w, gra.types, gra.direction, gra.low,
                                               gra.up, gra.reverse_path,
                                               preserve ? gra.labels : std::vector<std::string>{});
    PlanNode joined = ops::binary(OpKind::NaturalJoin, std::move(children[0]), std::move(paths));
    if (preserve || gra.labels.empty()) return joined;
    return ops::binary(OpKind::NaturalJoin, std::move(joined), ops::get_vertices(gra.w, gra.labels));
  }

  PlanNode out = gra;
  out.children = std::move(children);
  out.required.clear();
  out.flat.clear();
  out.has_flat = false;
  compute_nested_schema(out);
  return out;
}

namespace {

void leaves(const Expr& e, std::set<Attribute>& out) {
  if (e.kind == Expr::Kind::Property) out.insert(Attribute::property(e.name, e.key));
  if (e.kind == Expr::Kind::LabelPredicate) out.insert(Attribute::labels(e.name));
  for (const auto& a : e.args) leaves(*a, out);
}

std::vector<Attribute> sorted(const std::set<Attribute>& s) { return {s.begin(), s.end()}; }

bool element_variable(const Schema& schema, const std::string& var) {
  auto idx = find_variable(schema, var);
  return idx && schema[*idx].is_element();
}

void infer(PlanNode& node, std::set<Attribute> props) {
  for (const auto& p : extract_properties(node)) props.insert(p);

  if (is_nullary(node.kind)) {
    node.required = sorted(props);
    return;
  }
  if (node.kind == OpKind::Projection || node.kind == OpKind::Grouping) {
    node.required = sorted(props);
    // Only columns the child can supply flow further down; properties of a
    // renamed element (WITH p AS x ... x.name) are requested under the old name.
    const Schema& in = node.child().nested;
    std::set<Attribute> down;
    for (const auto& p : props) {
      if (has_variable(in, p.var)) {
        down.insert(p);
        continue;
      }
      for (const auto& item : node.items) {
        if (item.alias == p.var && item.expr->kind == Expr::Kind::Variable &&
            element_variable(in, item.expr->name)) {
          Attribute renamed = p;
          renamed.var = item.expr->name;
          down.insert(renamed);
        }
      }
    }
    infer(node.child(), std::move(down));
    return;
  }
  if (!is_binary(node.kind)) {
    infer(node.child(), std::move(props));
    return;
  }
  if (node.kind == OpKind::Union) {
    infer(node.child(0), props);
    infer(node.child(1), std::move(props));
    return;
  }
  std::set<Attribute> left, right;
  for (const auto& p : props) {
    if (has_variable(node.child(0).nested, p.var)) {
      left.insert(p);
    } else if (has_variable(node.child(1).nested, p.var)) {
      right.insert(p);
    } else {
      throw Error(ErrorKind::InferenceError,
                  "required column " + p.name() + " is bound by neither input of " + node_label(node));
    }
  }
  infer(node.child(0), std::move(left));
  infer(node.child(1), std::move(right));
}

// Required columns of element variables that `schema` binds, in sorted order.
Schema carried(const std::vector<Attribute>& required, const Schema& schema) {
  Schema out;
  for (const auto& a : required) {
    if (element_variable(schema, a.var)) out.push_back(a);
  }
  return out;
}

void flatten(PlanNode& node) {
  for (auto& c : node.children) flatten(c);
  Schema flat;
  switch (node.kind) {
    case OpKind::GetVertices:
    case OpKind::GetEdges:
    case OpKind::TransitiveGetEdges:
    case OpKind::SingletonUnit:
    case OpKind::Projection:
    case OpKind::Grouping:
      flat = node.nested;
      for (auto& a : carried(node.required, node.nested)) flat.push_back(std::move(a));
      break;
    case OpKind::Selection:
    case OpKind::DedupAll:
    case OpKind::SortAndTop:
    case OpKind::Semijoin:
    case OpKind::Antijoin: flat = node.child(0).flat; break;
    case OpKind::Unwind:
      flat = node.child().flat;
      flat.push_back(Attribute::variable(node.unwind_alias, VarType::Value));
      break;
    case OpKind::NaturalJoin:
    case OpKind::LeftOuterJoin:
      flat = node.child(0).flat;
      for (const auto& a : node.child(1).flat) {
        if (!find_attribute(flat, a)) flat.push_back(a);
      }
      break;
    case OpKind::Union:
      if (!(node.child(0).flat == node.child(1).flat)) {
        throw Error(ErrorKind::SchemaMismatch, "union inputs have different schemas: " +
                                                   schema_text(node.child(0).flat) + " vs " +
                                                   schema_text(node.child(1).flat));
      }
      flat = node.child(0).flat;
      break;
    case OpKind::Expand:
    case OpKind::TransitiveExpand:
      throw Error(ErrorKind::InferenceError, "flat schemas require a lowered plan");
  }
  node.flat = std::move(flat);
  node.has_flat = true;
}

}  // namespace

std::vector<Attribute> extract_properties(const PlanNode& op) {
  std::set<Attribute> out;
  switch (op.kind) {
    case OpKind::Selection: leaves(*op.condition, out); break;
    case OpKind::Projection:
    case OpKind::Grouping:
      for (const auto& item : op.items) leaves(*item.expr, out);
      break;
    case OpKind::SortAndTop:
      for (const auto& k : op.keys) leaves(*k.expr, out);
      break;
    case OpKind::Unwind: leaves(*op.unwind_expr, out); break;
    default: break;
  }
  return sorted(out);
}

PlanNode infer_required_properties(PlanNode nra) {
  infer(nra, {});
  return nra;
}

PlanNode compute_flat_schemas(PlanNode annotated) {
  flatten(annotated);
  return annotated;
}

PlanNode lower_to_fra(const PlanNode& gra, const LoweringOptions& options) {
  return compute_flat_schemas(infer_required_properties(lower_to_nra(gra, options)));
}

}  // namespace graphivm
