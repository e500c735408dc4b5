#include "graphivm/plan.hpp"

#include <algorithm>

namespace graphivm {

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::GetVertices: return "GetVertices";
    case OpKind::GetEdges: return "GetEdges";
    case OpKind::TransitiveGetEdges: return "TransitiveGetEdges";
    case OpKind::Expand: return "Expand";
    case OpKind::TransitiveExpand: return "TransitiveExpand";
    case OpKind::Selection: return "Selection";
    case OpKind::Projection: return "Projection";
    case OpKind::DedupAll: return "DedupAll";
    case OpKind::NaturalJoin: return "NaturalJoin";
    case OpKind::LeftOuterJoin: return "LeftOuterJoin";
    case OpKind::Semijoin: return "Semijoin";
    case OpKind::Antijoin: return "Antijoin";
    case OpKind::Union: return "Union";
    case OpKind::Unwind: return "Unwind";
    case OpKind::Grouping: return "Grouping";
    case OpKind::SortAndTop: return "SortAndTop";
    case OpKind::SingletonUnit: return "SingletonUnit";
  }
  return "?";
}

bool is_nullary(OpKind kind) {
  return kind == OpKind::GetVertices || kind == OpKind::GetEdges ||
         kind == OpKind::TransitiveGetEdges || kind == OpKind::SingletonUnit;
}

bool is_binary(OpKind kind) {
  switch (kind) {
    case OpKind::NaturalJoin:
    case OpKind::LeftOuterJoin:
    case OpKind::Semijoin:
    case OpKind::Antijoin:
    case OpKind::Union: return true;
    default: return false;
  }
}

bool is_aggregate_item(const ProjectionItem& item) {
  return item.expr->kind == cypher::Expr::Kind::Aggregate;
}

namespace {

void append_unique(Schema& s, const Attribute& a) {
  if (!find_attribute(s, a)) s.push_back(a);
}

Schema projection_schema(const PlanNode& node) {
  Schema out;
  const Schema& in = node.child().nested;
  for (const auto& item : node.items) {
    VarType type = VarType::Value;
    if (item.expr->kind == cypher::Expr::Kind::Variable) {
      if (auto idx = find_variable(in, item.expr->name)) type = in[*idx].type;
    }
    out.push_back(Attribute::variable(item.alias, type));
  }
  return out;
}

}  // namespace

void compute_nested_schema(PlanNode& node) {
  Schema s;
  switch (node.kind) {
    case OpKind::GetVertices: s = {Attribute::variable(node.v, VarType::Vertex)}; break;
    case OpKind::GetEdges:
    case OpKind::TransitiveGetEdges:
      s = {Attribute::variable(node.v, VarType::Vertex),
           Attribute::variable(node.e, node.kind == OpKind::GetEdges ? VarType::Edge : VarType::Path)};
      append_unique(s, Attribute::variable(node.w, VarType::Vertex));
      break;
    case OpKind::Expand:
    case OpKind::TransitiveExpand:
      s = node.child().nested;
      append_unique(s, Attribute::variable(node.e, node.kind == OpKind::Expand ? VarType::Edge : VarType::Path));
      append_unique(s, Attribute::variable(node.w, VarType::Vertex));
      break;
    case OpKind::Selection:
    case OpKind::DedupAll:
    case OpKind::SortAndTop:
    case OpKind::Semijoin:
    case OpKind::Antijoin:
    case OpKind::Union: s = node.child().nested; break;
    case OpKind::Projection:
    case OpKind::Grouping: s = projection_schema(node); break;
    case OpKind::NaturalJoin:
    case OpKind::LeftOuterJoin:
      s = node.child(0).nested;
      for (const auto& a : node.child(1).nested) append_unique(s, a);
      break;
    case OpKind::Unwind:
      s = node.child().nested;
      s.push_back(Attribute::variable(node.unwind_alias, VarType::Value));
      break;
    case OpKind::SingletonUnit: break;
  }
  node.nested = std::move(s);
}

std::vector<std::string> join_variables(const PlanNode& node) {
  std::vector<std::string> out;
  for (const auto& a : node.child(0).nested) {
    if (a.is_variable() && has_variable(node.child(1).nested, a.var)) out.push_back(a.var);
  }
  return out;
}

namespace {

using cypher::identifier_text;

std::string join_names(const std::vector<std::string>& names, const char* sep, bool ident) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i != 0) out += sep;
    out += ident ? identifier_text(names[i]) : names[i];
  }
  return out;
}

std::string labels_suffix(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) out += ":" + identifier_text(l);
  return out;
}

std::string range_text(uint32_t low, const std::optional<uint32_t>& up) {
  std::string out = "*" + std::to_string(low) + "..";
  if (up) out += std::to_string(*up);
  return out;
}

std::string hop_text(const PlanNode& n, const std::vector<std::string>& src_labels,
                     const std::vector<std::string>& trg_labels, bool ranged) {
  std::string rel = identifier_text(n.e);
  if (!n.types.empty()) rel += ":" + join_names(n.types, "|", true);
  if (ranged) rel += range_text(n.low, n.up);
  std::string out = "(" + identifier_text(n.v) + labels_suffix(src_labels) + ")";
  out += n.direction == Direction::In ? "<-[" : "-[";
  out += rel;
  out += n.direction == Direction::Out ? "]->" : "]-";
  out += "(" + identifier_text(n.w) + labels_suffix(trg_labels) + ")";
  return out;
}

std::string item_text(const ProjectionItem& item) {
  std::string text = cypher::to_text(*item.expr);
  if (text == item.alias) return text;
  return text + " AS " + identifier_text(item.alias);
}

}  // namespace

std::string node_label(const PlanNode& n) {
  std::string args;
  switch (n.kind) {
    case OpKind::GetVertices: args = identifier_text(n.v) + labels_suffix(n.labels); break;
    case OpKind::GetEdges: args = hop_text(n, n.labels, n.target_labels, false); break;
    case OpKind::Expand: args = hop_text(n, {}, n.labels, false); break;
    case OpKind::TransitiveExpand: args = hop_text(n, {}, n.labels, true); break;
    case OpKind::TransitiveGetEdges:
      args = hop_text(n, {}, {}, true);
      if (!n.path_labels.empty()) args += "; path" + labels_suffix(n.path_labels);
      break;
    case OpKind::Selection: args = cypher::to_text(*n.condition); break;
    case OpKind::Projection:
      for (size_t i = 0; i < n.items.size(); ++i) {
        if (i != 0) args += ", ";
        args += item_text(n.items[i]);
      }
      break;
    case OpKind::Grouping: {
      std::string criteria, aggregates;
      for (const auto& item : n.items) {
        std::string& dst = is_aggregate_item(item) ? aggregates : criteria;
        if (!dst.empty()) dst += ", ";
        dst += item_text(item);
      }
      args = criteria + "; " + aggregates;
      break;
    }
    case OpKind::Unwind:
      args = cypher::to_text(*n.unwind_expr) + " AS " + identifier_text(n.unwind_alias);
      break;
    case OpKind::SortAndTop:
      for (size_t i = 0; i < n.keys.size(); ++i) {
        if (i != 0) args += ", ";
        args += cypher::to_text(*n.keys[i].expr) + (n.keys[i].descending ? " DESC" : " ASC");
      }
      args += (n.keys.empty() ? "" : "; ") + std::string("skip ") + std::to_string(n.skip);
      if (n.limit) args += "; limit " + std::to_string(*n.limit);
      break;
    case OpKind::NaturalJoin:
    case OpKind::LeftOuterJoin:
    case OpKind::Semijoin:
    case OpKind::Antijoin:
      if (n.children.size() == 2) args = join_names(join_variables(n), ", ", true);
      break;
    default: break;
  }
  std::string out(to_string(n.kind));
  if (!args.empty()) out += "[" + args + "]";
  return out;
}

namespace {

void print(const PlanNode& n, int depth, std::string& out) {
  out += std::string(static_cast<size_t>(depth) * 2, ' ');
  out += node_label(n) + " :: " + schema_text(n.nested);
  if (n.has_flat) {
    out += " | req: {";
    for (size_t i = 0; i < n.required.size(); ++i) {
      if (i != 0) out += ", ";
      out += n.required[i].name();
    }
    out += "} | flat: " + schema_text(n.flat);
  }
  out += "\n";
  for (const auto& c : n.children) print(c, depth + 1, out);
}

}  // namespace

std::string plan_text(const PlanNode& root) {
  std::string out;
  print(root, 0, out);
  return out;
}

bool same_plan(const PlanNode& a, const PlanNode& b) {
  if (a.kind != b.kind || node_label(a) != node_label(b) || !(a.nested == b.nested) ||
      a.required != b.required || !(a.flat == b.flat) || a.reverse_path != b.reverse_path ||
      a.children.size() != b.children.size()) {
    return false;
  }
  for (size_t i = 0; i < a.children.size(); ++i) {
    if (!same_plan(a.children[i], b.children[i])) return false;
  }
  return true;
}

size_t count_nodes(const PlanNode& root, OpKind kind) {
  size_t n = 0;
  visit_plan(root, [&](const PlanNode& p) { n += p.kind == kind ? 1 : 0; });
  return n;
}

namespace ops {

namespace {

PlanNode finish(PlanNode n) {
  compute_nested_schema(n);
  return n;
}

PlanNode unary(OpKind kind, PlanNode child) {
  PlanNode n;
  n.kind = kind;
  n.children.push_back(std::move(child));
  return n;
}

}  // namespace

PlanNode get_vertices(std::string v, std::vector<std::string> labels) {
  PlanNode n;
  n.kind = OpKind::GetVertices;
  n.v = std::move(v);
  n.labels = std::move(labels);
  return finish(std::move(n));
}

PlanNode get_edges(std::string v, std::string e, std::string w, std::vector<std::string> types,
                   std::vector<std::string> source_labels, std::vector<std::string> target_labels,
                   Direction direction) {
  PlanNode n;
  n.kind = OpKind::GetEdges;
  n.v = std::move(v);
  n.e = std::move(e);
  n.w = std::move(w);
  n.types = std::move(types);
  n.labels = std::move(source_labels);
  n.target_labels = std::move(target_labels);
  n.direction = direction;
  return finish(std::move(n));
}

PlanNode expand(PlanNode child, std::string v, std::string e, std::string w,
                std::vector<std::string> types, std::vector<std::string> labels, Direction direction) {
  PlanNode n = unary(OpKind::Expand, std::move(child));
  n.v = std::move(v);
  n.e = std::move(e);
  n.w = std::move(w);
  n.types = std::move(types);
  n.labels = std::move(labels);
  n.direction = direction;
  return finish(std::move(n));
}

PlanNode transitive_expand(PlanNode child, std::string v, std::string e, std::string w,
                           std::vector<std::string> types, std::vector<std::string> labels,
                           Direction direction, uint32_t low, std::optional<uint32_t> up,
                           bool reverse_path, std::vector<std::string> source_labels) {
  PlanNode n = unary(OpKind::TransitiveExpand, std::move(child));
  n.v = std::move(v);
  n.e = std::move(e);
  n.w = std::move(w);
  n.types = std::move(types);
  n.labels = std::move(labels);
  n.direction = direction;
  n.low = low;
  n.up = up;
  n.reverse_path = reverse_path;
  n.source_labels = std::move(source_labels);
  return finish(std::move(n));
}

PlanNode transitive_get_edges(std::string v, std::string e, std::string w,
                              std::vector<std::string> types, Direction direction, uint32_t low,
                              std::optional<uint32_t> up, bool reverse_path,
                              std::vector<std::string> path_labels) {
  PlanNode n;
  n.kind = OpKind::TransitiveGetEdges;
  n.v = std::move(v);
  n.e = std::move(e);
  n.w = std::move(w);
  n.types = std::move(types);
  n.direction = direction;
  n.low = low;
  n.up = up;
  n.reverse_path = reverse_path;
  n.path_labels = std::move(path_labels);
  return finish(std::move(n));
}

PlanNode selection(PlanNode child, cypher::ExprPtr condition) {
  PlanNode n = unary(OpKind::Selection, std::move(child));
  n.condition = std::move(condition);
  return finish(std::move(n));
}

PlanNode projection(PlanNode child, std::vector<ProjectionItem> items) {
  PlanNode n = unary(OpKind::Projection, std::move(child));
  n.items = std::move(items);
  return finish(std::move(n));
}

PlanNode grouping(PlanNode child, std::vector<ProjectionItem> items) {
  PlanNode n = unary(OpKind::Grouping, std::move(child));
  n.items = std::move(items);
  return finish(std::move(n));
}

PlanNode dedup(PlanNode child) { return finish(unary(OpKind::DedupAll, std::move(child))); }

PlanNode binary(OpKind kind, PlanNode left, PlanNode right) {
  PlanNode n;
  n.kind = kind;
  n.children.push_back(std::move(left));
  n.children.push_back(std::move(right));
  return finish(std::move(n));
}

PlanNode unwind(PlanNode child, cypher::ExprPtr expr, std::string alias) {
  PlanNode n = unary(OpKind::Unwind, std::move(child));
  n.unwind_expr = std::move(expr);
  n.unwind_alias = std::move(alias);
  return finish(std::move(n));
}

PlanNode sort_and_top(PlanNode child, std::vector<SortKey> keys, int64_t skip,
                      std::optional<int64_t> limit) {
  PlanNode n = unary(OpKind::SortAndTop, std::move(child));
  n.keys = std::move(keys);
  n.skip = skip;
  n.limit = limit;
  return finish(std::move(n));
}

PlanNode singleton() {
  PlanNode n;
  n.kind = OpKind::SingletonUnit;
  return n;
}

}  // namespace ops

}  // namespace graphivm
