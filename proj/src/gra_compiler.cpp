#include "graphivm/gra_compiler.hpp"

#include <algorithm>

namespace graphivm {

using cypher::Expr;
using cypher::ExprPtr;
using cypher::PatternAst;

namespace {

std::set<std::string> schema_variables(const Schema& s) {
  std::set<std::string> out;
  for (const auto& a : s) {
    if (a.is_variable()) out.insert(a.var);
  }
  return out;
}

void split_conjuncts(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->kind == Expr::Kind::And) {
    split_conjuncts(e->args[0], out);
    split_conjuncts(e->args[1], out);
  } else {
    out.push_back(e);
  }
}

// "v.k = literal" or "literal = v.k" among the top-level conjuncts
bool has_equality_filter(const Expr* where, const std::string& var) {
  if (where == nullptr) return false;
  if (where->kind == Expr::Kind::And) {
    return has_equality_filter(where->args[0].get(), var) ||
           has_equality_filter(where->args[1].get(), var);
  }
  if (where->kind != Expr::Kind::Compare || where->compare != cypher::CompareOp::Eq) return false;
  auto matches = [&](const Expr& prop, const Expr& lit) {
    return prop.kind == Expr::Kind::Property && prop.name == var && lit.kind == Expr::Kind::Literal;
  };
  const Expr& l = *where->args[0];
  const Expr& r = *where->args[1];
  return matches(l, r) || matches(r, l);
}

size_t choose_anchor(const PatternAst& p, const std::set<std::string>& prefer, const Expr* where) {
  for (size_t i = 0; i < p.nodes.size(); ++i) {
    if (prefer.count(p.nodes[i].var)) return i;
  }
  const bool transitive = std::any_of(p.rels.begin(), p.rels.end(),
                                      [](const cypher::RelPattern& r) { return r.range.has_value(); });
  if (transitive) {
    for (size_t i = 0; i < p.nodes.size(); ++i) {
      if (has_equality_filter(where, p.nodes[i].var)) return i;
    }
  }
  return 0;
}

PlanNode hop(PlanNode tree, const PatternAst& p, size_t rel, bool leftwards) {
  const auto& r = p.rels[rel];
  const auto& src = p.nodes[leftwards ? rel + 1 : rel];
  const auto& trg = p.nodes[leftwards ? rel : rel + 1];
  const Direction dir = leftwards ? reverse(r.direction) : r.direction;
  if (!r.range) {
    return ops::expand(std::move(tree), src.var, r.var, trg.var, r.types, trg.labels, dir);
  }
  return ops::transitive_expand(std::move(tree), src.var, r.var, trg.var, r.types, trg.labels, dir,
                                r.range->low, r.range->up, leftwards, src.labels);
}

PlanNode navigate(PlanNode tree, const PatternAst& p, size_t anchor) {
  for (size_t i = anchor; i < p.rels.size(); ++i) tree = hop(std::move(tree), p, i, false);
  for (size_t i = anchor; i-- > 0;) tree = hop(std::move(tree), p, i, true);
  return tree;
}

bool subset(const std::set<std::string>& vars, const Schema& schema) {
  return std::all_of(vars.begin(), vars.end(),
                     [&](const std::string& v) { return has_variable(schema, v); });
}

// Returns true if the selection was placed somewhere below `node`.
bool push_into(PlanNode& node, const std::set<std::string>& vars, const ExprPtr& condition) {
  auto place = [&](size_t i) {
    PlanNode& c = node.children[i];
    if (!subset(vars, c.nested)) return false;
    if (!push_into(c, vars, condition)) c = ops::selection(std::move(c), condition);
    return true;
  };
  switch (node.kind) {
    case OpKind::Expand:
    case OpKind::TransitiveExpand:
    case OpKind::Selection: return place(0);
    case OpKind::NaturalJoin: return place(0) || place(1);
    case OpKind::LeftOuterJoin:
    case OpKind::Semijoin:
    case OpKind::Antijoin: return place(0);
    default: return false;
  }
}

}  // namespace

PlanNode push_selection(PlanNode tree, ExprPtr condition) {
  std::set<std::string> vars;
  cypher::collect_variables(*condition, vars);
  if (push_into(tree, vars, condition)) return tree;
  return ops::selection(std::move(tree), std::move(condition));
}

PlanNode compile_pattern(const PatternAst& p, std::optional<PlanNode> base,
                         const std::set<std::string>& prefer, const Expr* where) {
  if (base) {
    const auto bound = schema_variables(base->nested);
    for (size_t i = 0; i < p.nodes.size(); ++i) {
      const auto& n = p.nodes[i];
      if (!bound.count(n.var)) continue;
      PlanNode tree = std::move(*base);
      if (!n.labels.empty()) tree = push_selection(std::move(tree), cypher::make_labels(n.var, n.labels));
      return navigate(std::move(tree), p, i);
    }
  }
  const size_t anchor = choose_anchor(p, prefer, where);
  PlanNode tree = navigate(ops::get_vertices(p.nodes[anchor].var, p.nodes[anchor].labels), p, anchor);
  if (!base) return tree;
  return ops::binary(OpKind::NaturalJoin, std::move(*base), std::move(tree));
}

PlanNode build_return(const std::vector<cypher::ReturnItem>& items, bool distinct, PlanNode incoming) {
  std::vector<ProjectionItem> out;
  bool aggregates = false;
  for (const auto& item : items) {
    out.push_back({item.expr, item.alias});
    aggregates = aggregates || item.expr->kind == Expr::Kind::Aggregate;
  }
  PlanNode node = aggregates ? ops::grouping(std::move(incoming), std::move(out))
                             : ops::projection(std::move(incoming), std::move(out));
  if (distinct) node = ops::dedup(std::move(node));
  return node;
}

namespace {

PlanNode apply_where(PlanNode tree, const ExprPtr& condition) {
  std::vector<ExprPtr> conjuncts;
  split_conjuncts(condition, conjuncts);
  ExprPtr combined;
  std::vector<ExprPtr> label_filters;
  std::vector<ExprPtr> patterns;
  for (const auto& c : conjuncts) {
    if (c->kind == Expr::Kind::PatternPredicate) {
      patterns.push_back(c);
    } else if (c->kind == Expr::Kind::LabelPredicate) {
      label_filters.push_back(c);
    } else {
      combined = combined ? cypher::make_and(combined, c) : c;
    }
  }
  for (const auto& l : label_filters) tree = push_selection(std::move(tree), l);
  if (combined) tree = push_selection(std::move(tree), combined);
  for (const auto& pp : patterns) {
    PlanNode sub = compile_pattern(*pp->pattern, std::nullopt, schema_variables(tree.nested));
    tree = ops::binary(pp->negated ? OpKind::Antijoin : OpKind::Semijoin, std::move(tree), std::move(sub));
  }
  return tree;
}

}  // namespace

PlanNode compile(const cypher::ValidatedQuery& query) {
  const auto& clauses = query.ast.clauses;
  std::optional<PlanNode> cur;
  auto input = [&]() { return cur ? std::move(*cur) : ops::singleton(); };

  for (size_t i = 0; i < clauses.size(); ++i) {
    const auto& clause = clauses[i];
    const Expr* where = nullptr;
    if (i + 1 < clauses.size()) {
      if (auto* w = std::get_if<cypher::WhereClause>(&clauses[i + 1])) where = w->condition.get();
    }
    if (auto* m = std::get_if<cypher::MatchClause>(&clause)) {
      if (!m->optional) {
        for (const auto& p : m->patterns) cur = compile_pattern(p, std::move(cur), {}, where);
        continue;
      }
      const auto outer = cur ? schema_variables(cur->nested) : std::set<std::string>{};
      std::optional<PlanNode> right;
      for (const auto& p : m->patterns) right = compile_pattern(p, std::move(right), outer, where);
      cur = ops::binary(OpKind::LeftOuterJoin, input(), std::move(*right));
    } else if (auto* w = std::get_if<cypher::WhereClause>(&clause)) {
      cur = apply_where(input(), w->condition);
    } else if (auto* with = std::get_if<cypher::WithClause>(&clause)) {
      cur = build_return(with->items, with->distinct, input());
    } else if (auto* u = std::get_if<cypher::UnwindClause>(&clause)) {
      cur = ops::unwind(input(), u->expr, u->alias);
    } else if (auto* r = std::get_if<cypher::ReturnClause>(&clause)) {
      cur = build_return(r->items, r->distinct, input());
    } else if (auto* o = std::get_if<cypher::OrderSkipLimitClause>(&clause)) {
      std::vector<SortKey> keys;
      for (const auto& k : o->keys) keys.push_back({k.expr, k.descending});
      cur = ops::sort_and_top(input(), std::move(keys), o->skip.value_or(0), o->limit);
    }
  }
  return input();
}

}  // namespace graphivm
