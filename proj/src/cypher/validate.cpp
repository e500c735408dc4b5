#include "graphivm/cypher/validate.hpp"

#include <set>

#include "graphivm/cypher/parser.hpp"

namespace graphivm::cypher {

namespace {

using Scope = std::map<std::string, VarType>;

[[noreturn]] void fail(ErrorKind kind, const std::string& message, SourcePos pos) {
  throw Error(kind, message, pos);
}

std::string quoted(const std::string& name) { return "'" + name + "'"; }

/// Binds pattern variables into `scope`. With `bind_new == false` (pattern
/// predicates) named variables must already be in scope.
void bind_pattern(const PatternAst& p, Scope& scope, bool bind_new, std::set<std::string>& rels_here) {
  for (const auto& n : p.nodes) {
    auto it = scope.find(n.var);
    if (it == scope.end()) {
      if (!bind_new && !n.anonymous) {
        fail(ErrorKind::UnboundVariable, "variable " + quoted(n.var) + " is not defined", n.pos);
      }
      scope.emplace(n.var, VarType::Vertex);
    } else if (it->second != VarType::Vertex) {
      fail(ErrorKind::DuplicateVariable,
           "variable " + quoted(n.var) + " is already bound as " + std::string(to_string(it->second)),
           n.pos);
    }
  }
  for (const auto& r : p.rels) {
    const VarType type = r.range ? VarType::Path : VarType::Edge;
    auto it = scope.find(r.var);
    if (bind_new) {
      if (it != scope.end() || !rels_here.insert(r.var).second) {
        fail(ErrorKind::DuplicateVariable,
             "relationship variable " + quoted(r.var) + " is already bound", r.pos);
      }
      scope.emplace(r.var, type);
      continue;
    }
    if (it == scope.end()) {
      if (!r.anonymous) {
        fail(ErrorKind::UnboundVariable, "variable " + quoted(r.var) + " is not defined", r.pos);
      }
      scope.emplace(r.var, type);
    } else if (it->second != type) {
      fail(ErrorKind::DuplicateVariable,
           "variable " + quoted(r.var) + " is already bound as " + std::string(to_string(it->second)),
           r.pos);
    }
  }
}

enum class AggregatePolicy { Forbidden, TopLevelItem };

void check_expr(const Expr& e, const Scope& scope, AggregatePolicy policy, bool inside_aggregate,
                bool top) {
  switch (e.kind) {
    case Expr::Kind::Variable:
      if (!scope.count(e.name)) {
        fail(ErrorKind::UnboundVariable, "variable " + quoted(e.name) + " is not defined", e.pos);
      }
      break;
    case Expr::Kind::Property:
    case Expr::Kind::LabelPredicate: {
      auto it = scope.find(e.name);
      if (it == scope.end()) {
        fail(ErrorKind::UnboundVariable, "variable " + quoted(e.name) + " is not defined", e.pos);
      }
      const bool ok = e.kind == Expr::Kind::Property
                          ? (it->second == VarType::Vertex || it->second == VarType::Edge)
                          : it->second == VarType::Vertex;
      if (!ok) {
        fail(ErrorKind::SemanticError,
             std::string(e.kind == Expr::Kind::Property ? "property access" : "label predicate") +
                 " on " + quoted(e.name) + ", which is a " + std::string(to_string(it->second)),
             e.pos);
      }
      break;
    }
    case Expr::Kind::PatternPredicate: {
      Scope local = scope;
      std::set<std::string> rels;
      bind_pattern(*e.pattern, local, false, rels);
      break;
    }
    case Expr::Kind::Aggregate:
      if (policy == AggregatePolicy::Forbidden) {
        fail(ErrorKind::MisplacedAggregate,
             "aggregate " + std::string(to_string(e.aggregate)) + "() is only allowed in WITH or RETURN items",
             e.pos);
      }
      if (inside_aggregate) {
        fail(ErrorKind::MisplacedAggregate, "aggregates cannot be nested", e.pos);
      }
      for (const auto& a : e.args) check_expr(*a, scope, policy, true, false);
      if (!top) {
        fail(ErrorKind::UnsupportedFeature,
             "aggregates must form a whole WITH/RETURN item", e.pos);
      }
      return;
    default: break;
  }
  for (const auto& a : e.args) check_expr(*a, scope, policy, inside_aggregate, false);
}

/// Pattern predicates compile to semijoins/antijoins, so they may only
/// appear as top-level conjuncts of a WHERE condition.
void check_pattern_placement(const Expr& e, bool conjunct) {
  if (e.kind == Expr::Kind::PatternPredicate) {
    if (!conjunct) {
      fail(ErrorKind::UnsupportedFeature,
           "pattern predicates are only supported as AND-ed WHERE conditions", e.pos);
    }
    return;
  }
  const bool pass = conjunct && e.kind == Expr::Kind::And;
  for (const auto& a : e.args) check_pattern_placement(*a, pass);
}

/// Validates projection items and returns the scope they produce.
Scope project(std::vector<ReturnItem>& items, const Scope& scope) {
  Scope out;
  for (auto& item : items) {
    check_expr(*item.expr, scope, AggregatePolicy::TopLevelItem, false, true);
    check_pattern_placement(*item.expr, false);
    if (!item.explicit_alias) item.alias = to_text(*item.expr);
    VarType type = VarType::Value;
    if (item.expr->kind == Expr::Kind::Variable) type = scope.at(item.expr->name);
    if (!out.emplace(item.alias, type).second) {
      fail(ErrorKind::DuplicateVariable, "duplicate column name " + quoted(item.alias), item.expr->pos);
    }
  }
  return out;
}

}  // namespace

ValidatedQuery validate(QueryAst ast) {
  Scope scope;
  ValidatedQuery out;
  const std::vector<ReturnItem>* last_items = nullptr;
  for (auto& clause : ast.clauses) {
    if (auto* m = std::get_if<MatchClause>(&clause)) {
      std::set<std::string> rels;
      for (const auto& p : m->patterns) bind_pattern(p, scope, true, rels);
    } else if (auto* w = std::get_if<WhereClause>(&clause)) {
      check_expr(*w->condition, scope, AggregatePolicy::Forbidden, false, true);
      check_pattern_placement(*w->condition, true);
    } else if (auto* with = std::get_if<WithClause>(&clause)) {
      scope = project(with->items, scope);
    } else if (auto* u = std::get_if<UnwindClause>(&clause)) {
      check_expr(*u->expr, scope, AggregatePolicy::Forbidden, false, true);
      check_pattern_placement(*u->expr, false);
      if (u->expr->kind == Expr::Kind::Variable && scope.at(u->expr->name) != VarType::Value) {
        fail(ErrorKind::UnsupportedFeature,
             "UNWIND of " + std::string(to_string(scope.at(u->expr->name))) + " variables is not supported",
             u->expr->pos);
      }
      if (scope.count(u->alias)) {
        fail(ErrorKind::DuplicateVariable, "variable " + quoted(u->alias) + " is already bound", u->pos);
      }
      scope.emplace(u->alias, VarType::Value);
    } else if (auto* r = std::get_if<ReturnClause>(&clause)) {
      scope = project(r->items, scope);
      last_items = &r->items;
    } else if (auto* o = std::get_if<OrderSkipLimitClause>(&clause)) {
      if (last_items == nullptr) fail(ErrorKind::SyntaxError, "ORDER BY requires RETURN", o->pos);
      for (auto& key : o->keys) {
        for (const auto& item : *last_items) {
          if (equal(key.expr, item.expr)) {
            key.expr = make_variable(item.alias, key.expr->pos);
            break;
          }
        }
        check_expr(*key.expr, scope, AggregatePolicy::Forbidden, false, true);
        check_pattern_placement(*key.expr, false);
      }
    }
  }
  if (last_items == nullptr) fail(ErrorKind::SyntaxError, "query must end with RETURN", {});
  for (const auto& item : *last_items) out.columns.push_back(item.alias);
  out.final_scope = std::move(scope);
  out.ast = std::move(ast);
  return out;
}

ValidatedQuery parse_and_validate(std::string_view text) { return validate(parse_query(text)); }

}  // namespace graphivm::cypher
