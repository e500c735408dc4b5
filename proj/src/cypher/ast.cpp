#include "graphivm/cypher/ast.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>

namespace graphivm::cypher {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "<>";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "=";
}

std::string_view to_string(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
  }
  return "+";
}

std::string_view to_string(AggregateFn fn) {
  switch (fn) {
    case AggregateFn::Count: return "count";
    case AggregateFn::Sum: return "sum";
    case AggregateFn::Avg: return "avg";
    case AggregateFn::Min: return "min";
    case AggregateFn::Max: return "max";
    case AggregateFn::Collect: return "collect";
  }
  return "count";
}

namespace {

std::shared_ptr<Expr> node(Expr::Kind kind, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->pos = pos;
  return e;
}

}  // namespace

ExprPtr make_literal(Value v, SourcePos pos) {
  auto e = node(Expr::Kind::Literal, pos);
  e->literal = std::move(v);
  return e;
}

ExprPtr make_variable(std::string name, SourcePos pos) {
  auto e = node(Expr::Kind::Variable, pos);
  e->name = std::move(name);
  return e;
}

ExprPtr make_property(std::string var, std::string key, SourcePos pos) {
  auto e = node(Expr::Kind::Property, pos);
  e->name = std::move(var);
  e->key = std::move(key);
  return e;
}

ExprPtr make_labels(std::string var, std::vector<std::string> labels, SourcePos pos) {
  auto e = node(Expr::Kind::LabelPredicate, pos);
  e->name = std::move(var);
  e->labels = std::move(labels);
  return e;
}

ExprPtr make_compare(CompareOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = node(Expr::Kind::Compare, pos);
  e->compare = op;
  e->args = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr make_and(ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = node(Expr::Kind::And, pos);
  e->args = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr make_or(ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = node(Expr::Kind::Or, pos);
  e->args = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr make_not(ExprPtr arg, SourcePos pos) {
  auto e = node(Expr::Kind::Not, pos);
  e->args = {std::move(arg)};
  return e;
}

ExprPtr make_arith(ArithOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = node(Expr::Kind::Arithmetic, pos);
  e->arith = op;
  e->args = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr make_aggregate(AggregateFn fn, ExprPtr arg, SourcePos pos) {
  auto e = node(Expr::Kind::Aggregate, pos);
  e->aggregate = fn;
  if (arg) {
    e->args = {std::move(arg)};
  } else {
    e->star = true;
  }
  return e;
}

// -- equality --------------------------------------------------------------

namespace {

bool equal_node(const NodePattern& a, const NodePattern& b) {
  return a.var == b.var && a.anonymous == b.anonymous && a.labels == b.labels;
}

bool equal_rel(const RelPattern& a, const RelPattern& b) {
  return a.var == b.var && a.anonymous == b.anonymous && a.types == b.types &&
         a.direction == b.direction && a.range == b.range;
}

bool equal_items(const std::vector<ReturnItem>& a, const std::vector<ReturnItem>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i].expr, b[i].expr) || a[i].alias != b[i].alias ||
        a[i].explicit_alias != b[i].explicit_alias) {
      return false;
    }
  }
  return true;
}

struct ClauseEqual {
  bool operator()(const MatchClause& a, const MatchClause& b) const {
    if (a.optional != b.optional || a.patterns.size() != b.patterns.size()) return false;
    for (size_t i = 0; i < a.patterns.size(); ++i) {
      if (!equal(a.patterns[i], b.patterns[i])) return false;
    }
    return true;
  }
  bool operator()(const WhereClause& a, const WhereClause& b) const {
    return equal(a.condition, b.condition);
  }
  bool operator()(const WithClause& a, const WithClause& b) const {
    return a.distinct == b.distinct && equal_items(a.items, b.items);
  }
  bool operator()(const UnwindClause& a, const UnwindClause& b) const {
    return a.alias == b.alias && equal(a.expr, b.expr);
  }
  bool operator()(const ReturnClause& a, const ReturnClause& b) const {
    return a.distinct == b.distinct && equal_items(a.items, b.items);
  }
  bool operator()(const OrderSkipLimitClause& a, const OrderSkipLimitClause& b) const {
    if (a.skip != b.skip || a.limit != b.limit || a.keys.size() != b.keys.size()) return false;
    for (size_t i = 0; i < a.keys.size(); ++i) {
      if (a.keys[i].descending != b.keys[i].descending || !equal(a.keys[i].expr, b.keys[i].expr)) {
        return false;
      }
    }
    return true;
  }
  template <typename A, typename B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool equal(const PatternAst& a, const PatternAst& b) {
  if (a.nodes.size() != b.nodes.size() || a.rels.size() != b.rels.size()) return false;
  for (size_t i = 0; i < a.nodes.size(); ++i) {
    if (!equal_node(a.nodes[i], b.nodes[i])) return false;
  }
  for (size_t i = 0; i < a.rels.size(); ++i) {
    if (!equal_rel(a.rels[i], b.rels[i])) return false;
  }
  return true;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case Expr::Kind::Literal:
      if (!(a.literal == b.literal)) return false;
      break;
    case Expr::Kind::Variable:
      if (a.name != b.name) return false;
      break;
    case Expr::Kind::Property:
      if (a.name != b.name || a.key != b.key) return false;
      break;
    case Expr::Kind::LabelPredicate:
      if (a.name != b.name || a.labels != b.labels) return false;
      break;
    case Expr::Kind::PatternPredicate:
      if (a.negated != b.negated || !a.pattern || !b.pattern || !equal(*a.pattern, *b.pattern)) {
        return false;
      }
      break;
    case Expr::Kind::Compare:
      if (a.compare != b.compare) return false;
      break;
    case Expr::Kind::Arithmetic:
      if (a.arith != b.arith) return false;
      break;
    case Expr::Kind::Aggregate:
      if (a.aggregate != b.aggregate || a.star != b.star) return false;
      break;
    default: break;
  }
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(a.args[i], b.args[i])) return false;
  }
  return true;
}

bool equal(const QueryAst& a, const QueryAst& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  for (size_t i = 0; i < a.clauses.size(); ++i) {
    if (a.clauses[i].index() != b.clauses[i].index()) return false;
    if (!std::visit(ClauseEqual{}, a.clauses[i], b.clauses[i])) return false;
  }
  return true;
}

// -- printing --------------------------------------------------------------

namespace {

const char* const kReserved[] = {
    "match", "optional", "where", "with", "unwind", "as", "return", "distinct", "order",
    "by", "asc", "ascending", "desc", "descending", "skip", "limit", "and", "or", "xor",
    "not", "true", "false", "null", "create", "merge", "delete", "detach", "set", "remove",
    "call", "union", "foreach", "load", "yield", "case", "in", "is", "starts", "ends",
    "contains", "count", "sum", "avg", "min", "max", "collect"};

bool is_plain_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return std::none_of(std::begin(kReserved), std::end(kReserved),
                      [&](const char* k) { return lower == k; });
}

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Or: return 1;
    case Expr::Kind::And: return 2;
    case Expr::Kind::Not: return 3;
    case Expr::Kind::PatternPredicate: return e.negated ? 3 : 9;
    case Expr::Kind::Compare: return 4;
    case Expr::Kind::Arithmetic:
      return (e.arith == ArithOp::Add || e.arith == ArithOp::Sub) ? 5 : 6;
    case Expr::Kind::Negate: return 7;
    case Expr::Kind::LabelPredicate: return 8;
    case Expr::Kind::Literal:
      // a negative numeric literal prints with a leading minus
      if ((e.literal.is<int64_t>() && e.literal.as<int64_t>() < 0) ||
          (e.literal.is<double>() && std::signbit(e.literal.as<double>()))) {
        return 7;
      }
      return 9;
    default: return 9;
  }
}

std::string text(const Expr& e, int min_prec);

std::string text(const ExprPtr& e, int min_prec) { return text(*e, min_prec); }

std::string labels_text(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) out += ":" + identifier_text(l);
  return out;
}

std::string text(const Expr& e, int min_prec) {
  std::string out;
  switch (e.kind) {
    case Expr::Kind::Literal: out = literal_text(e.literal); break;
    case Expr::Kind::Variable: out = identifier_text(e.name); break;
    case Expr::Kind::Property: out = identifier_text(e.name) + "." + identifier_text(e.key); break;
    case Expr::Kind::LabelPredicate: out = identifier_text(e.name) + labels_text(e.labels); break;
    case Expr::Kind::PatternPredicate:
      out = (e.negated ? "NOT " : "") + to_text(*e.pattern);
      break;
    case Expr::Kind::Compare:
      out = text(e.args[0], 4) + " " + std::string(to_string(e.compare)) + " " + text(e.args[1], 5);
      break;
    case Expr::Kind::And: out = text(e.args[0], 2) + " AND " + text(e.args[1], 3); break;
    case Expr::Kind::Or: out = text(e.args[0], 1) + " OR " + text(e.args[1], 2); break;
    case Expr::Kind::Not: out = "NOT " + text(e.args[0], 3); break;
    case Expr::Kind::Arithmetic: {
      const int p = precedence(e);
      out = text(e.args[0], p) + " " + std::string(to_string(e.arith)) + " " + text(e.args[1], p + 1);
      break;
    }
    case Expr::Kind::Negate: out = "-" + text(e.args[0], 8); break;
    case Expr::Kind::Aggregate:
      out = std::string(to_string(e.aggregate)) + "(" + (e.star ? "*" : text(e.args[0], 0)) + ")";
      break;
  }
  if (precedence(e) < min_prec) return "(" + out + ")";
  return out;
}

std::string range_text(const Range& r) {
  std::string out = "*" + std::to_string(r.low) + "..";
  if (r.up) out += std::to_string(*r.up);
  return out;
}

std::string items_text(const std::vector<ReturnItem>& items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i != 0) out += ", ";
    out += to_text(*items[i].expr);
    if (items[i].explicit_alias) out += " AS " + identifier_text(items[i].alias);
  }
  return out;
}

struct ClausePrinter {
  std::string operator()(const MatchClause& c) const {
    std::string out = c.optional ? "OPTIONAL MATCH " : "MATCH ";
    for (size_t i = 0; i < c.patterns.size(); ++i) {
      if (i != 0) out += ", ";
      out += to_text(c.patterns[i]);
    }
    return out;
  }
  std::string operator()(const WhereClause& c) const { return "WHERE " + to_text(*c.condition); }
  std::string operator()(const WithClause& c) const {
    return std::string("WITH ") + (c.distinct ? "DISTINCT " : "") + items_text(c.items);
  }
  std::string operator()(const UnwindClause& c) const {
    return "UNWIND " + to_text(*c.expr) + " AS " + identifier_text(c.alias);
  }
  std::string operator()(const ReturnClause& c) const {
    return std::string("RETURN ") + (c.distinct ? "DISTINCT " : "") + items_text(c.items);
  }
  std::string operator()(const OrderSkipLimitClause& c) const {
    std::string out;
    if (!c.keys.empty()) {
      out += "ORDER BY ";
      for (size_t i = 0; i < c.keys.size(); ++i) {
        if (i != 0) out += ", ";
        out += to_text(*c.keys[i].expr);
        if (c.keys[i].descending) out += " DESC";
      }
    }
    if (c.skip) out += std::string(out.empty() ? "" : " ") + "SKIP " + std::to_string(*c.skip);
    if (c.limit) out += std::string(out.empty() ? "" : " ") + "LIMIT " + std::to_string(*c.limit);
    return out;
  }
};

}  // namespace

std::string identifier_text(const std::string& name) {
  if (is_plain_identifier(name)) return name;
  std::string out = "`";
  for (char c : name) {
    if (c == '`') out += '`';
    out += c;
  }
  return out + "`";
}

std::string to_text(const Expr& e) { return text(e, 0); }

std::string to_text(const PatternAst& p) {
  auto node_text = [](const NodePattern& n) {
    return "(" + (n.anonymous ? std::string() : identifier_text(n.var)) + labels_text(n.labels) + ")";
  };
  std::string out = node_text(p.nodes[0]);
  for (size_t i = 0; i < p.rels.size(); ++i) {
    const auto& r = p.rels[i];
    std::string detail = r.anonymous ? std::string() : identifier_text(r.var);
    for (size_t t = 0; t < r.types.size(); ++t) {
      detail += (t == 0 ? ":" : "|") + identifier_text(r.types[t]);
    }
    if (r.range) detail += range_text(*r.range);
    out += r.direction == Direction::In ? "<-[" : "-[";
    out += detail;
    out += r.direction == Direction::Out ? "]->" : "]-";
    out += node_text(p.nodes[i + 1]);
  }
  return out;
}

std::string to_text(const QueryAst& q) {
  std::string out;
  for (size_t i = 0; i < q.clauses.size(); ++i) {
    if (i != 0) out += "\n";
    out += std::visit(ClausePrinter{}, q.clauses[i]);
  }
  return out;
}

bool contains_aggregate(const Expr& e) {
  if (e.kind == Expr::Kind::Aggregate) return true;
  return std::any_of(e.args.begin(), e.args.end(),
                     [](const ExprPtr& a) { return contains_aggregate(*a); });
}

void collect_variables(const Expr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Variable:
    case Expr::Kind::Property:
    case Expr::Kind::LabelPredicate: out.insert(e.name); break;
    case Expr::Kind::PatternPredicate:
      for (const auto& n : e.pattern->nodes) out.insert(n.var);
      for (const auto& r : e.pattern->rels) out.insert(r.var);
      break;
    default: break;
  }
  for (const auto& a : e.args) collect_variables(*a, out);
}

}  // namespace graphivm::cypher
