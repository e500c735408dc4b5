#include "graphivm/expr_eval.hpp"

#include <algorithm>
#include <cmath>

namespace graphivm {

using cypher::ArithOp;
using cypher::CompareOp;
using cypher::Expr;

namespace {

[[noreturn]] void eval_error(const std::string& message) {
  throw Error(ErrorKind::EvaluationError, message);
}

std::string kind_name(const Value& v) {
  switch (v.data.index()) {
    case 0: return "null";
    case 1: return "boolean";
    case 2: return "integer";
    case 3: return "float";
    case 4: return "string";
    case 5: return "bag";
    case 6: return "vertex";
    case 7: return "edge";
    case 8: return "path";
  }
  return "value";
}

// -1, 0, 1, or nullopt when either side is NaN.
std::optional<int> numeric_order(const Value& a, const Value& b) {
  if (a.is<int64_t>() && b.is<int64_t>()) {
    const int64_t x = a.as<int64_t>(), y = b.as<int64_t>();
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  const double x = a.as_double(), y = b.as_double();
  if (std::isnan(x) || std::isnan(y)) return std::nullopt;
  return x < y ? -1 : (x > y ? 1 : 0);
}

Value arithmetic(ArithOp op, const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return Value{};
  if (op == ArithOp::Add && a.is<std::string>() && b.is<std::string>()) {
    return Value{a.as<std::string>() + b.as<std::string>()};
  }
  if (!a.is_numeric() || !b.is_numeric()) {
    eval_error("cannot apply '" + std::string(to_string(op)) + "' to " + kind_name(a) + " and " +
               kind_name(b));
  }
  if (a.is<int64_t>() && b.is<int64_t>()) {
    const int64_t x = a.as<int64_t>(), y = b.as<int64_t>();
    int64_t r = 0;
    bool overflow = false;
    switch (op) {
      case ArithOp::Add: overflow = __builtin_add_overflow(x, y, &r); break;
      case ArithOp::Sub: overflow = __builtin_sub_overflow(x, y, &r); break;
      case ArithOp::Mul: overflow = __builtin_mul_overflow(x, y, &r); break;
      case ArithOp::Div:
        if (y == 0) eval_error("integer division by zero");
        if (x == INT64_MIN && y == -1) overflow = true;
        else r = x / y;
        break;
    }
    if (overflow) eval_error("integer overflow");
    return Value{r};
  }
  const double x = a.as_double(), y = b.as_double();
  switch (op) {
    case ArithOp::Add: return Value{x + y};
    case ArithOp::Sub: return Value{x - y};
    case ArithOp::Mul: return Value{x * y};
    case ArithOp::Div: return Value{x / y};
  }
  return Value{};
}

// Kleene logic over {true, false, null}.
std::optional<bool> truth(const Value& v, const char* op) {
  if (v.is_null()) return std::nullopt;
  if (!v.is<bool>()) eval_error(std::string(op) + " expects a boolean, got " + kind_name(v));
  return v.as<bool>();
}

Value from_truth(std::optional<bool> t) { return t ? Value{*t} : Value{}; }

}  // namespace

std::optional<bool> compare_values(CompareOp op, const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return std::nullopt;
  const bool numeric = a.is_numeric() && b.is_numeric();
  if (op == CompareOp::Eq || op == CompareOp::Ne) {
    bool eq = false;
    if (numeric) {
      auto o = numeric_order(a, b);
      eq = o && *o == 0;
    } else {
      eq = a.data.index() == b.data.index() && a == b;
    }
    return op == CompareOp::Eq ? eq : !eq;
  }
  int order = 0;
  if (numeric) {
    auto o = numeric_order(a, b);
    if (!o) return false;
    order = *o;
  } else if ((a.is<std::string>() && b.is<std::string>()) || (a.is<bool>() && b.is<bool>())) {
    auto c = compare(a, b);
    order = c < 0 ? -1 : (c > 0 ? 1 : 0);
  } else {
    return std::nullopt;
  }
  switch (op) {
    case CompareOp::Lt: return order < 0;
    case CompareOp::Le: return order <= 0;
    case CompareOp::Gt: return order > 0;
    case CompareOp::Ge: return order >= 0;
    default: return std::nullopt;
  }
}

Value evaluate(const Expr& e, const Resolver& resolver) {
  switch (e.kind) {
    case Expr::Kind::Literal: return e.literal;
    case Expr::Kind::Variable:
    case Expr::Kind::Property: return resolver.lookup(e);
    case Expr::Kind::LabelPredicate: {
      Value labels = resolver.lookup(e);
      if (labels.is_null()) return Value{};
      const auto& items = labels.as<Bag>().items();
      return Value{std::all_of(e.labels.begin(), e.labels.end(), [&](const std::string& l) {
        return std::find(items.begin(), items.end(), Value{l}) != items.end();
      })};
    }
    case Expr::Kind::Compare:
      return from_truth(compare_values(e.compare, evaluate(*e.args[0], resolver),
                                       evaluate(*e.args[1], resolver)));
    case Expr::Kind::And: {
      auto l = truth(evaluate(*e.args[0], resolver), "AND");
      if (l && !*l) return Value{false};
      auto r = truth(evaluate(*e.args[1], resolver), "AND");
      if (r && !*r) return Value{false};
      if (!l || !r) return Value{};
      return Value{true};
    }
    case Expr::Kind::Or: {
      auto l = truth(evaluate(*e.args[0], resolver), "OR");
      if (l && *l) return Value{true};
      auto r = truth(evaluate(*e.args[1], resolver), "OR");
      if (r && *r) return Value{true};
      if (!l || !r) return Value{};
      return Value{false};
    }
    case Expr::Kind::Not: {
      auto t = truth(evaluate(*e.args[0], resolver), "NOT");
      return t ? Value{!*t} : Value{};
    }
    case Expr::Kind::Arithmetic:
      return arithmetic(e.arith, evaluate(*e.args[0], resolver), evaluate(*e.args[1], resolver));
    case Expr::Kind::Negate: {
      Value v = evaluate(*e.args[0], resolver);
      if (v.is_null()) return v;
      if (v.is<int64_t>()) {
        if (v.as<int64_t>() == INT64_MIN) eval_error("integer overflow");
        return Value{-v.as<int64_t>()};
      }
      if (v.is<double>()) return Value{-v.as<double>()};
      eval_error("cannot negate " + kind_name(v));
    }
    case Expr::Kind::PatternPredicate:
      throw Error(ErrorKind::InferenceError, "pattern predicate reached expression evaluation");
    case Expr::Kind::Aggregate:
      throw Error(ErrorKind::InferenceError, "aggregate reached scalar expression evaluation");
  }
  return Value{};
}

bool is_true(const Value& condition) {
  if (condition.is_null()) return false;
  if (!condition.is<bool>()) {
    eval_error("WHERE condition evaluated to " + kind_name(condition) + ", not a boolean");
  }
  return condition.as<bool>();
}

size_t column_for(const Expr& leaf, const Schema& schema) {
  std::optional<size_t> idx;
  switch (leaf.kind) {
    case Expr::Kind::Variable: idx = find_variable(schema, leaf.name); break;
    case Expr::Kind::Property: idx = find_attribute(schema, Attribute::property(leaf.name, leaf.key)); break;
    case Expr::Kind::LabelPredicate: idx = find_attribute(schema, Attribute::labels(leaf.name)); break;
    default: break;
  }
  if (!idx) {
    throw Error(ErrorKind::InferenceError,
                "column for '" + cypher::to_text(leaf) + "' missing from " + schema_text(schema));
  }
  return *idx;
}

namespace {

void bind_leaves(const Expr& e, const Schema& schema, std::unordered_map<const Expr*, size_t>& out) {
  switch (e.kind) {
    case Expr::Kind::Variable:
    case Expr::Kind::Property:
    case Expr::Kind::LabelPredicate: out.emplace(&e, column_for(e, schema)); return;
    default: break;
  }
  for (const auto& a : e.args) bind_leaves(*a, schema, out);
}

class RowResolver : public Resolver {
 public:
  RowResolver(const std::unordered_map<const Expr*, size_t>& columns, const Tuple& row)
      : columns_(columns), row_(row) {}
  Value lookup(const Expr& leaf) const override { return row_[columns_.at(&leaf)]; }

 private:
  const std::unordered_map<const Expr*, size_t>& columns_;
  const Tuple& row_;
};

}  // namespace

BoundExpr::BoundExpr(cypher::ExprPtr expr, const Schema& schema) : expr_(std::move(expr)) {
  bind_leaves(*expr_, schema, columns_);
}

Value BoundExpr::eval(const Tuple& row) const {
  if (expr_->kind == Expr::Kind::Variable || expr_->kind == Expr::Kind::Property) {
    return row[columns_.begin()->second];
  }
  return evaluate(*expr_, RowResolver(columns_, row));
}

}  // namespace graphivm
