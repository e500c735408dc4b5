#pragma once

#include <unordered_map>

#include "graphivm/cypher/ast.hpp"
#include "graphivm/schema.hpp"
#include "graphivm/value.hpp"

namespace graphivm {

/// Supplies values for expression leaves: Variable, Property, and
/// LabelPredicate (which resolves to the variable's label bag, or null).
class Resolver {
 public:
  virtual ~Resolver() = default;
  virtual Value lookup(const cypher::Expr& leaf) const = 0;
};

/// Evaluates a non-aggregate expression with three-valued logic: null
/// operands make comparisons and arithmetic null; AND/OR/NOT follow Kleene
/// logic. Throws EvaluationError on type errors ("a" + 1), integer overflow
/// and integer division by zero.
Value evaluate(const cypher::Expr& e, const Resolver& resolver);

/// Selection semantics: true keeps, false/null drop, anything else is an
/// EvaluationError.
bool is_true(const Value& condition);

/// The column of `schema` that an expression leaf reads.
/// Throws InferenceError if the schema does not carry it.
size_t column_for(const cypher::Expr& leaf, const Schema& schema);

/// An expression bound to the column positions of a flat schema.
class BoundExpr {
 public:
  BoundExpr() = default;
  BoundExpr(cypher::ExprPtr expr, const Schema& schema);

  Value eval(const Tuple& row) const;
  const cypher::ExprPtr& expr() const { return expr_; }

 private:
  cypher::ExprPtr expr_;
  std::unordered_map<const cypher::Expr*, size_t> columns_;
};

/// Comparison of two property values; nullopt when the comparison is
/// unknown (a null operand, or an ordering between incomparable kinds).
std::optional<bool> compare_values(cypher::CompareOp op, const Value& a, const Value& b);

}  // namespace graphivm
