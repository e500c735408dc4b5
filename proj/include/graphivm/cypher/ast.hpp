#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "graphivm/error.hpp"
#include "graphivm/graph_store.hpp"
#include "graphivm/value.hpp"

namespace graphivm::cypher {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class ArithOp { Add, Sub, Mul, Div };
enum class AggregateFn { Count, Sum, Avg, Min, Max, Collect };

std::string_view to_string(CompareOp op);
std::string_view to_string(ArithOp op);
std::string_view to_string(AggregateFn fn);

struct NodePattern {
  std::string var;
  bool anonymous = false;
  std::vector<std::string> labels;
  SourcePos pos;
};

/// Hop bounds of a variable-length relationship; up == nullopt is unbounded.
struct Range {
  uint32_t low = 1;
  std::optional<uint32_t> up;
  bool operator==(const Range&) const = default;
};

struct RelPattern {
  std::string var;
  bool anonymous = false;
  std::vector<std::string> types;
  Direction direction = Direction::Out;  // relative to textual left-to-right order
  std::optional<Range> range;
  SourcePos pos;
};

/// node (rel node)*
struct PatternAst {
  std::vector<NodePattern> nodes;
  std::vector<RelPattern> rels;
  SourcePos pos;
};

struct Expr {
  enum class Kind {
    Literal,
    Variable,
    Property,
    LabelPredicate,
    PatternPredicate,
    Compare,
    And,
    Or,
    Not,
    Arithmetic,
    Negate,
    Aggregate,
  };

  Kind kind = Kind::Literal;
  SourcePos pos;
  Value literal;
  std::string name;                 // Variable / Property / LabelPredicate variable
  std::string key;                  // Property
  std::vector<std::string> labels;  // LabelPredicate
  std::shared_ptr<const PatternAst> pattern;
  bool negated = false;             // PatternPredicate
  CompareOp compare = CompareOp::Eq;
  ArithOp arith = ArithOp::Add;
  AggregateFn aggregate = AggregateFn::Count;
  bool star = false;                // count(*)
  std::vector<ExprPtr> args;
};

// Factories, mostly for tests and compiler rewrites.
ExprPtr make_literal(Value v, SourcePos pos = {});
ExprPtr make_variable(std::string name, SourcePos pos = {});
ExprPtr make_property(std::string var, std::string key, SourcePos pos = {});
ExprPtr make_labels(std::string var, std::vector<std::string> labels, SourcePos pos = {});
ExprPtr make_compare(CompareOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr make_and(ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr make_or(ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr make_not(ExprPtr arg, SourcePos pos = {});
ExprPtr make_arith(ArithOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr make_aggregate(AggregateFn fn, ExprPtr arg, SourcePos pos = {});

struct ReturnItem {
  ExprPtr expr;
  std::string alias;  // filled by validation when not explicit
  bool explicit_alias = false;
};

struct SortItem {
  ExprPtr expr;
  bool descending = false;
};

struct MatchClause {
  std::vector<PatternAst> patterns;
  bool optional = false;
  SourcePos pos;
};

struct WhereClause {
  ExprPtr condition;
  SourcePos pos;
};

struct WithClause {
  std::vector<ReturnItem> items;
  bool distinct = false;
  SourcePos pos;
};

struct UnwindClause {
  ExprPtr expr;
  std::string alias;
  SourcePos pos;
};

struct ReturnClause {
  std::vector<ReturnItem> items;
  bool distinct = false;
  SourcePos pos;
};

struct OrderSkipLimitClause {
  std::vector<SortItem> keys;
  std::optional<int64_t> skip;
  std::optional<int64_t> limit;
  SourcePos pos;
};

using Clause = std::variant<MatchClause, WhereClause, WithClause, UnwindClause, ReturnClause,
                            OrderSkipLimitClause>;

struct QueryAst {
  std::vector<Clause> clauses;
};

// Structural equality (source positions ignored).
bool equal(const Expr& a, const Expr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const PatternAst& a, const PatternAst& b);
bool equal(const QueryAst& a, const QueryAst& b);

/// Canonical query text; parsing it yields a structurally equal AST.
std::string to_text(const Expr& e);
std::string to_text(const PatternAst& p);
std::string to_text(const QueryAst& q);
std::string identifier_text(const std::string& name);

bool contains_aggregate(const Expr& e);
void collect_variables(const Expr& e, std::set<std::string>& out);

/// Anonymous pattern elements are named with this prefix, which cannot occur
/// in user identifiers.
inline constexpr const char* kAnonymousPrefix = "#";

}  // namespace graphivm::cypher
