#pragma once

#include <optional>
#include <set>
#include <string>

#include "graphivm/cypher/validate.hpp"
#include "graphivm/plan.hpp"

namespace graphivm {

/// Translates a validated query into a graph relational algebra tree.
PlanNode compile(const cypher::ValidatedQuery& query);

/// Compiles one pattern. When `base` is given and binds one of the pattern's
/// node variables, navigation starts from the leftmost such node directly on
/// `base`; otherwise a standalone tree is built (anchored at the leftmost node
/// in `prefer`, else at a transitive pattern's endpoint with an equality
/// filter in `where`, else at the leftmost node) and natural-joined onto `base`.
PlanNode compile_pattern(const cypher::PatternAst& pattern, std::optional<PlanNode> base,
                         const std::set<std::string>& prefer = {},
                         const cypher::Expr* where = nullptr);

/// π for plain items, γ when any item aggregates, δ on top for DISTINCT.
PlanNode build_return(const std::vector<cypher::ReturnItem>& items, bool distinct, PlanNode incoming);

/// Places σ(condition) at the deepest node whose schema binds all of the
/// condition's variables.
PlanNode push_selection(PlanNode tree, cypher::ExprPtr condition);

}  // namespace graphivm
