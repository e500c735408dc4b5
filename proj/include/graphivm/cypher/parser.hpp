#pragma once

#include <string_view>

#include "graphivm/cypher/ast.hpp"

namespace graphivm::cypher {

/// Parses the supported read-only openCypher subset. Throws Error with
/// kind SyntaxError, or UnsupportedFeature for recognized constructs outside
/// the subset (write clauses, parameters, CASE, list/map literals, ...).
/// Every thrown error carries a source position.
QueryAst parse_query(std::string_view text);

/// Parses a standalone expression (used by tests and the query generator).
ExprPtr parse_expression(std::string_view text);

}  // namespace graphivm::cypher
