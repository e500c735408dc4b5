#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphivm/cypher/ast.hpp"
#include "graphivm/schema.hpp"

namespace graphivm::cypher {

/// A query whose variables all resolve. Default aliases are filled in, and
/// ORDER BY keys that repeat a RETURN item are rewritten to that item's alias.
struct ValidatedQuery {
  QueryAst ast;
  std::vector<std::string> columns;               // final RETURN aliases, in order
  std::map<std::string, VarType> final_scope;
};

/// Scope resolution and placement checks. Throws Error with kind
/// UnboundVariable, DuplicateVariable, MisplacedAggregate, SemanticError or
/// UnsupportedFeature.
ValidatedQuery validate(QueryAst ast);

/// parse_query + validate.
ValidatedQuery parse_and_validate(std::string_view text);

}  // namespace graphivm::cypher
