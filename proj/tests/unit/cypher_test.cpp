#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "graphivm/cypher/parser.hpp"
#include "graphivm/cypher/validate.hpp"
#include "graphivm/error.hpp"

namespace graphivm::cypher {
namespace {

Error error_of(std::string_view text) {
  try {
    parse_and_validate(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return Error(ErrorKind::IoError, "");
}

TEST(Parser, PrintedQueriesReparseToTheSameText) {
  for (const auto& q : testing::lowering_corpus()) {
    const std::string once = to_text(parse_query(q));
    EXPECT_EQ(to_text(parse_query(once)), once) << q;
  }
}

TEST(Parser, KeywordsAreCaseInsensitive) {
  EXPECT_EQ(to_text(parse_query("match (p:Person) where p.age > 1 return p.name order by p.name desc limit 2")),
            to_text(parse_query("MATCH (p:Person) WHERE p.age > 1 RETURN p.name ORDER BY p.name DESC LIMIT 2")));
}

TEST(Parser, ExpressionPrecedence) {
  EXPECT_EQ(to_text(*parse_expression("1 + 2 * 3")), to_text(*parse_expression("1 + (2 * 3)")));
  EXPECT_NE(to_text(*parse_expression("(1 + 2) * 3")), to_text(*parse_expression("1 + 2 * 3")));
  EXPECT_EQ(to_text(*parse_expression("NOT a OR b AND c")), to_text(*parse_expression("(NOT a) OR (b AND c)")));
}

TEST(Parser, SyntaxErrorsCarryPositions) {
  const Error e = error_of("MATCH (p RETURN p");
  EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
  EXPECT_EQ(e.pos().line, 1u);
  EXPECT_EQ(e.pos().column, 10u);
  const Error multi = error_of("MATCH (p)\nRETURN p.");
  EXPECT_EQ(multi.pos().line, 2u);
}

TEST(Parser, UnsupportedConstructsAreNamed) {
  for (const char* q : {"CREATE (n) RETURN n", "MATCH (n) WHERE n.x = $p RETURN n", "MATCH (n) RETURN [1, 2]",
                        "MATCH (n {name: 'a'}) RETURN n", "MATCH p = (n)-->(m) RETURN p",
                        "MATCH (n) RETURN CASE WHEN true THEN 1 END", "MATCH (n) RETURN *",
                        "MATCH (n) RETURN count(DISTINCT n)",
                        "MATCH (n) WITH n ORDER BY n.x LIMIT 1 RETURN n"}) {
    EXPECT_EQ(error_of(q).kind(), ErrorKind::UnsupportedFeature) << q;
  }
}

TEST(Validate, ScopeErrors) {
  EXPECT_EQ(error_of("MATCH (p) RETURN q").kind(), ErrorKind::UnboundVariable);
  EXPECT_EQ(error_of("MATCH (p) WITH p AS x RETURN p").kind(), ErrorKind::UnboundVariable);
  EXPECT_EQ(error_of("MATCH (p)-[r]->(q), (q)-[r]->(p) RETURN p").kind(), ErrorKind::DuplicateVariable);
  EXPECT_EQ(error_of("MATCH (p)-[r]->(r) RETURN p").kind(), ErrorKind::DuplicateVariable);
  EXPECT_EQ(error_of("MATCH (p) RETURN p.name AS a, p.age AS a").kind(), ErrorKind::DuplicateVariable);
  EXPECT_EQ(error_of("MATCH (p)-[r*]->(q) RETURN r.weight").kind(), ErrorKind::SemanticError);
  EXPECT_EQ(error_of("MATCH (p) WHERE (p)-->(zz) RETURN p").kind(), ErrorKind::UnboundVariable);
}

TEST(Validate, AggregatePlacement) {
  EXPECT_EQ(error_of("MATCH (p) WHERE count(p) > 1 RETURN p").kind(), ErrorKind::MisplacedAggregate);
  EXPECT_EQ(error_of("MATCH (p) RETURN max(count(p))").kind(), ErrorKind::MisplacedAggregate);
  EXPECT_NO_THROW(parse_and_validate("MATCH (p) RETURN p.name, count(*) AS c"));
}

TEST(Validate, DefaultAliasesAndColumns) {
  const ValidatedQuery q = parse_and_validate(testing::kInterestsQuery);
  EXPECT_EQ(q.columns, (std::vector<std::string>{"p.name", "i.level", "t.topic"}));
  const ValidatedQuery top = parse_and_validate(testing::kTopQuery);
  EXPECT_EQ(top.columns, (std::vector<std::string>{"lang", "sks"}));
  EXPECT_EQ(top.final_scope.at("lang"), VarType::Value);
  const ValidatedQuery path = parse_and_validate(testing::kTransitiveQuery);
  EXPECT_EQ(path.final_scope.at("sos"), VarType::Path);
}

TEST(Validate, QueryMustEndWithReturn) {
  EXPECT_EQ(error_of("MATCH (p)").kind(), ErrorKind::SyntaxError);
}

}  // namespace
}  // namespace graphivm::cypher
