#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "graphivm/cypher/validate.hpp"
#include "graphivm/error.hpp"
#include "graphivm/gra_compiler.hpp"
#include "graphivm/graph_io.hpp"
#include "graphivm/lowering.hpp"
#include "oracle.hpp"

namespace graphivm {
namespace {

PlanNode gra(std::string_view q) { return compile(cypher::parse_and_validate(q)); }
std::string gra_text(std::string_view q) { return plan_text(gra(q)); }
std::string nra_text(std::string_view q, LoweringOptions o = {}) { return plan_text(lower_to_nra(gra(q), o)); }

TEST(Compiler, FilterQuery) {
  EXPECT_EQ(gra_text(testing::kFilterQuery),
            "Projection[p.name] :: ⟨p.name⟩\n"
            "  Selection[p.age > 25] :: ⟨p⟩\n"
            "    GetVertices[p:Person] :: ⟨p⟩\n");
}

TEST(Compiler, PatternBecomesExpandChain) {
  EXPECT_EQ(gra_text(testing::kInterestsQuery),
            "Projection[p.name, i.level, t.topic] :: ⟨p.name, i.level, t.topic⟩\n"
            "  Expand[(p)-[i:INTEREST]->(t:Tag)] :: ⟨p, i, t⟩\n"
            "    GetVertices[p:Person] :: ⟨p⟩\n");
}

TEST(Compiler, OptionalMatchIsLeftOuterJoin) {
  EXPECT_EQ(gra_text(testing::kOptionalQuery),
            "Projection[p.name, t] :: ⟨p.name, t⟩\n"
            "  LeftOuterJoin[p] :: ⟨p, i, t⟩\n"
            "    GetVertices[p:Person] :: ⟨p⟩\n"
            "    Expand[(p)-[i:INTEREST]->(t:Tag)] :: ⟨p, i, t⟩\n"
            "      GetVertices[p] :: ⟨p⟩\n");
}

TEST(Compiler, NegatedPatternIsAntijoin) {
  const PlanNode p = gra("MATCH (p:Person) WHERE NOT (p)-[:INTEREST]->(:Tag) RETURN p");
  EXPECT_EQ(p.child().kind, OpKind::Antijoin);
  const PlanNode s = gra("MATCH (p:Person) WHERE (p)-[:INTEREST]->() RETURN p");
  EXPECT_EQ(count_nodes(s, OpKind::Semijoin), 1u);
}

TEST(Compiler, AggregationOrderingAndUnwind) {
  EXPECT_EQ(gra_text(testing::kTopQuery),
            "SortAndTop[sks DESC; skip 0; limit 1] :: ⟨lang, sks⟩\n"
            "  Grouping[lang; count(p) AS sks] :: ⟨lang, sks⟩\n"
            "    Unwind[p.speaks AS lang] :: ⟨p, lang⟩\n"
            "      Projection[p] :: ⟨p⟩\n"
            "        GetVertices[p:Person] :: ⟨p⟩\n");
  EXPECT_EQ(gra("MATCH (p) RETURN DISTINCT p.name").kind, OpKind::DedupAll);
}

TEST(Compiler, SelectionIsPushedBelowJoins) {
  const PlanNode p = gra("MATCH (a:Person), (b:Tag) WHERE a.age > 1 RETURN a, b");
  const PlanNode& join = p.child();
  ASSERT_EQ(join.kind, OpKind::NaturalJoin);
  EXPECT_EQ(join.child(0).kind, OpKind::Selection);
}

TEST(Lowering, ExpandBecomesGetEdges) {
  EXPECT_EQ(nra_text(testing::kInterestsQuery),
            "Projection[p.name, i.level, t.topic] :: ⟨p.name, i.level, t.topic⟩\n"
            "  GetEdges[(p:Person)-[i:INTEREST]->(t:Tag)] :: ⟨p, i, t⟩\n");
}

TEST(Lowering, TransitiveExpandJoinsTargetLabels) {
  EXPECT_EQ(nra_text("MATCH (c:Class)-[sos:SUBCLASS_OF*1..]->(a:Class) RETURN c, a"),
            "Projection[c, a] :: ⟨c, a⟩\n"
            "  NaturalJoin[a] :: ⟨c, sos, a⟩\n"
            "    NaturalJoin[c] :: ⟨c, sos, a⟩\n"
            "      GetVertices[c:Class] :: ⟨c⟩\n"
            "      TransitiveGetEdges[(c)-[sos:SUBCLASS_OF*1..]->(a)] :: ⟨c, sos, a⟩\n"
            "    GetVertices[a:Class] :: ⟨a⟩\n");
}

TEST(Lowering, LabelPreservationDropsTargetJoin) {
  LoweringOptions o;
  o.label_preservation = true;
  const PlanNode p = lower_to_nra(gra("MATCH (c:Class)-[sos:SUBCLASS_OF*1..]->(a:Class) RETURN c, a"), o);
  size_t gv = 0;
  visit_plan(p, [&](const PlanNode& n) {
    if (n.kind == OpKind::GetVertices) ++gv;
    if (n.kind == OpKind::TransitiveGetEdges) EXPECT_EQ(n.path_labels, std::vector<std::string>{"Class"});
  });
  EXPECT_EQ(gv, 1u);
}

TEST(Lowering, RequiredPropertiesReachTheScans) {
  const PlanNode fra = lower_to_fra(gra(testing::kInterestsQuery));
  const PlanNode& ge = fra.child();
  ASSERT_EQ(ge.kind, OpKind::GetEdges);
  EXPECT_EQ(schema_text(ge.flat), "⟨p, i, t, i.level, p.name, t.topic⟩");
  EXPECT_EQ(schema_text(fra.flat), "⟨p.name, i.level, t.topic⟩");
}

TEST(Lowering, RunningExampleCarriesOnlyTheName) {
  const PlanNode fra = lower_to_fra(gra(testing::kRunningExampleQuery));
  EXPECT_EQ(schema_text(fra.child().flat), "⟨p, i, t, p.name⟩");
}

TEST(Lowering, UnionChildrenMustAgree) {
  PlanNode bad = ops::binary(OpKind::Union, ops::get_vertices("x"),
                             ops::projection(ops::get_vertices("x"), {{cypher::make_variable("x"), "y"}}));
  try {
    compute_flat_schemas(infer_required_properties(lower_to_nra(bad)));
    FAIL() << "expected a schema mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemaMismatch);
  }
}

TEST(LoweringProperty, IdempotentAndExpandFree) {
  testing::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const std::string q = testing::random_query(rng);
    const PlanNode nra = lower_to_nra(gra(q));
    EXPECT_EQ(count_nodes(nra, OpKind::Expand) + count_nodes(nra, OpKind::TransitiveExpand), 0u) << q;
    EXPECT_TRUE(same_plan(lower_to_nra(nra), nra)) << q;
  }
}

// Every flat schema extends its nested schema, and every column an operator
// reads is carried by its children.
TEST(LoweringProperty, FlatSchemasCoverNestedAndReads) {
  testing::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const std::string q = testing::random_query(rng);
    const PlanNode fra = lower_to_fra(gra(q));
    visit_plan(fra, [&](const PlanNode& n) {
      ASSERT_TRUE(n.has_flat) << q;
      for (const auto& a : n.nested) EXPECT_TRUE(find_attribute(n.flat, a)) << q << " missing " << a.name();
      for (const auto& a : extract_properties(n)) {
        bool found = false;
        for (const auto& c : n.children) found = found || find_attribute(c.flat, a).has_value();
        if (n.children.empty()) found = find_attribute(n.flat, a).has_value();
        EXPECT_TRUE(found) << q << " cannot read " << a.name();
      }
    });
  }
}

// Lowering preserves results: the oracle agrees on the graph and the lowered plan.
TEST(LoweringProperty, LoweredPlansEvaluateTheSame) {
  testing::Rng rng(29);
  for (int i = 0; i < 120; ++i) {
    testing::DeltaGenerator gen(1000 + i);
    const PropertyGraph g = testing::build_graph(gen.initial_graph(8, 14));
    const std::string q = testing::random_query(rng);
    const PlanNode plan = gra(q);
    EXPECT_EQ(testing::naive_result(plan, g), testing::naive_result(lower_to_nra(plan), g)) << q;
  }
}

}  // namespace
}  // namespace graphivm
