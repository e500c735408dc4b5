#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "fixtures.hpp"
#include "graphivm/error.hpp"
#include "graphivm/graph_io.hpp"
#include "graphivm/graph_store.hpp"

namespace graphivm {
namespace {

using testing::data_path;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::IoError;
}

PropertyGraph fg1() { return load_graph_file(data_path("fg1.json")); }

TEST(GraphIo, LoadsFixture) {
  PropertyGraph g = fg1();
  EXPECT_EQ(g.vertex_count(), 6u);
  EXPECT_EQ(g.edge_count(), 4u);
  auto a = g.find_vertex("a");
  ASSERT_TRUE(a);
  EXPECT_EQ(g.property(*a, "name"), Value{"Alice"});
  EXPECT_EQ(g.property(*a, "speaks"), (Value{Bag{{Value{"en"}, Value{"fr"}}}}));
  EXPECT_TRUE(g.property(*a, "age").is_null());
  EXPECT_EQ(g.property(*g.find_edge("1"), "level"), Value{4});
}

TEST(GraphIo, RejectsDanglingEdge) {
  EXPECT_EQ(kind_of([] { load_graph_file(data_path("dangling.json")); }), ErrorKind::DanglingEdge);
  EXPECT_EQ(kind_of([] { load_graph_file(data_path("missing.json")); }), ErrorKind::IoError);
  EXPECT_EQ(kind_of([] { load_graph("{\"vertices\": 3}"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { load_graph(R"({"vertices": [{"id": "a"}, {"id": "a"}]})"); }), ErrorKind::DuplicateId);
}

TEST(GraphIo, DeltaScriptReportsLineNumbers) {
  try {
    parse_delta_script("{\"op\": \"remove_edge\", \"id\": \"1\"}\n\n# c\n{\"op\": \"nope\"}\n");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_EQ(e.pos().line, 4u);
  }
  EXPECT_TRUE(parse_delta_script("").empty());
}

TEST(GraphIo, DeltaJsonRoundTrips) {
  const std::vector<GraphDelta> deltas = {
      GraphDelta::add_vertex("x", {"A", "B"}, {{"k", Value{Bag{{Value{1}, Value{"z"}}}}}}),
      GraphDelta::add_edge("e", "x", "y", "R", {{"w", Value{2.5}}}),
      GraphDelta::remove_vertex("x", true),
      GraphDelta::remove_edge("e"),
      GraphDelta::set_property(true, "e", "w", Value{false}),
      GraphDelta::remove_property(false, "x", "k"),
  };
  for (const auto& d : deltas) {
    const std::string text = delta_to_json(d);
    EXPECT_EQ(delta_to_json(parse_delta(text)), text);
  }
}

TEST(GraphStore, ValidatesDeltas) {
  PropertyGraph g = fg1();
  EXPECT_EQ(kind_of([&] { g.apply_delta(GraphDelta::add_vertex("a", {})); }), ErrorKind::DuplicateId);
  EXPECT_EQ(kind_of([&] { g.apply_delta(GraphDelta::add_edge("9", "a", "zz", "KNOWS")); }), ErrorKind::UnknownId);
  EXPECT_EQ(kind_of([&] { g.apply_delta(GraphDelta::remove_vertex("a")); }), ErrorKind::VertexHasEdges);
  EXPECT_EQ(kind_of([&] { g.apply_delta(GraphDelta::remove_edge("77")); }), ErrorKind::UnknownId);
  // Failed deltas leave the graph untouched.
  EXPECT_EQ(g.vertex_count(), 6u);
  EXPECT_EQ(g.edge_count(), 4u);
}

TEST(GraphStore, DetachRemovesIncidentEdges) {
  PropertyGraph g = fg1();
  g.apply_delta(GraphDelta::remove_vertex("a", true));
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_FALSE(g.find_edge("1"));
}

TEST(GraphStore, ScanEdgesHonoursDirectionAndLabels) {
  PropertyGraph g = fg1();
  EXPECT_EQ(g.scan_edges({"SUBCLASS_OF"}, {}, {}, Direction::Out).size(), 2u);
  EXPECT_EQ(g.scan_edges({"SUBCLASS_OF"}, {}, {}, Direction::Both).size(), 4u);
  const auto in = g.scan_edges({}, {"Tag"}, {}, Direction::In);
  ASSERT_EQ(in.size(), 1u);
  EXPECT_EQ(in[0].v, *g.find_vertex("c"));
  EXPECT_EQ(in[0].w, *g.find_vertex("a"));
  EXPECT_TRUE(g.scan_edges({"KNOWS"}, {}, {"Tag"}, Direction::Out).empty());
}

TEST(GraphStore, SubscriptionsReceiveDeltas) {
  PropertyGraph g = fg1();
  NullaryDescriptor d;
  d.kind = NullaryDescriptor::Kind::Vertices;
  d.v = "p";
  d.labels = {"Person"};
  d.columns = {Attribute::variable("p", VarType::Vertex), Attribute::property("p", "age")};
  auto [id, initial] = g.subscribe(d);
  EXPECT_EQ(initial.positive.size(), 2u);

  auto notes = g.apply_delta(GraphDelta::set_property(false, "a", "age", Value{30}));
  ASSERT_EQ(notes.size(), 1u);
  const Value a{*g.find_vertex("a")};
  EXPECT_EQ(notes[0].changes.negative, (std::vector<Tuple>{{a, Value{}}}));
  EXPECT_EQ(notes[0].changes.positive, (std::vector<Tuple>{{a, Value{30}}}));

  // Unrelated property changes are invisible to this scan.
  EXPECT_TRUE(g.apply_delta(GraphDelta::set_property(false, "a", "colour", Value{"red"})).empty());
  g.unsubscribe(id);
  EXPECT_EQ(g.subscription_count(), 0u);
}

TEST(GraphStore, SelfLoopAppearsTwiceUndirected) {
  PropertyGraph g;
  g.apply_delta(GraphDelta::add_vertex("x", {}));
  g.apply_delta(GraphDelta::add_edge("l", "x", "x", "R"));
  EXPECT_EQ(g.scan_edges({}, {}, {}, Direction::Both).size(), 2u);
}

std::string state_text(const PropertyGraph& g) {
  std::string s;
  auto props = [&](const PropertyMap& m) {
    for (const auto& [k, v] : m) s += " " + k + "=" + literal_text(v);
  };
  for (auto v : g.vertices()) {
    s += "V " + g.vertex_name(v.id);
    for (const auto& l : g.vertex(v)->labels) s += ":" + l;
    props(g.vertex(v)->properties);
    s += "\n";
  }
  for (auto e : g.edges()) {
    const EdgeRecord* r = g.edge(e);
    s += "E " + g.edge_name(e.id) + " " + g.vertex_name(r->src.id) + "->" + g.vertex_name(r->trg.id) + ":" + r->type;
    props(r->properties);
    s += "\n";
  }
  return s;
}

// Applying the inverse of a random delta restores the exact prior state.
TEST(GraphStoreProperty, InverseDeltasRestoreState) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    testing::DeltaGenerator gen(seed);
    PropertyGraph g = testing::build_graph(gen.initial_graph(8, 14));
    const auto before = [&] { return state_text(g); };
    for (int step = 0; step < 20; ++step) {
      const auto snapshot = before();
      const GraphDelta d = gen.next(g);
      const auto inverse = g.inverse_of(d);
      g.apply_delta(d);
      for (const auto& i : inverse) g.apply_delta(i);
      ASSERT_EQ(before(), snapshot) << "seed " << seed << " delta " << delta_to_json(d);
      g.apply_delta(d);
    }
  }
}

}  // namespace
}  // namespace graphivm
