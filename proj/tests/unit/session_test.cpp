#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "generators.hpp"
#include "graphivm/cli.hpp"
#include "graphivm/error.hpp"
#include "graphivm/graph_io.hpp"
#include "graphivm/session.hpp"
#include "oracle.hpp"

namespace graphivm {
namespace {

using testing::data_path;

struct Transcript {
  int code;
  std::string out;
  std::string err;
};

Transcript run_script(const std::string& script) {
  Session s;
  std::ostringstream out, err;
  CommandRunner runner(s, out, err);
  const int code = runner.execute_all(parse_command_script(script));
  return {code, out.str(), err.str()};
}

TEST(SessionBasics, RegisterReplacesSameName) {
  Session s;
  s.load_file(data_path("fg1.json"));
  s.register_query("q", testing::kFilterQuery);
  s.register_query("q", "MATCH (t:Tag) RETURN t.topic");
  EXPECT_EQ(s.query_names(), std::vector<std::string>{"q"});
  ASSERT_EQ(s.results("q").size(), 1u);
  EXPECT_EQ(s.results("q")[0][0], Value{"Neofolk"});
}

TEST(SessionBasics, ErrorsNameTheirStage) {
  Session s;
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"MATCH (p RETURN p", "parse"},
      {"MATCH (p) RETURN q", "validate"},
  };
  for (const auto& [text, stage] : cases) {
    try {
      s.register_query("q", text);
      ADD_FAILURE() << text;
    } catch (const StageError& e) {
      EXPECT_EQ(e.stage(), stage);
    }
  }
  EXPECT_FALSE(s.has_query("q"));
}

TEST(SessionBasics, ReloadRecomputesResults) {
  Session s;
  s.load_file(data_path("fg1.json"));
  s.register_query("q", testing::kFilterQuery);
  s.load_file(data_path("empty_graph.json"));
  EXPECT_TRUE(s.results("q").empty());
}

TEST(SessionBasics, EvaluationErrorRollsBack) {
  Session s;
  s.load_file(data_path("fg1.json"));
  s.register_query("q", "MATCH (p:Person) RETURN sum(p.age) AS s");
  EXPECT_THROW(s.apply(GraphDelta::set_property(false, "a", "age", Value{"old"})), Error);
  EXPECT_TRUE(s.graph().property(*s.graph().find_vertex("a"), "age").is_null());
  ASSERT_EQ(s.results("q").size(), 1u);
  EXPECT_EQ(s.results("q")[0][0], Value{26});
  // The session keeps working afterwards.
  s.apply(GraphDelta::set_property(false, "a", "age", Value{4}));
  EXPECT_EQ(s.results("q")[0][0], Value{30});
}

TEST(SessionBasics, BatchStopsAtInvalidDelta) {
  Session s;
  s.load_file(data_path("fg1.json"));
  s.register_query("q", "MATCH (p:Person) RETURN p.name");
  const std::vector<GraphDelta> batch = {GraphDelta::add_vertex("z", {"Person"}, {{"name", Value{"Zoe"}}}),
                                         GraphDelta::remove_edge("404"),
                                         GraphDelta::add_vertex("y", {"Person"})};
  EXPECT_THROW(s.apply_batch(batch), Error);
  EXPECT_EQ(s.results("q").size(), 3u);
  EXPECT_FALSE(s.graph().find_vertex("y"));
}

// A coalesced batch ends in the same state as one-by-one application, and
// its net delta equals the sum of the individual deltas.
TEST(SessionProperty, BatchEqualsSequential) {
  testing::Rng qrng(41);
  for (uint64_t seed = 0; seed < 40; ++seed) {
    testing::DeltaGenerator gen(seed);
    const auto initial = gen.initial_graph(8, 12);
    const std::string q = testing::random_query(qrng);
    Session one, many;
    one.load(testing::build_graph(initial));
    many.load(testing::build_graph(initial));
    one.register_query("q", q);
    many.register_query("q", q);
    std::vector<GraphDelta> batch;
    PropertyGraph shadow = testing::build_graph(initial);
    for (int i = 0; i < 8; ++i) {
      batch.push_back(gen.next(shadow));
      shadow.apply_delta(batch.back());
    }
    SignedBag summed;
    for (const auto& d : batch) {
      for (const auto& qd : one.apply(d)) {
        for (const auto& [t, n] : net_changes(qd.delta)) bag_add(summed, t, n);
      }
    }
    SignedBag coalesced;
    for (const auto& qd : many.apply_batch(batch)) coalesced = net_changes(qd.delta);
    EXPECT_EQ(summed, coalesced) << q;
    EXPECT_EQ(one.results("q"), many.results("q")) << q;
  }
}

TEST(Cli, LoadRegisterApplyTranscript) {
  const std::string dir = data_path("");
  const Transcript r = run_script("load " + dir + "running_example.json\n"
                           "register names " + testing::kRunningExampleQuery + "\n"
                           "apply " + dir + "running_example_add.jsonl\n"
                           "results names\n");
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "|V|=5 |E|=2\n"
            "p.name\nAlice\nEdgar\n"
            "[2] names\n+ Edgar\n"
            "p.name\nAlice\nEdgar\nEdgar\n");
}

TEST(Cli, BatchModeTagsTheDelta) {
  const std::string dir = data_path("");
  const Transcript r = run_script("load " + dir + "fg1.json; register t \"" + testing::kTransitiveQuery +
                           "\"\napply " + dir + "fg1_remove_5.jsonl --batch\n");
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("[batch] t\n- Folk\t[4, 5]\n- Music\t[5]\n"), std::string::npos) << r.out;
}

TEST(Cli, EmptyGraphPrintsHeaderOnly) {
  const std::string dir = data_path("");
  const Transcript r = run_script("load " + dir + "empty_graph.json\nregister q MATCH (n) RETURN n.name AS name\n"
                           "apply " + dir + "empty.jsonl\nresults q\n");
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "|V|=0 |E|=0\nname\nname\n");
}

TEST(Cli, ErrorsAndExitCodes) {
  Transcript r = run_script("explain nope\n");
  EXPECT_EQ(r.code, kExitUserError);
  EXPECT_EQ(r.err, "error: explain: UnknownQuery: no query named 'nope'\n");

  r = run_script("register q MATCH (p RETURN p\n");
  EXPECT_EQ(r.code, kExitUserError);
  EXPECT_EQ(r.err, "error: register: [parse] 1:10: SyntaxError: expected ')', found 'RETURN'\n");

  r = run_script("load " + data_path("dangling.json") + "\n");
  EXPECT_EQ(r.code, kExitUserError);
  EXPECT_NE(r.err.find("DanglingEdge"), std::string::npos);

  r = run_script("frobnicate\n");
  EXPECT_EQ(r.code, kExitUserError);

  // Execution stops at the first failure.
  r = run_script("results nope\nload " + data_path("fg1.json") + "\n");
  EXPECT_EQ(r.out, "");

  EXPECT_EQ(run_script("").code, kExitOk);
  EXPECT_EQ(run_script("# only a comment\n\n").code, kExitOk);
}

TEST(Cli, ApplyErrorNamesTheLine) {
  const std::string dir = data_path("");
  const Transcript r = run_script("load " + dir + "fg1.json\napply " + dir + "fg1_readd_5.jsonl\n");
  EXPECT_EQ(r.code, kExitUserError);
  EXPECT_NE(r.err.find("fg1_readd_5.jsonl:1: DuplicateId"), std::string::npos) << r.err;
}

TEST(Cli, ExplainStages) {
  const Transcript r = run_script("register f " + std::string(testing::kFilterQuery) + "\nexplain f --stage fra\n");
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("GetVertices[p:Person] :: ⟨p⟩ | req: {p.age, p.name} | flat: ⟨p, p.age, p.name⟩"),
            std::string::npos);
  EXPECT_EQ(run_script("register f " + std::string(testing::kFilterQuery) + "\nexplain f --stage xyz\n").code,
            kExitUserError);
}

TEST(Cli, OutputIsDeterministic) {
  const std::string dir = data_path("");
  const std::string script = "load " + dir + "fg1.json\nregister a " + testing::kOptionalQuery + "\nregister b " +
                             testing::kTopQuery + "\napply " + dir + "fg1_remove_5.jsonl\nresults a\n";
  EXPECT_EQ(run_script(script).out, run_script(script).out);
}

TEST(CommandScript, QuotesAndSeparators) {
  const auto cmds = parse_command_script("# leading comment\nload 'my file.json' ; results q\n"
                                         "register q \"MATCH (n) RETURN n\"\n");
  ASSERT_EQ(cmds.size(), 3u);
  EXPECT_EQ(cmds[0], (std::vector<std::string>{"load", "my file.json"}));
  EXPECT_EQ(cmds[1], (std::vector<std::string>{"results", "q"}));
  EXPECT_EQ(cmds[2], (std::vector<std::string>{"register", "q", "MATCH (n) RETURN n"}));
  EXPECT_EQ(split_commands({"load", "x", ";", "results", "q", ";"}).size(), 2u);
}

}  // namespace
}  // namespace graphivm
