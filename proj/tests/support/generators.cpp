#include "generators.hpp"

#include <algorithm>

#include "graphivm/cypher/validate.hpp"
#include "graphivm/gra_compiler.hpp"

namespace graphivm::testing {

namespace {

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

size_t below(Rng& rng, size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }

int64_t between(Rng& rng, int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[below(rng, xs.size())];
}

const std::vector<std::string> kNames = {"x", "y", "z"};
const std::vector<double> kScores = {-1.5, 0.5, 1.25, 2.0};
const std::vector<std::string> kTags = {"t1", "t2", "t3"};

Value random_tags(Rng& rng) {
  std::vector<Value> items;
  const size_t n = below(rng, 4);
  for (size_t i = 0; i < n; ++i) items.emplace_back(pick(rng, kTags));
  return Value{Bag{std::move(items)}};
}

}  // namespace

PropertyMap DeltaGenerator::vertex_properties() {
  PropertyMap props;
  if (chance(rng_, 0.8)) props["name"] = pick(rng_, kNames);
  if (chance(rng_, 0.7)) props["age"] = between(rng_, 0, 4);
  if (chance(rng_, 0.4)) props["score"] = pick(rng_, kScores);
  if (chance(rng_, 0.5)) props["tags"] = random_tags(rng_);
  return props;
}

GraphDelta DeltaGenerator::add_vertex() {
  std::vector<std::string> labels;
  if (chance(rng_, 0.5)) labels.push_back("A");
  if (chance(rng_, 0.5)) labels.push_back("B");
  return GraphDelta::add_vertex("v" + std::to_string(next_vertex_++), labels, vertex_properties());
}

std::optional<GraphDelta> DeltaGenerator::add_edge(const PropertyGraph& g,
                                                   const std::vector<std::string>& vertices) {
  if (vertices.empty() || g.edge_count() >= kMaxEdges) return std::nullopt;
  size_t sparse = 0;
  for (auto e : g.edges()) sparse += g.edge(e)->type == "S";
  const std::string type = sparse < kMaxSparseEdges && chance(rng_, 0.3) ? "S" : "R";
  PropertyMap props;
  if (chance(rng_, 0.7)) props["w"] = between(rng_, 0, 3);
  return GraphDelta::add_edge("e" + std::to_string(next_edge_++), pick(rng_, vertices), pick(rng_, vertices),
                              type, props);
}

std::vector<GraphDelta> DeltaGenerator::initial_graph(size_t vertices, size_t edges) {
  std::vector<GraphDelta> out;
  PropertyGraph g;
  std::vector<std::string> ids;
  for (size_t i = 0; i < std::min(vertices, kMaxVertices); ++i) {
    out.push_back(add_vertex());
    ids.push_back(out.back().id);
    g.apply_delta(out.back());
  }
  for (size_t i = 0; i < edges; ++i) {
    auto d = add_edge(g, ids);
    if (!d) break;
    g.apply_delta(*d);
    out.push_back(std::move(*d));
  }
  return out;
}

GraphDelta DeltaGenerator::next(const PropertyGraph& g) {
  std::vector<std::string> vertices;
  for (auto v : g.vertices()) vertices.push_back(g.vertex_name(v.id));
  std::vector<std::string> edges;
  for (auto e : g.edges()) edges.push_back(g.edge_name(e.id));
  for (;;) {
    switch (below(rng_, 7)) {
      case 0:
        if (g.vertex_count() < kMaxVertices) return add_vertex();
        break;
      case 1:
        if (!vertices.empty()) return GraphDelta::remove_vertex(pick(rng_, vertices), true);
        break;
      case 2:
      case 3:
        if (auto d = add_edge(g, vertices)) return *d;
        break;
      case 4:
        if (!edges.empty()) return GraphDelta::remove_edge(pick(rng_, edges));
        break;
      case 5:
        if (!vertices.empty()) {
          const std::string id = pick(rng_, vertices);
          switch (below(rng_, 4)) {
            case 0: return GraphDelta::set_property(false, id, "name", pick(rng_, kNames));
            case 1: return GraphDelta::set_property(false, id, "age", between(rng_, 0, 4));
            case 2: return GraphDelta::set_property(false, id, "score", pick(rng_, kScores));
            default: return GraphDelta::set_property(false, id, "tags", random_tags(rng_));
          }
        }
        break;
      default:
        if (!edges.empty() && chance(rng_, 0.4)) {
          const std::string id = pick(rng_, edges);
          if (chance(rng_, 0.5)) return GraphDelta::set_property(true, id, "w", between(rng_, 0, 3));
          return GraphDelta::remove_property(true, id, "w");
        }
        if (!vertices.empty()) {
          static const std::vector<std::string> keys = {"name", "age", "score", "tags"};
          return GraphDelta::remove_property(false, pick(rng_, vertices), pick(rng_, keys));
        }
        break;
    }
  }
}

PropertyGraph build_graph(const std::vector<GraphDelta>& deltas) {
  PropertyGraph g;
  for (const auto& d : deltas) g.apply_delta(d);
  return g;
}

namespace {

/// Assembles one random query; tracks which variables are in scope.
class QueryBuilder {
 public:
  explicit QueryBuilder(Rng& rng) : rng_(rng) {}

  std::string build() {
    std::string q;
    if (chance(rng_, 0.07)) {
      q += "OPTIONAL MATCH (a" + labels() + ")";
      vertices_.push_back("a");
      nullable_ = true;
    } else {
      q += "MATCH " + main_pattern();
      if (chance(rng_, 0.25)) q += ", " + second_pattern();
    }
    if (chance(rng_, 0.6)) q += " WHERE " + where();
    if (chance(rng_, 0.3)) {
      const std::string t = type_spec();
      q += " OPTIONAL MATCH (a)-[o" + t + "]->(e" + labels() + ")";
      optional_vertices_.push_back("e");
      optional_edges_.push_back("o");
    }
    return q + " " + tail();
  }

 private:
  std::string labels() {
    switch (below(rng_, 9)) {
      case 0:
      case 1: return ":A";
      case 2: return ":B";
      case 3: return ":A:B";
      default: return "";
    }
  }

  std::string type_spec() {
    switch (below(rng_, 8)) {
      case 0:
      case 1:
      case 2: return ":R";
      case 3: return ":S";
      case 4: return ":R|S";
      default: return "";
    }
  }

  std::string rel(const std::string& var, const std::string& body) {
    switch (below(rng_, 3)) {
      case 0: return "-[" + var + body + "]->";
      case 1: return "<-[" + var + body + "]-";
      default: return "-[" + var + body + "]-";
    }
  }

  std::string main_pattern() {
    vertices_.push_back("a");
    switch (below(rng_, 6)) {
      case 0: return "(a" + labels() + ")";
      case 1:
      case 2:
        vertices_.push_back("b");
        edges_.push_back("r");
        return "(a" + labels() + ")" + rel("r", type_spec()) + "(b" + labels() + ")";
      case 3:
        vertices_.insert(vertices_.end(), {"b", "c"});
        edges_.insert(edges_.end(), {"r", "s"});
        return "(a" + labels() + ")" + rel("r", type_spec()) + "(b)" + rel("s", ":R") + "(c" + labels() + ")";
      case 4: {
        vertices_.push_back("b");
        paths_.push_back("p");
        static const std::vector<std::string> bounded = {"*1..2", "*0..2", "*2..3", "*1", "*..3", "*0..1"};
        const std::string body = chance(rng_, 0.3) ? ":S*" : ":R" + pick(rng_, bounded);
        return "(a" + labels() + ")" + rel("p", body) + "(b" + labels() + ")";
      }
      default:
        if (chance(rng_, 0.5)) {
          edges_.push_back("r");
          return "(a)" + rel("r", type_spec()) + "(a)";
        }
        paths_.push_back("p");
        return "(a)" + rel("p", ":S*1..") + "(a" + labels() + ")";
    }
  }

  std::string second_pattern() {
    if (vertices_.size() <= 2 && chance(rng_, 0.4)) {
      vertices_.push_back("d");
      return "(d:B)";
    }
    vertices_.push_back("d");
    edges_.push_back("q");
    return "(a)" + rel("q", ":R") + "(d)";
  }

  std::string atom() {
    const std::string v = pick(rng_, vertices_);
    switch (below(rng_, 12)) {
      case 0: return v + ".age > " + std::to_string(between(rng_, 0, 3));
      case 1: return v + ".age <= " + std::to_string(between(rng_, 0, 3));
      case 2: return v + ".name = '" + pick(rng_, kNames) + "'";
      case 3: return v + ".name <> '" + pick(rng_, kNames) + "'";
      case 4: return v + ".score < 1.0";
      case 5: return v + ":A";
      case 6: return "NOT " + v + ":B";
      case 7: return v + ".age * 2 - 1 > " + std::to_string(between(rng_, 0, 6));
      case 8: return v + ".age / 2 = 1";
      case 9: return pick(rng_, vertices_) + ".name = " + v + ".name";
      case 10:
        if (!edges_.empty()) return pick(rng_, edges_) + ".w >= " + std::to_string(between(rng_, 0, 3));
        return v + ".age = 2";
      default:
        if (!edges_.empty()) return v + ".age + " + pick(rng_, edges_) + ".w > 3";
        return v + ".age >= 1";
    }
  }

  std::string scalar_condition(int depth) {
    if (depth > 0 && chance(rng_, 0.35)) {
      const std::string op = chance(rng_, 0.5) ? " AND " : " OR ";
      return "(" + scalar_condition(depth - 1) + op + scalar_condition(depth - 1) + ")";
    }
    if (depth > 0 && chance(rng_, 0.1)) return "NOT (" + scalar_condition(depth - 1) + ")";
    return atom();
  }

  std::string pattern_condition() {
    const std::string v = pick(rng_, vertices_);
    const std::string neg = chance(rng_, 0.5) ? "NOT " : "";
    if (vertices_.size() > 1 && chance(rng_, 0.3)) {
      return neg + "(" + v + ")-[:R]->(" + pick(rng_, vertices_) + ")";
    }
    return neg + "(" + v + ")" + rel("", type_spec()) + "(" + labels() + ")";
  }

  std::string where() {
    std::vector<std::string> conjuncts;
    if (chance(rng_, 0.35)) conjuncts.push_back(pattern_condition());
    if (conjuncts.empty() || chance(rng_, 0.6)) conjuncts.push_back(scalar_condition(2));
    std::string out;
    for (size_t i = 0; i < conjuncts.size(); ++i) out += (i ? " AND " : "") + conjuncts[i];
    return out;
  }

  std::string any_vertex() {
    std::vector<std::string> all = vertices_;
    all.insert(all.end(), optional_vertices_.begin(), optional_vertices_.end());
    return pick(rng_, all);
  }

  std::string order_suffix(const std::vector<std::string>& aliases) {
    if (!chance(rng_, 0.3)) return "";
    std::string out = " ORDER BY ";
    const size_t n = 1 + below(rng_, std::min<size_t>(2, aliases.size()));
    for (size_t i = 0; i < n; ++i) {
      out += (i ? ", " : "") + pick(rng_, aliases) + (chance(rng_, 0.5) ? " DESC" : "");
    }
    if (chance(rng_, 0.4)) out += " SKIP " + std::to_string(between(rng_, 0, 2));
    if (chance(rng_, 0.7)) out += " LIMIT " + std::to_string(between(rng_, 0, 4));
    return out;
  }

  std::string tail() {
    const std::string v = any_vertex();
    const std::string w = any_vertex();
    switch (below(rng_, 9)) {
      case 0: {
        std::string items = v + ".name AS n1, " + w + ".age AS n2";
        std::vector<std::string> aliases = {"n1", "n2"};
        if (!edges_.empty()) {
          items += ", " + pick(rng_, edges_) + " AS el";
          aliases.push_back("el");
        }
        if (!paths_.empty()) {
          items += ", " + paths_[0] + " AS pa";
          aliases.push_back("pa");
        }
        items += ", " + v + " AS ve";
        aliases.push_back("ve");
        return "RETURN " + items + order_suffix(aliases);
      }
      case 1: return "RETURN DISTINCT " + v + ".name AS n" + order_suffix({"n"});
      case 2:
        return "RETURN " + v + ".name AS k, count(*) AS c, sum(" + w + ".age) AS s, min(" + w +
               ".name) AS mn, max(" + w + ".score) AS mx, avg(" + w + ".age) AS av, collect(" + w +
               ".age) AS cl, count(" + w + ") AS cw" + order_suffix({"k", "c", "s"});
      case 3: return "WITH " + v + " UNWIND " + v + ".tags AS t RETURN t, count(" + v + ") AS c" +
                     order_suffix({"t", "c"});
      case 4: return "UNWIND " + v + ".tags AS t RETURN " + w + ".name AS n, t" + order_suffix({"n", "t"});
      case 5: return "WITH " + v + " AS x, " + (v == w ? "1 AS one" : w) + " WHERE x.age >= 1 RETURN x.name AS n, x" +
                     order_suffix({"n", "x"});
      case 6: return "WITH " + v + ".name AS n, count(*) AS c WHERE c > 1 RETURN n, c" + order_suffix({"n", "c"});
      case 7: return "WITH DISTINCT " + v + ".age AS g RETURN g, g + 1 AS h" + order_suffix({"g"});
      default: return "RETURN " + v + ".age + 1 AS inc, " + v + ":A AS isa, max(" + w + ".age) AS m";
    }
  }

  Rng& rng_;
  std::vector<std::string> vertices_;
  std::vector<std::string> edges_;
  std::vector<std::string> paths_;
  std::vector<std::string> optional_vertices_;
  std::vector<std::string> optional_edges_;
  bool nullable_ = false;
};

}  // namespace

std::string random_query(Rng& rng) { return QueryBuilder(rng).build(); }

PlanNode random_union_plan(Rng& rng) {
  auto side = [&](const std::string& text) { return compile(cypher::parse_and_validate(text)); };
  static const std::vector<std::string> shapes = {
      "MATCH (a:A) RETURN a.name AS n, a AS v",
      "MATCH (a)-[:R]->(b:B) RETURN b.name AS n, a AS v",
      "MATCH (a:B) WHERE a.age > 1 RETURN a.name AS n, a AS v",
      "MATCH (a)<-[:S*1..2]-(b) RETURN b.name AS n, a AS v",
  };
  return ops::binary(OpKind::Union, side(pick(rng, shapes)), side(pick(rng, shapes)));
}

}  // namespace graphivm::testing
