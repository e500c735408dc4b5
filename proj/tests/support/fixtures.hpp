#pragma once

#include <string>
#include <vector>

namespace graphivm::testing {

#ifndef GRAPHIVM_TEST_DATA
#error "GRAPHIVM_TEST_DATA must point at tests/data"
#endif

inline std::string data_path(const std::string& name) { return std::string(GRAPHIVM_TEST_DATA) + "/" + name; }

// Example queries over the FG1 fixture.
inline constexpr const char* kFilterQuery = "MATCH (p:Person) WHERE p.age > 25 RETURN p.name";
inline constexpr const char* kInterestsQuery =
    "MATCH (p:Person)-[i:INTEREST]->(t:Tag) RETURN p.name, i.level, t.topic";
inline constexpr const char* kTransitiveQuery =
    "MATCH (c:Class)-[sos:SUBCLASS_OF*1..]->(a:Class) WHERE a.topic = 'Art' RETURN c.name, sos";
inline constexpr const char* kOptionalQuery =
    "MATCH (p:Person) OPTIONAL MATCH (p)-[i:INTEREST]->(t:Tag) RETURN p.name, t";
inline constexpr const char* kTopQuery =
    "MATCH (p:Person) WITH p UNWIND p.speaks AS lang RETURN lang, count(p) as sks ORDER BY sks DESC LIMIT 1";

// Interests of persons, projected to the name only (the running example).
inline constexpr const char* kRunningExampleQuery = "MATCH (p:Person)-[i:INTEREST]->(t:Tag) RETURN p.name";

/// Queries exercising every construct of the openCypher-to-GRA mapping.
inline std::vector<std::string> lowering_corpus() {
  return {
      "MATCH (v) RETURN v",
      "MATCH (v:Person:Admin) RETURN v",
      "MATCH (p)-[e:KNOWS]->(w) RETURN p, e, w",
      "MATCH (p)<-[e:KNOWS|LIKES]-(w) RETURN p, w",
      "MATCH (p)-[e]-(w:Tag) RETURN p, e",
      "MATCH (p)-[e:SUBCLASS_OF*1..3]->(w) RETURN e",
      "MATCH (p)<-[e:SUBCLASS_OF*]-(w:Class) RETURN p.name, e",
      "MATCH (p:Class)-[e:SUBCLASS_OF*0..2]-(w:Class) RETURN w",
      "MATCH (a:Person), (b:Tag) RETURN a, b",
      "MATCH (a)-[:KNOWS]->(b), (b)-[:INTEREST]->(t) RETURN a, t",
      "OPTIONAL MATCH (p:Person) RETURN p",
      "MATCH (p:Person) OPTIONAL MATCH (p)-[i:INTEREST]->(t:Tag) RETURN p.name, t",
      "MATCH (p) WHERE p.age > 25 AND p.name <> 'x' RETURN p.name",
      "MATCH (p) WHERE p:Person:Admin RETURN p",
      "MATCH (p:Person) WHERE (p)-[:INTEREST]->() RETURN p",
      "MATCH (p:Person) WHERE NOT (p)-[:INTEREST]->(:Tag) RETURN p",
      "MATCH (p:Person) RETURN p.name AS n, p.age + 1 AS a",
      "MATCH (p:Person) RETURN DISTINCT p.name",
      "MATCH (p:Person) RETURN p.name, count(*) AS c, min(p.age) AS m",
      "MATCH (p:Person) WITH p UNWIND p.speaks AS lang RETURN lang, count(p) AS sks ORDER BY sks DESC LIMIT 1",
      "MATCH (p:Person) RETURN p.name ORDER BY p.name ASC SKIP 1 LIMIT 2",
      "MATCH (p:Person) WITH p AS x WHERE x.age > 1 RETURN x.name",
      "MATCH (p:Person)-[:KNOWS*1..2]->(f) WITH DISTINCT f RETURN f.name ORDER BY f.name",
      "MATCH (c:Class)-[sos:SUBCLASS_OF*1..]->(a:Class) WHERE a.topic = 'Art' RETURN c.name, sos",
  };
}

}  // namespace graphivm::testing
