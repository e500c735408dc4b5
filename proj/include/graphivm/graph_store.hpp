#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphivm/changeset.hpp"
#include "graphivm/schema.hpp"
#include "graphivm/value.hpp"

namespace graphivm {

enum class Direction { Out, In, Both };

std::string_view to_string(Direction d);
Direction reverse(Direction d);

/// Missing key means null; explicit nulls are never stored.
using PropertyMap = std::map<std::string, Value>;
using LabelSet = std::set<std::string>;

struct VertexRecord {
  LabelSet labels;
  PropertyMap properties;
};

struct EdgeRecord {
  VertexRef src;
  VertexRef trg;
  std::string type;
  PropertyMap properties;
};

/// One atomic graph mutation.
struct GraphDelta {
  enum class Kind { AddVertex, RemoveVertex, AddEdge, RemoveEdge, SetProperty, RemoveProperty };

  Kind kind = Kind::AddVertex;
  std::string id;
  // add-vertex
  std::vector<std::string> labels;
  // add-vertex / add-edge
  PropertyMap properties;
  // add-edge
  std::string src;
  std::string trg;
  std::string type;
  // remove-vertex
  bool detach = false;
  // set-property / remove-property
  bool on_edge = false;
  std::string key;
  Value value;

  static GraphDelta add_vertex(std::string id, std::vector<std::string> labels,
                               PropertyMap props = {});
  static GraphDelta remove_vertex(std::string id, bool detach = false);
  static GraphDelta add_edge(std::string id, std::string src, std::string trg, std::string type,
                             PropertyMap props = {});
  static GraphDelta remove_edge(std::string id);
  static GraphDelta set_property(bool on_edge, std::string id, std::string key, Value value);
  static GraphDelta remove_property(bool on_edge, std::string id, std::string key);
};

/// Configuration of a get-vertices or get-edges scan plus the flat columns
/// a subscriber wants delivered.
struct NullaryDescriptor {
  enum class Kind { Vertices, Edges };

  Kind kind = Kind::Vertices;
  std::string v;
  std::string e;
  std::string w;
  std::vector<std::string> labels;         // get-vertices L, or get-edges L1 (v side)
  std::vector<std::string> types;          // empty = any type
  std::vector<std::string> target_labels;  // get-edges L2 (w side)
  Direction direction = Direction::Out;
  Schema columns;
};

using SubscriptionId = uint32_t;

struct Notification {
  SubscriptionId subscription = 0;
  ChangeSet changes;
};

struct EdgeTriple {
  VertexRef v;
  EdgeRef e;
  VertexRef w;
  bool operator==(const EdgeTriple&) const = default;
};

/// In-memory property graph with label/type/adjacency indexes and change
/// notifications for registered scans. Single writer.
class PropertyGraph : public IdNames {
 public:
  PropertyGraph() = default;

  // -- reads --------------------------------------------------------------
  size_t vertex_count() const { return vertex_count_; }
  size_t edge_count() const { return edge_count_; }

  std::optional<VertexRef> find_vertex(const std::string& id) const;
  std::optional<EdgeRef> find_edge(const std::string& id) const;
  const VertexRecord* vertex(VertexRef v) const;
  const EdgeRecord* edge(EdgeRef e) const;

  /// All live vertices / edges in id order.
  std::vector<VertexRef> vertices() const;
  std::vector<EdgeRef> edges() const;
  const std::set<uint32_t>& out_edges(VertexRef v) const;
  const std::set<uint32_t>& in_edges(VertexRef v) const;

  Value property(VertexRef v, const std::string& key) const;
  Value property(EdgeRef e, const std::string& key) const;
  bool has_labels(VertexRef v, const std::vector<std::string>& labels) const;

  const std::string& vertex_name(uint32_t id) const override;
  const std::string& edge_name(uint32_t id) const override;

  /// Vertices whose label set is a superset of `labels`.
  std::vector<VertexRef> scan_vertices(const std::vector<std::string>& labels) const;
  /// ⟨v, e, w⟩ per matching edge; Both = directed result plus the swapped one.
  std::vector<EdgeTriple> scan_edges(const std::vector<std::string>& types,
                                     const std::vector<std::string>& source_labels,
                                     const std::vector<std::string>& target_labels,
                                     Direction direction) const;

  // -- mutation -----------------------------------------------------------
  /// Applies one delta atomically and returns the resulting change sets of
  /// every subscription whose scan result changed, in delivery order.
  std::vector<Notification> apply_delta(const GraphDelta& delta);

  /// Deltas that undo `delta` when applied after it (computed on the
  /// pre-state; `delta` must be valid against *this).
  std::vector<GraphDelta> inverse_of(const GraphDelta& delta) const;

  /// Checks `delta` against the current state; throws Error on failure.
  void validate(const GraphDelta& delta) const;

  // -- subscriptions ------------------------------------------------------
  /// Registers a scan; returns its handle and the initial positive change set.
  std::pair<SubscriptionId, ChangeSet> subscribe(NullaryDescriptor descriptor);
  void unsubscribe(SubscriptionId id);
  size_t subscription_count() const;

  /// Current flat tuples of a subscription's scan.
  std::vector<Tuple> scan(SubscriptionId id) const;

 private:
  struct Subscription {
    NullaryDescriptor descriptor;
    SchemaPtr schema;
  };

  uint32_t intern_vertex(const std::string& id);
  uint32_t intern_edge(const std::string& id);

  void insert_vertex(uint32_t id, VertexRecord record);
  void erase_vertex(uint32_t id);
  void insert_edge(uint32_t id, EdgeRecord record);
  void erase_edge(uint32_t id);

  std::vector<Notification> apply_single(const GraphDelta& delta);
  void mutate(const GraphDelta& delta);

  void vertex_tuples(const Subscription& sub, uint32_t v, std::vector<Tuple>& out) const;
  void edge_tuples(const Subscription& sub, uint32_t e, std::vector<Tuple>& out) const;
  std::vector<std::vector<Tuple>> snapshot(const std::vector<uint32_t>& vertices,
                                           const std::vector<uint32_t>& edges) const;

  std::unordered_map<std::string, uint32_t> vertex_ids_;
  std::vector<std::string> vertex_names_;
  std::vector<std::optional<VertexRecord>> vertices_;
  std::vector<std::set<uint32_t>> out_;
  std::vector<std::set<uint32_t>> in_;

  std::unordered_map<std::string, uint32_t> edge_ids_;
  std::vector<std::string> edge_names_;
  std::vector<std::optional<EdgeRecord>> edges_;

  std::map<std::string, std::set<uint32_t>> by_label_;
  std::map<std::string, std::set<uint32_t>> by_type_;

  size_t vertex_count_ = 0;
  size_t edge_count_ = 0;

  std::vector<std::optional<Subscription>> subscriptions_;
};

}  // namespace graphivm
