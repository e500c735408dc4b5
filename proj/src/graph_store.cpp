#include "graphivm/graph_store.hpp"

#include <algorithm>

#include "graphivm/error.hpp"

namespace graphivm {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Out: return "out";
    case Direction::In: return "in";
    case Direction::Both: return "both";
  }
  return "out";
}

Direction reverse(Direction d) {
  switch (d) {
    case Direction::Out: return Direction::In;
    case Direction::In: return Direction::Out;
    case Direction::Both: return Direction::Both;
  }
  return d;
}

GraphDelta GraphDelta::add_vertex(std::string id, std::vector<std::string> labels,
                                  PropertyMap props) {
  GraphDelta d;
  d.kind = Kind::AddVertex;
  d.id = std::move(id);
  d.labels = std::move(labels);
  d.properties = std::move(props);
  return d;
}

GraphDelta GraphDelta::remove_vertex(std::string id, bool detach) {
  GraphDelta d;
  d.kind = Kind::RemoveVertex;
  d.id = std::move(id);
  d.detach = detach;
  return d;
}

GraphDelta GraphDelta::add_edge(std::string id, std::string src, std::string trg,
                                std::string type, PropertyMap props) {
  GraphDelta d;
  d.kind = Kind::AddEdge;
  d.id = std::move(id);
  d.src = std::move(src);
  d.trg = std::move(trg);
  d.type = std::move(type);
  d.properties = std::move(props);
  return d;
}

GraphDelta GraphDelta::remove_edge(std::string id) {
  GraphDelta d;
  d.kind = Kind::RemoveEdge;
  d.id = std::move(id);
  return d;
}

GraphDelta GraphDelta::set_property(bool on_edge, std::string id, std::string key, Value value) {
  GraphDelta d;
  d.kind = Kind::SetProperty;
  d.on_edge = on_edge;
  d.id = std::move(id);
  d.key = std::move(key);
  d.value = std::move(value);
  return d;
}

GraphDelta GraphDelta::remove_property(bool on_edge, std::string id, std::string key) {
  GraphDelta d;
  d.kind = Kind::RemoveProperty;
  d.on_edge = on_edge;
  d.id = std::move(id);
  d.key = std::move(key);
  return d;
}

namespace {

const std::set<uint32_t> kEmptySet;

bool subset_of(const std::vector<std::string>& wanted, const LabelSet& have) {
  return std::all_of(wanted.begin(), wanted.end(),
                     [&](const std::string& l) { return have.count(l) != 0; });
}

Value lookup(const PropertyMap& props, const std::string& key) {
  auto it = props.find(key);
  return it == props.end() ? Value{} : it->second;
}

Value labels_value(const LabelSet& labels) {
  std::vector<Value> items(labels.begin(), labels.end());
  return Value{Bag{std::move(items)}};
}

void check_property_value(const Value& v, const std::string& key) {
  if (v.is_null() || !v.is_property_value()) {
    throw Error(ErrorKind::TypeMismatch,
                "property '" + key + "' must be a scalar or a bag of scalars");
  }
}

}  // namespace

// -- reads -----------------------------------------------------------------

std::optional<VertexRef> PropertyGraph::find_vertex(const std::string& id) const {
  auto it = vertex_ids_.find(id);
  if (it == vertex_ids_.end() || !vertices_[it->second]) return std::nullopt;
  return VertexRef{it->second};
}

std::optional<EdgeRef> PropertyGraph::find_edge(const std::string& id) const {
  auto it = edge_ids_.find(id);
  if (it == edge_ids_.end() || !edges_[it->second]) return std::nullopt;
  return EdgeRef{it->second};
}

const VertexRecord* PropertyGraph::vertex(VertexRef v) const {
  if (v.id >= vertices_.size() || !vertices_[v.id]) return nullptr;
  return &*vertices_[v.id];
}

const EdgeRecord* PropertyGraph::edge(EdgeRef e) const {
  if (e.id >= edges_.size() || !edges_[e.id]) return nullptr;
  return &*edges_[e.id];
}

std::vector<VertexRef> PropertyGraph::vertices() const {
  std::vector<VertexRef> out;
  for (uint32_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i]) out.push_back(VertexRef{i});
  }
  return out;
}

std::vector<EdgeRef> PropertyGraph::edges() const {
  std::vector<EdgeRef> out;
  for (uint32_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i]) out.push_back(EdgeRef{i});
  }
  return out;
}

const std::set<uint32_t>& PropertyGraph::out_edges(VertexRef v) const {
  return v.id < out_.size() ? out_[v.id] : kEmptySet;
}

const std::set<uint32_t>& PropertyGraph::in_edges(VertexRef v) const {
  return v.id < in_.size() ? in_[v.id] : kEmptySet;
}

Value PropertyGraph::property(VertexRef v, const std::string& key) const {
  const auto* rec = vertex(v);
  return rec == nullptr ? Value{} : lookup(rec->properties, key);
}

Value PropertyGraph::property(EdgeRef e, const std::string& key) const {
  const auto* rec = edge(e);
  return rec == nullptr ? Value{} : lookup(rec->properties, key);
}

bool PropertyGraph::has_labels(VertexRef v, const std::vector<std::string>& labels) const {
  const auto* rec = vertex(v);
  return rec != nullptr && subset_of(labels, rec->labels);
}

const std::string& PropertyGraph::vertex_name(uint32_t id) const { return vertex_names_.at(id); }

const std::string& PropertyGraph::edge_name(uint32_t id) const { return edge_names_.at(id); }

std::vector<VertexRef> PropertyGraph::scan_vertices(const std::vector<std::string>& labels) const {
  if (labels.empty()) return vertices();
  // drive the scan from the rarest label
  const std::set<uint32_t>* smallest = nullptr;
  for (const auto& l : labels) {
    auto it = by_label_.find(l);
    if (it == by_label_.end()) return {};
    if (smallest == nullptr || it->second.size() < smallest->size()) smallest = &it->second;
  }
  std::vector<VertexRef> out;
  for (uint32_t id : *smallest) {
    if (subset_of(labels, vertices_[id]->labels)) out.push_back(VertexRef{id});
  }
  return out;
}

std::vector<EdgeTriple> PropertyGraph::scan_edges(const std::vector<std::string>& types,
                                                  const std::vector<std::string>& source_labels,
                                                  const std::vector<std::string>& target_labels,
                                                  Direction direction) const {
  std::vector<uint32_t> candidates;
  if (types.empty()) {
    for (const auto& e : edges()) candidates.push_back(e.id);
  } else {
    for (const auto& t : types) {
      auto it = by_type_.find(t);
      if (it != by_type_.end()) candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }
  std::vector<EdgeTriple> out;
  auto emit = [&](uint32_t from, uint32_t e, uint32_t to) {
    if (subset_of(source_labels, vertices_[from]->labels) &&
        subset_of(target_labels, vertices_[to]->labels)) {
      out.push_back({VertexRef{from}, EdgeRef{e}, VertexRef{to}});
    }
  };
  for (uint32_t e : candidates) {
    const auto& rec = *edges_[e];
    if (direction != Direction::In) emit(rec.src.id, e, rec.trg.id);
    if (direction != Direction::Out) emit(rec.trg.id, e, rec.src.id);
  }
  return out;
}

// -- mutation --------------------------------------------------------------

uint32_t PropertyGraph::intern_vertex(const std::string& id) {
  auto [it, inserted] = vertex_ids_.try_emplace(id, static_cast<uint32_t>(vertex_names_.size()));
  if (inserted) {
    vertex_names_.push_back(id);
    vertices_.emplace_back();
    out_.emplace_back();
    in_.emplace_back();
  }
  return it->second;
}

uint32_t PropertyGraph::intern_edge(const std::string& id) {
  auto [it, inserted] = edge_ids_.try_emplace(id, static_cast<uint32_t>(edge_names_.size()));
  if (inserted) {
    edge_names_.push_back(id);
    edges_.emplace_back();
  }
  return it->second;
}

void PropertyGraph::insert_vertex(uint32_t id, VertexRecord record) {
  for (const auto& l : record.labels) by_label_[l].insert(id);
  vertices_[id] = std::move(record);
  ++vertex_count_;
}

void PropertyGraph::erase_vertex(uint32_t id) {
  for (const auto& l : vertices_[id]->labels) {
    auto it = by_label_.find(l);
    it->second.erase(id);
    if (it->second.empty()) by_label_.erase(it);
  }
  vertices_[id].reset();
  --vertex_count_;
}

void PropertyGraph::insert_edge(uint32_t id, EdgeRecord record) {
  by_type_[record.type].insert(id);
  out_[record.src.id].insert(id);
  in_[record.trg.id].insert(id);
  edges_[id] = std::move(record);
  ++edge_count_;
}

void PropertyGraph::erase_edge(uint32_t id) {
  const auto& rec = *edges_[id];
  auto it = by_type_.find(rec.type);
  it->second.erase(id);
  if (it->second.empty()) by_type_.erase(it);
  out_[rec.src.id].erase(id);
  in_[rec.trg.id].erase(id);
  edges_[id].reset();
  --edge_count_;
}

void PropertyGraph::validate(const GraphDelta& d) const {
  using K = GraphDelta::Kind;
  switch (d.kind) {
    case K::AddVertex:
      if (find_vertex(d.id)) throw Error(ErrorKind::DuplicateId, "vertex '" + d.id + "' already exists");
      for (const auto& [k, v] : d.properties) check_property_value(v, k);
      break;
    case K::RemoveVertex: {
      auto v = find_vertex(d.id);
      if (!v) throw Error(ErrorKind::UnknownId, "unknown vertex '" + d.id + "'");
      if (!d.detach && (!out_edges(*v).empty() || !in_edges(*v).empty())) {
        throw Error(ErrorKind::VertexHasEdges,
                    "vertex '" + d.id + "' has incident edges (use detach)");
      }
      break;
    }
    case K::AddEdge:
      if (find_edge(d.id)) throw Error(ErrorKind::DuplicateId, "edge '" + d.id + "' already exists");
      if (!find_vertex(d.src)) throw Error(ErrorKind::UnknownId, "unknown source vertex '" + d.src + "'");
      if (!find_vertex(d.trg)) throw Error(ErrorKind::UnknownId, "unknown target vertex '" + d.trg + "'");
      if (d.type.empty()) throw Error(ErrorKind::TypeMismatch, "edge '" + d.id + "' needs a type");
      for (const auto& [k, v] : d.properties) check_property_value(v, k);
      break;
    case K::RemoveEdge:
      if (!find_edge(d.id)) throw Error(ErrorKind::UnknownId, "unknown edge '" + d.id + "'");
      break;
    case K::SetProperty:
    case K::RemoveProperty: {
      const bool exists = d.on_edge ? find_edge(d.id).has_value() : find_vertex(d.id).has_value();
      if (!exists) {
        throw Error(ErrorKind::UnknownId,
                    std::string("unknown ") + (d.on_edge ? "edge" : "vertex") + " '" + d.id + "'");
      }
      if (d.kind == K::SetProperty) check_property_value(d.value, d.key);
      break;
    }
  }
}

void PropertyGraph::mutate(const GraphDelta& d) {
  using K = GraphDelta::Kind;
  switch (d.kind) {
    case K::AddVertex: {
      VertexRecord rec;
      rec.labels.insert(d.labels.begin(), d.labels.end());
      rec.properties = d.properties;
      insert_vertex(intern_vertex(d.id), std::move(rec));
      break;
    }
    case K::RemoveVertex: erase_vertex(find_vertex(d.id)->id); break;
    case K::AddEdge: {
      EdgeRecord rec{*find_vertex(d.src), *find_vertex(d.trg), d.type, d.properties};
      insert_edge(intern_edge(d.id), std::move(rec));
      break;
    }
    case K::RemoveEdge: erase_edge(find_edge(d.id)->id); break;
    case K::SetProperty:
    case K::RemoveProperty: {
      PropertyMap& props = d.on_edge ? edges_[find_edge(d.id)->id]->properties
                                     : vertices_[find_vertex(d.id)->id]->properties;
      if (d.kind == K::SetProperty) {
        props[d.key] = d.value;
      } else {
        props.erase(d.key);
      }
      break;
    }
  }
}

std::vector<Notification> PropertyGraph::apply_delta(const GraphDelta& delta) {
  validate(delta);
  if (delta.kind == GraphDelta::Kind::RemoveVertex && delta.detach) {
    const VertexRef v = *find_vertex(delta.id);
    std::set<uint32_t> incident = out_edges(v);
    incident.insert(in_edges(v).begin(), in_edges(v).end());
    std::vector<Notification> out;
    for (uint32_t e : incident) {
      auto part = apply_single(GraphDelta::remove_edge(edge_names_[e]));
      std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    auto last = apply_single(GraphDelta::remove_vertex(delta.id, false));
    std::move(last.begin(), last.end(), std::back_inserter(out));
    return out;
  }
  return apply_single(delta);
}

std::vector<Notification> PropertyGraph::apply_single(const GraphDelta& d) {
  using K = GraphDelta::Kind;
  std::vector<uint32_t> vs;
  std::vector<uint32_t> es;
  switch (d.kind) {
    case K::AddVertex: vs.push_back(intern_vertex(d.id)); break;
    case K::RemoveVertex: vs.push_back(find_vertex(d.id)->id); break;
    case K::AddEdge: es.push_back(intern_edge(d.id)); break;
    case K::RemoveEdge: es.push_back(find_edge(d.id)->id); break;
    case K::SetProperty:
    case K::RemoveProperty:
      if (d.on_edge) {
        es.push_back(find_edge(d.id)->id);
      } else {
        const VertexRef v = *find_vertex(d.id);
        vs.push_back(v.id);
        std::set<uint32_t> incident = out_edges(v);
        incident.insert(in_edges(v).begin(), in_edges(v).end());
        es.assign(incident.begin(), incident.end());
      }
      break;
  }

  auto before = snapshot(vs, es);
  mutate(d);
  auto after = snapshot(vs, es);

  std::vector<Notification> out;
  for (uint32_t s = 0; s < subscriptions_.size(); ++s) {
    if (!subscriptions_[s]) continue;
    ChangeSet cs;
    cs.schema = subscriptions_[s]->schema;
    cs.negative = std::move(before[s]);
    cs.positive = std::move(after[s]);
    cs = consolidate(cs);
    if (!cs.empty()) out.push_back({s, std::move(cs)});
  }
  return out;
}

std::vector<GraphDelta> PropertyGraph::inverse_of(const GraphDelta& d) const {
  using K = GraphDelta::Kind;
  validate(d);
  switch (d.kind) {
    case K::AddVertex: return {GraphDelta::remove_vertex(d.id)};
    case K::AddEdge: return {GraphDelta::remove_edge(d.id)};
    case K::RemoveEdge: {
      const auto& rec = *edge(*find_edge(d.id));
      return {GraphDelta::add_edge(d.id, vertex_names_[rec.src.id], vertex_names_[rec.trg.id],
                                   rec.type, rec.properties)};
    }
    case K::RemoveVertex: {
      const VertexRef v = *find_vertex(d.id);
      const auto& rec = *vertex(v);
      std::vector<GraphDelta> out;
      out.push_back(GraphDelta::add_vertex(
          d.id, std::vector<std::string>(rec.labels.begin(), rec.labels.end()), rec.properties));
      std::set<uint32_t> incident = out_edges(v);
      incident.insert(in_edges(v).begin(), in_edges(v).end());
      for (uint32_t e : incident) {
        const auto& er = *edges_[e];
        out.push_back(GraphDelta::add_edge(edge_names_[e], vertex_names_[er.src.id],
                                           vertex_names_[er.trg.id], er.type, er.properties));
      }
      return out;
    }
    case K::SetProperty:
    case K::RemoveProperty: {
      const Value old = d.on_edge ? property(*find_edge(d.id), d.key)
                                  : property(*find_vertex(d.id), d.key);
      if (old.is_null()) return {GraphDelta::remove_property(d.on_edge, d.id, d.key)};
      return {GraphDelta::set_property(d.on_edge, d.id, d.key, old)};
    }
  }
  return {};
}

// -- subscriptions -----------------------------------------------------------

void PropertyGraph::vertex_tuples(const Subscription& sub, uint32_t v,
                                  std::vector<Tuple>& out) const {
  const auto& desc = sub.descriptor;
  if (desc.kind != NullaryDescriptor::Kind::Vertices) return;
  if (v >= vertices_.size() || !vertices_[v]) return;
  const auto& rec = *vertices_[v];
  if (!subset_of(desc.labels, rec.labels)) return;
  Tuple t;
  t.reserve(desc.columns.size());
  for (const auto& col : desc.columns) {
    if (col.var != desc.v) {
      t.emplace_back();
      continue;
    }
    switch (col.kind) {
      case AttrKind::Variable: t.emplace_back(VertexRef{v}); break;
      case AttrKind::Property: t.push_back(lookup(rec.properties, col.key)); break;
      case AttrKind::Labels: t.push_back(labels_value(rec.labels)); break;
    }
  }
  out.push_back(std::move(t));
}

void PropertyGraph::edge_tuples(const Subscription& sub, uint32_t e,
                                std::vector<Tuple>& out) const {
  const auto& desc = sub.descriptor;
  if (desc.kind != NullaryDescriptor::Kind::Edges) return;
  if (e >= edges_.size() || !edges_[e]) return;
  const auto& rec = *edges_[e];
  if (!desc.types.empty() &&
      std::find(desc.types.begin(), desc.types.end(), rec.type) == desc.types.end()) {
    return;
  }
  auto emit = [&](uint32_t from, uint32_t to) {
    const auto& fv = *vertices_[from];
    const auto& tv = *vertices_[to];
    if (!subset_of(desc.labels, fv.labels) || !subset_of(desc.target_labels, tv.labels)) return;
    if (desc.v == desc.w && from != to) return;
    Tuple t;
    t.reserve(desc.columns.size());
    for (const auto& col : desc.columns) {
      const bool is_v = col.var == desc.v;
      const bool is_w = col.var == desc.w;
      const bool is_e = col.var == desc.e;
      if (col.kind == AttrKind::Variable) {
        if (is_v) {
          t.emplace_back(VertexRef{from});
        } else if (is_w) {
          t.emplace_back(VertexRef{to});
        } else if (is_e) {
          t.emplace_back(EdgeRef{e});
        } else {
          t.emplace_back();
        }
      } else if (col.kind == AttrKind::Property) {
        if (is_v) {
          t.push_back(lookup(fv.properties, col.key));
        } else if (is_w) {
          t.push_back(lookup(tv.properties, col.key));
        } else if (is_e) {
          t.push_back(lookup(rec.properties, col.key));
        } else {
          t.emplace_back();
        }
      } else {
        if (is_v) {
          t.push_back(labels_value(fv.labels));
        } else if (is_w) {
          t.push_back(labels_value(tv.labels));
        } else {
          t.emplace_back();
        }
      }
    }
    out.push_back(std::move(t));
  };
  if (desc.direction != Direction::In) emit(rec.src.id, rec.trg.id);
  if (desc.direction != Direction::Out) emit(rec.trg.id, rec.src.id);
}

std::vector<std::vector<Tuple>> PropertyGraph::snapshot(const std::vector<uint32_t>& vs,
                                                        const std::vector<uint32_t>& es) const {
  std::vector<std::vector<Tuple>> out(subscriptions_.size());
  for (size_t s = 0; s < subscriptions_.size(); ++s) {
    if (!subscriptions_[s]) continue;
    for (uint32_t v : vs) vertex_tuples(*subscriptions_[s], v, out[s]);
    for (uint32_t e : es) edge_tuples(*subscriptions_[s], e, out[s]);
  }
  return out;
}

std::vector<Tuple> PropertyGraph::scan(SubscriptionId id) const {
  const auto& sub = subscriptions_.at(id).value();
  std::vector<Tuple> out;
  if (sub.descriptor.kind == NullaryDescriptor::Kind::Vertices) {
    for (const auto& v : scan_vertices(sub.descriptor.labels)) vertex_tuples(sub, v.id, out);
  } else {
    for (const auto& e : edges()) edge_tuples(sub, e.id, out);
  }
  return out;
}

std::pair<SubscriptionId, ChangeSet> PropertyGraph::subscribe(NullaryDescriptor descriptor) {
  Subscription sub;
  sub.schema = std::make_shared<const Schema>(descriptor.columns);
  sub.descriptor = std::move(descriptor);
  const auto id = static_cast<SubscriptionId>(subscriptions_.size());
  subscriptions_.push_back(std::move(sub));
  ChangeSet initial;
  initial.schema = subscriptions_.back()->schema;
  initial.positive = scan(id);
  return {id, std::move(initial)};
}

void PropertyGraph::unsubscribe(SubscriptionId id) {
  if (id < subscriptions_.size()) subscriptions_[id].reset();
}

size_t PropertyGraph::subscription_count() const {
  return static_cast<size_t>(
      std::count_if(subscriptions_.begin(), subscriptions_.end(),
                    [](const auto& s) { return s.has_value(); }));
}

}  // namespace graphivm
