#include "transitive.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace graphivm::rete {

namespace {

/// One traversal step: edge `edge` walked from vertex `from` to vertex `to`.
struct Arc {
  uint32_t edge;
  uint32_t from;
  uint32_t to;
};

/// A cached trail in navigation order.
struct PathRec {
  std::vector<uint32_t> edges;
  uint32_t from;
  uint32_t to;
};

using Index = std::unordered_map<uint32_t, std::unordered_set<uint64_t>>;

bool disjoint(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  for (uint32_t x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  }
  return true;
}

bool contains(const std::vector<uint32_t>& edges, uint32_t e) {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

/// Where one output column comes from.
struct Column {
  enum class Source { From, To, Path, FromVertex, ToVertex } source;
  size_t index = 0;  // column of the vertex tuple for *Vertex sources
};

// Port 0 carries ⟨s, e, t⟩ for each matching edge; port 1 carries every
// candidate path vertex with the endpoint properties the plan needs. Paths
// of length 1..up are cached (including ones too short to be visible) so
// that a new edge can be spliced between an existing prefix and suffix.
class TransitiveNode : public Node {
 public:
  TransitiveNode(const PlanNode& plan, const EngineConfig& config)
      : Node(plan), budget_(config.path_budget), loop_only_(plan.v == plan.w) {
    vertex_columns_.push_back(Attribute::variable("x", VarType::Vertex));
    for (const auto& a : plan.flat) {
      Column c{};
      if (a.is_variable()) {
        if (a.var == plan.e) c.source = Column::Source::Path;
        else if (a.var == plan.v) c.source = Column::Source::From;
        else c.source = Column::Source::To;
      } else {
        Attribute x = a;
        x.var = "x";
        auto idx = find_attribute(vertex_columns_, x);
        if (!idx) {
          vertex_columns_.push_back(x);
          idx = vertex_columns_.size() - 1;
        }
        c.source = a.var == plan.v ? Column::Source::FromVertex : Column::Source::ToVertex;
        c.index = *idx;
      }
      columns_.push_back(c);
    }
  }

  std::vector<NullaryDescriptor> subscriptions() const override {
    NullaryDescriptor edges;
    edges.kind = NullaryDescriptor::Kind::Edges;
    edges.v = "s";
    edges.e = "e";
    edges.w = "t";
    edges.types = plan_.types;
    edges.labels = plan_.path_labels;
    edges.target_labels = plan_.path_labels;
    edges.direction = Direction::Out;
    edges.columns = {Attribute::variable("s", VarType::Vertex), Attribute::variable("e", VarType::Edge),
                     Attribute::variable("t", VarType::Vertex)};
    NullaryDescriptor vertices;
    vertices.v = "x";
    vertices.labels = plan_.path_labels;
    vertices.columns = vertex_columns_;
    return {edges, vertices};
  }

  ChangeSet on_input(size_t port, const ChangeSet& delta) override {
    SignedBag out;
    if (port == 0) {
      for_each_change(delta, [&](const Tuple& t, int64_t sign) {
        const uint32_t s = t[0].as<VertexRef>().id;
        const uint32_t e = t[1].as<EdgeRef>().id;
        const uint32_t d = t[2].as<VertexRef>().id;
        if (sign > 0) insert_edge(e, s, d, out);
        else remove_edge(e, out);
      });
    } else {
      on_vertices(delta, out);
    }
    return to_changeset(out, schema_);
  }

 private:
  std::vector<Arc> arcs(uint32_t e, uint32_t s, uint32_t t) const {
    switch (plan_.direction) {
      case Direction::Out: return {{e, s, t}};
      case Direction::In: return {{e, t, s}};
      case Direction::Both: return {{e, s, t}, {e, t, s}};
    }
    return {};
  }

  bool within_bound(size_t len) const { return !plan_.up || len <= *plan_.up; }

  void insert_edge(uint32_t e, uint32_t s, uint32_t t, SignedBag& out) {
    if (plan_.up && *plan_.up == 0) return;
    for (const Arc& arc : arcs(e, s, t)) {
      std::vector<const PathRec*> prefixes{nullptr};
      std::vector<const PathRec*> suffixes{nullptr};
      if (auto it = by_to_.find(arc.from); it != by_to_.end()) {
        for (uint64_t id : it->second) prefixes.push_back(&paths_.at(id));
      }
      if (auto it = by_from_.find(arc.to); it != by_from_.end()) {
        for (uint64_t id : it->second) suffixes.push_back(&paths_.at(id));
      }
      std::vector<PathRec> fresh;
      for (const PathRec* p : prefixes) {
        if (p && contains(p->edges, e)) continue;
        const size_t plen = p ? p->edges.size() : 0;
        if (!within_bound(plen + 1)) continue;
        for (const PathRec* q : suffixes) {
          if (q && contains(q->edges, e)) continue;
          const size_t qlen = q ? q->edges.size() : 0;
          if (!within_bound(plen + 1 + qlen)) continue;
          if (p && q && !disjoint(p->edges, q->edges)) continue;
          PathRec rec;
          rec.from = p ? p->from : arc.from;
          rec.to = q ? q->to : arc.to;
          if (p) rec.edges = p->edges;
          rec.edges.push_back(e);
          if (q) rec.edges.insert(rec.edges.end(), q->edges.begin(), q->edges.end());
          fresh.push_back(std::move(rec));
        }
      }
      if (paths_.size() + fresh.size() > budget_) {
        throw Error(ErrorKind::PathBudgetExceeded,
                    node_label(plan_) + " would cache " + std::to_string(paths_.size() + fresh.size()) +
                        " paths (budget " + std::to_string(budget_) + ")");
      }
      for (auto& rec : fresh) {
        if (auto row = path_row(rec)) bag_add(out, *row, 1);
        add_path(std::move(rec));
      }
    }
  }

  void remove_edge(uint32_t e, SignedBag& out) {
    auto it = by_edge_.find(e);
    if (it == by_edge_.end()) return;
    const std::vector<uint64_t> ids(it->second.begin(), it->second.end());
    for (uint64_t id : ids) {
      const PathRec& rec = paths_.at(id);
      if (auto row = path_row(rec)) bag_add(out, *row, -1);
      drop_path(id);
    }
  }

  void add_path(PathRec rec) {
    const uint64_t id = next_id_++;
    by_from_[rec.from].insert(id);
    by_to_[rec.to].insert(id);
    for (uint32_t e : rec.edges) by_edge_[e].insert(id);
    paths_.emplace(id, std::move(rec));
  }

  void drop_path(uint64_t id) {
    auto it = paths_.find(id);
    const PathRec& rec = it->second;
    auto unindex = [id](Index& index, uint32_t key) {
      auto slot = index.find(key);
      slot->second.erase(id);
      if (slot->second.empty()) index.erase(slot);
    };
    unindex(by_from_, rec.from);
    unindex(by_to_, rec.to);
    for (uint32_t e : rec.edges) {
      if (auto slot = by_edge_.find(e); slot != by_edge_.end()) {
        slot->second.erase(id);
        if (slot->second.empty()) by_edge_.erase(slot);
      }
    }
    paths_.erase(it);
  }

  /// Output rows for the current endpoint tuples, if the path is visible.
  std::optional<Tuple> path_row(const PathRec& rec) const {
    if (rec.edges.size() < std::max<uint32_t>(plan_.low, 1)) return std::nullopt;
    return row(rec.from, rec.edges, rec.to);
  }

  std::optional<Tuple> row(uint32_t from, const std::vector<uint32_t>& edges, uint32_t to) const {
    if (loop_only_ && from != to) return std::nullopt;
    auto fv = vertices_.find(from);
    auto tv = vertices_.find(to);
    if (fv == vertices_.end() || tv == vertices_.end()) return std::nullopt;
    Tuple out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) {
      switch (c.source) {
        case Column::Source::From: out.emplace_back(VertexRef{from}); break;
        case Column::Source::To: out.emplace_back(VertexRef{to}); break;
        case Column::Source::Path: {
          Path p{edges};
          if (plan_.reverse_path) std::reverse(p.edges.begin(), p.edges.end());
          out.emplace_back(std::move(p));
          break;
        }
        case Column::Source::FromVertex: out.push_back(fv->second[c.index]); break;
        case Column::Source::ToVertex: out.push_back(tv->second[c.index]); break;
      }
    }
    return out;
  }

  /// Rows of every path with an endpoint in `touched`, plus their zero-length rows.
  void rows_touching(const std::set<uint32_t>& touched, int64_t sign, SignedBag& out) const {
    std::set<uint64_t> ids;
    for (uint32_t v : touched) {
      if (auto it = by_from_.find(v); it != by_from_.end()) ids.insert(it->second.begin(), it->second.end());
      if (auto it = by_to_.find(v); it != by_to_.end()) ids.insert(it->second.begin(), it->second.end());
      if (plan_.low == 0) {
        if (auto r = row(v, {}, v)) bag_add(out, *r, sign);
      }
    }
    for (uint64_t id : ids) {
      if (auto r = path_row(paths_.at(id))) bag_add(out, *r, sign);
    }
  }

  void on_vertices(const ChangeSet& delta, SignedBag& out) {
    std::set<uint32_t> touched;
    for_each_change(delta, [&](const Tuple& t, int64_t) { touched.insert(t[0].as<VertexRef>().id); });
    rows_touching(touched, -1, out);
    for_each_change(delta, [&](const Tuple& t, int64_t sign) {
      const uint32_t v = t[0].as<VertexRef>().id;
      if (sign < 0) {
        auto it = vertices_.find(v);
        if (it == vertices_.end() || !(it->second == t)) inconsistent(t);
        vertices_.erase(it);
      } else {
        if (vertices_.count(v)) inconsistent(t);
        vertices_.emplace(v, t);
      }
    });
    rows_touching(touched, 1, out);
  }

  [[noreturn]] void inconsistent(const Tuple& t) const {
    throw Error(ErrorKind::InconsistentRetraction,
                node_label(plan_) + " received an inconsistent change for vertex " + display(t[0]));
  }

  size_t budget_;
  bool loop_only_;
  Schema vertex_columns_;
  std::vector<Column> columns_;
  std::unordered_map<uint32_t, Tuple> vertices_;
  std::unordered_map<uint64_t, PathRec> paths_;
  Index by_from_, by_to_, by_edge_;
  uint64_t next_id_ = 0;
};

}  // namespace

std::unique_ptr<Node> make_transitive_node(const PlanNode& plan, const EngineConfig& config) {
  return std::make_unique<TransitiveNode>(plan, config);
}

}  // namespace graphivm::rete
