#include "graphivm/rete/nodes.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "graphivm/expr_eval.hpp"
#include "transitive.hpp"

namespace graphivm::rete {

using cypher::AggregateFn;
using cypher::Expr;

Node::Node(const PlanNode& plan) : plan_(plan), schema_(std::make_shared<const Schema>(plan.flat)) {}

bool SortEntryLess::operator()(const SortEntry& a, const SortEntry& b) const {
  for (size_t i = 0; i < a.keys.size(); ++i) {
    auto c = compare(a.keys[i], b.keys[i]);
    if (c == 0) continue;
    const bool less = c < 0;
    return descending[i] ? !less : less;
  }
  return compare(a.row, b.row) < 0;
}

namespace {

[[noreturn]] void inconsistent(const PlanNode& plan, const Tuple& t) {
  std::string row;
  for (size_t i = 0; i < t.size(); ++i) row += (i ? ", " : "") + literal_text(t[i]);
  throw Error(ErrorKind::InconsistentRetraction,
              std::string(to_string(plan.kind)) + " input retracts ⟨" + row + "⟩ below zero");
}

/// bag[t] += delta, refusing to go negative.
void add_checked(SignedBag& bag, const Tuple& t, int64_t delta, const PlanNode& plan) {
  auto it = bag.find(t);
  const int64_t now = (it == bag.end() ? 0 : it->second) + delta;
  if (now < 0) inconsistent(plan, t);
  if (now == 0) {
    if (it != bag.end()) bag.erase(it);
  } else if (it == bag.end()) {
    bag.emplace(t, now);
  } else {
    it->second = now;
  }
}

ChangeSet output(const SignedBag& delta, const SchemaPtr& schema) { return to_changeset(delta, schema); }

/// Positions of the join variables in a flat schema.
struct KeyColumns {
  std::vector<size_t> cols;

  KeyColumns() = default;
  KeyColumns(const std::vector<std::string>& vars, const Schema& flat) {
    for (const auto& v : vars) cols.push_back(*find_variable(flat, v));
  }
  Tuple key(const Tuple& t) const {
    Tuple k;
    k.reserve(cols.size());
    for (size_t c : cols) k.push_back(t[c]);
    return k;
  }
};

bool has_null(const Tuple& key) {
  return std::any_of(key.begin(), key.end(), [](const Value& v) { return v.is_null(); });
}

using KeyedBags = std::unordered_map<Tuple, SignedBag, TupleHash>;

void keyed_add(KeyedBags& bags, const Tuple& key, const Tuple& t, int64_t delta, const PlanNode& plan) {
  auto& bag = bags[key];
  add_checked(bag, t, delta, plan);
  if (bag.empty()) bags.erase(key);
}

const SignedBag& bag_at(const KeyedBags& bags, const Tuple& key) {
  static const SignedBag empty;
  auto it = bags.find(key);
  return it == bags.end() ? empty : it->second;
}

// -- leaves -----------------------------------------------------------------

class ScanNode : public Node {
 public:
  using Node::Node;

  std::vector<NullaryDescriptor> subscriptions() const override {
    NullaryDescriptor d;
    d.columns = plan_.flat;
    d.v = plan_.v;
    d.labels = plan_.labels;
    if (plan_.kind == OpKind::GetEdges) {
      d.kind = NullaryDescriptor::Kind::Edges;
      d.e = plan_.e;
      d.w = plan_.w;
      d.types = plan_.types;
      d.target_labels = plan_.target_labels;
      d.direction = plan_.direction;
    }
    return {d};
  }

  ChangeSet on_input(size_t, const ChangeSet& delta) override {
    ChangeSet out = delta;
    out.schema = schema_;
    return out;
  }
};

class UnitNode : public Node {
 public:
  using Node::Node;

  std::optional<ChangeSet> initial() const override {
    ChangeSet cs;
    cs.schema = schema_;
    cs.positive.push_back(Tuple{});
    return cs;
  }
  ChangeSet on_input(size_t, const ChangeSet& delta) override { return delta; }
};

// -- linear unary operators -------------------------------------------------

class SelectionNode : public Node {
 public:
  explicit SelectionNode(const PlanNode& plan) : Node(plan), cond_(plan.condition, plan.child().flat) {}

  ChangeSet on_input(size_t, const ChangeSet& delta) override {
    ChangeSet out;
    out.schema = schema_;
    for (const auto& t : delta.positive) {
      if (is_true(cond_.eval(t))) out.positive.push_back(t);
    }
    for (const auto& t : delta.negative) {
      if (is_true(cond_.eval(t))) out.negative.push_back(t);
    }
    return out;
  }

 private:
  BoundExpr cond_;
};

/// How one output column of π/γ is computed from an input row.
struct ColumnSource {
  std::optional<size_t> input;  // copied input column
  BoundExpr expr;               // otherwise evaluated
  Value get(const Tuple& row) const { return input ? row[*input] : expr.eval(row); }
};

/// Source of a carried property column "x.key" of a projection output x.
std::optional<size_t> carried_source(const PlanNode& plan, const Attribute& attr) {
  for (const auto& item : plan.items) {
    if (item.alias != attr.var || item.expr->kind != Expr::Kind::Variable) continue;
    Attribute src = attr;
    src.var = item.expr->name;
    return find_attribute(plan.child().flat, src);
  }
  return std::nullopt;
}

ColumnSource column_source(const PlanNode& plan, const Attribute& attr) {
  ColumnSource src;
  if (attr.kind == AttrKind::Variable) {
    for (const auto& item : plan.items) {
      if (item.alias == attr.var) {
        src.expr = BoundExpr(item.expr, plan.child().flat);
        return src;
      }
    }
  }
  src.input = carried_source(plan, attr);
  if (!src.input) {
    throw Error(ErrorKind::InferenceError, "cannot compute column " + attr.name() + " of " + node_label(plan));
  }
  return src;
}

class ProjectionNode : public Node {
 public:
  explicit ProjectionNode(const PlanNode& plan) : Node(plan) {
    for (const auto& a : plan.flat) columns_.push_back(column_source(plan, a));
  }

  ChangeSet on_input(size_t, const ChangeSet& delta) override {
    ChangeSet out;
    out.schema = schema_;
    for (const auto& t : delta.positive) out.positive.push_back(project(t));
    for (const auto& t : delta.negative) out.negative.push_back(project(t));
    return out;
  }

 private:
  Tuple project(const Tuple& row) const {
    Tuple t;
    t.reserve(columns_.size());
    for (const auto& c : columns_) t.push_back(c.get(row));
    return t;
  }
  std::vector<ColumnSource> columns_;
};

class UnwindNode : public Node {
 public:
  explicit UnwindNode(const PlanNode& plan) : Node(plan), expr_(plan.unwind_expr, plan.child().flat) {}

  ChangeSet on_input(size_t, const ChangeSet& delta) override {
    ChangeSet out;
    out.schema = schema_;
    for (const auto& t : delta.positive) unwind(t, out.positive);
    for (const auto& t : delta.negative) unwind(t, out.negative);
    return out;
  }

 private:
  void unwind(const Tuple& row, std::vector<Tuple>& out) const {
    Value v = expr_.eval(row);
    if (v.is_null()) return;
    auto emit = [&](const Value& item) {
      Tuple t = row;
      t.push_back(item);
      out.push_back(std::move(t));
    };
    if (v.is<Bag>()) {
      for (const auto& item : v.as<Bag>().items()) emit(item);
    } else {
      emit(v);
    }
  }
  BoundExpr expr_;
};

class UnionNode : public Node {
 public:
  using Node::Node;
  ChangeSet on_input(size_t, const ChangeSet& delta) override {
    ChangeSet out = delta;
    out.schema = schema_;
    return out;
  }
};

// -- counted operators ------------------------------------------------------

class DedupNode : public Node {
 public:
  using Node::Node;

  ChangeSet on_input(size_t, const ChangeSet& delta) override {
    SignedBag out;
    for_each_change(delta, [&](const Tuple& t, int64_t sign) {
      auto it = support_.find(t);
      const int64_t before = it == support_.end() ? 0 : it->second;
      add_checked(support_, t, sign, plan_);
      const int64_t after = before + sign;
      if (before == 0 && after > 0) bag_add(out, t, 1);
      if (before > 0 && after == 0) bag_add(out, t, -1);
    });
    return output(out, schema_);
  }

 private:
  SignedBag support_;
};

class JoinNode : public Node {
 public:
  explicit JoinNode(const PlanNode& plan) : Node(plan) {
    const auto vars = join_variables(plan);
    keys_[0] = KeyColumns(vars, plan.child(0).flat);
    keys_[1] = KeyColumns(vars, plan.child(1).flat);
    const Schema& left = plan.child(0).flat;
    const Schema& right = plan.child(1).flat;
    for (size_t i = 0; i < right.size(); ++i) {
      if (!find_attribute(left, right[i])) right_extra_.push_back(i);
    }
  }

  ChangeSet on_input(size_t port, const ChangeSet& delta) override {
    SignedBag out;
    const size_t other = 1 - port;
    for_each_change(delta, [&](const Tuple& t, int64_t sign) {
      const Tuple key = keys_[port].key(t);
      if (has_null(key)) return;
      for (const auto& [o, m] : bag_at(cache_[other], key)) {
        bag_add(out, port == 0 ? combine(t, o) : combine(o, t), sign * m);
      }
    });
    for_each_change(delta, [&](const Tuple& t, int64_t sign) {
      const Tuple key = keys_[port].key(t);
      if (!has_null(key)) keyed_add(cache_[port], key, t, sign, plan_);
    });
    return output(out, schema_);
  }

 protected:
  Tuple combine(const Tuple& left, const Tuple& right) const {
    Tuple t = left;
    for (size_t i : right_extra_) t.push_back(right[i]);
    return t;
  }
  Tuple pad(const Tuple& left) const {
    Tuple t = left;
    t.resize(left.size() + right_extra_.size());
    return t;
  }

  KeyColumns keys_[2];
  std::vector<size_t> right_extra_;
  KeyedBags cache_[2];
};

class LeftOuterJoinNode : public JoinNode {
 public:
  using JoinNode::JoinNode;

  ChangeSet on_input(size_t port, const ChangeSet& delta) override {
    SignedBag out;
    if (port == 0) {
      for_each_change(delta, [&](const Tuple& t, int64_t sign) {
        const Tuple key = keys_[0].key(t);
        const SignedBag& matches = has_null(key) ? empty_ : bag_at(cache_[1], key);
        if (matches.empty()) {
          bag_add(out, pad(t), sign);
        } else {
          for (const auto& [r, m] : matches) bag_add(out, combine(t, r), sign * m);
        }
      });
      for_each_change(delta, [&](const Tuple& t, int64_t sign) {
        const Tuple key = keys_[0].key(t);
        keyed_add(has_null(key) ? null_left_ : cache_[0], key, t, sign, plan_);
      });
      return output(out, schema_);
    }
    // Right side: recompute the output of every touched key.
    std::vector<Tuple> touched;
    for_each_change(delta, [&](const Tuple& t, int64_t) {
      const Tuple key = keys_[1].key(t);
      if (!has_null(key)) touched.push_back(key);
    });
    std::sort(touched.begin(), touched.end(), TupleLess{});
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (const auto& key : touched) emit_key(key, -1, out);
    for_each_change(delta, [&](const Tuple& t, int64_t sign) {
      const Tuple key = keys_[1].key(t);
      if (!has_null(key)) keyed_add(cache_[1], key, t, sign, plan_);
    });
    for (const auto& key : touched) emit_key(key, 1, out);
    return output(out, schema_);
  }

 private:
  void emit_key(const Tuple& key, int64_t sign, SignedBag& out) const {
    const SignedBag& left = bag_at(cache_[0], key);
    const SignedBag& right = bag_at(cache_[1], key);
    for (const auto& [l, lm] : left) {
      if (right.empty()) {
        bag_add(out, pad(l), sign * lm);
      } else {
        for (const auto& [r, rm] : right) bag_add(out, combine(l, r), sign * lm * rm);
      }
    }
  }

  KeyedBags null_left_;
  const SignedBag empty_;
};

/// Semijoin (keep = matched) and antijoin (keep = unmatched).
class ExistenceJoinNode : public Node {
 public:
  ExistenceJoinNode(const PlanNode& plan, bool semi) : Node(plan), semi_(semi) {
    const auto vars = join_variables(plan);
    keys_[0] = KeyColumns(vars, plan.child(0).flat);
    keys_[1] = KeyColumns(vars, plan.child(1).flat);
  }

  ChangeSet on_input(size_t port, const ChangeSet& delta) override {
    SignedBag out;
    if (port == 0) {
      for_each_change(delta, [&](const Tuple& t, int64_t sign) {
        const Tuple key = keys_[0].key(t);
        const bool null_key = has_null(key);
        if (keep(null_key ? 0 : count(key))) bag_add(out, t, sign);
        if (!null_key) keyed_add(left_, key, t, sign, plan_);
        else add_checked(null_left_, t, sign, plan_);
      });
      return output(out, schema_);
    }
    std::map<Tuple, int64_t, TupleLess> before;
    for_each_change(delta, [&](const Tuple& t, int64_t sign) {
      const Tuple key = keys_[1].key(t);
      if (has_null(key)) return;
      before.emplace(key, count(key));
      add_checked(right_, t, sign, plan_);
      int64_t& c = counts_[key];
      c += sign;
      if (c == 0) counts_.erase(key);
    });
    for (const auto& [key, was] : before) {
      const bool kept_before = keep(was);
      const bool kept_after = keep(count(key));
      if (kept_before == kept_after) continue;
      for (const auto& [l, m] : bag_at(left_, key)) bag_add(out, l, kept_after ? m : -m);
    }
    return output(out, schema_);
  }

 private:
  bool keep(int64_t matches) const { return semi_ ? matches > 0 : matches == 0; }
  int64_t count(const Tuple& key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }

  bool semi_;
  KeyColumns keys_[2];
  KeyedBags left_;
  SignedBag null_left_;
  SignedBag right_;
  std::unordered_map<Tuple, int64_t, TupleHash> counts_;
};

// -- grouping ---------------------------------------------------------------

struct ValueLess {
  bool operator()(const Value& a, const Value& b) const { return compare(a, b) < 0; }
};

/// State of one aggregate within one group. Non-null inputs are kept as a
/// multiset so that min/max/collect survive deletions; integer sums use a
/// wide running total so intermediate states cannot overflow.
struct AggregateState {
  std::map<Value, int64_t, ValueLess> values;
  int64_t non_null = 0;
  __int128 int_total = 0;
  size_t floats = 0;

  void add(AggregateFn fn, const Value& v, int64_t sign) {
    if (v.is_null()) return;
    if ((fn == AggregateFn::Sum || fn == AggregateFn::Avg) && !v.is_numeric()) {
      throw Error(ErrorKind::EvaluationError,
                  std::string(to_string(fn)) + "() over non-numeric value " + literal_text(v));
    }
    non_null += sign;
    if (v.is<int64_t>()) {
      int_total += static_cast<__int128>(v.as<int64_t>()) * sign;
    } else if (v.is<double>()) {
      floats = static_cast<size_t>(static_cast<int64_t>(floats) + sign);
    }
    if (fn == AggregateFn::Count) return;
    if (fn == AggregateFn::Sum || fn == AggregateFn::Avg) {
      if (!v.is<double>()) return;  // integers live in int_total only
    }
    int64_t& m = values[v];
    m += sign;
    if (m == 0) values.erase(v);
  }

  double float_sum() const {
    double s = 0.0;
    for (const auto& [v, m] : values) {
      for (int64_t i = 0; i < m; ++i) s += v.as<double>();
    }
    return s;
  }

  Value result(AggregateFn fn, int64_t rows) const {
    switch (fn) {
      case AggregateFn::Count: return Value{non_null};
      case AggregateFn::Sum:
        if (floats > 0) return Value{static_cast<double>(int_total) + float_sum()};
        if (int_total > INT64_MAX || int_total < INT64_MIN) {
          throw Error(ErrorKind::EvaluationError, "sum() overflows a 64-bit integer");
        }
        return Value{static_cast<int64_t>(int_total)};
      case AggregateFn::Avg:
        if (non_null == 0) return Value{};
        return Value{(static_cast<double>(int_total) + float_sum()) / static_cast<double>(non_null)};
      case AggregateFn::Min:
        if (values.empty()) return Value{};
        return values.begin()->first;
      case AggregateFn::Max:
        if (values.empty()) return Value{};
        return values.rbegin()->first;
      case AggregateFn::Collect: {
        std::vector<Value> items;
        for (const auto& [v, m] : values) items.insert(items.end(), static_cast<size_t>(m), v);
        return Value{Bag{std::move(items)}};
      }
    }
    (void)rows;
    return Value{};
  }
};

class GroupingNode : public Node {
 public:
  explicit GroupingNode(const PlanNode& plan) : Node(plan) {
    const Schema& in = plan.child().flat;
    for (size_t c = 0; c < plan.flat.size(); ++c) {
      const Attribute& a = plan.flat[c];
      const ProjectionItem* item = nullptr;
      if (a.kind == AttrKind::Variable) {
        for (const auto& it : plan.items) {
          if (it.alias == a.var) item = &it;
        }
      }
      if (item != nullptr && is_aggregate_item(*item)) {
        Aggregate agg;
        agg.column = c;
        agg.fn = item->expr->aggregate;
        agg.star = item->expr->star;
        if (!agg.star) agg.arg = BoundExpr(item->expr->args[0], in);
        aggregates_.push_back(std::move(agg));
      } else {
        key_columns_.push_back(c);
        key_sources_.push_back(column_source(plan, a));
      }
    }
  }

  ChangeSet on_input(size_t, const ChangeSet& delta) override {
    struct Change {
      Tuple key;
      std::vector<Value> args;
      int64_t sign;
    };
    std::vector<Change> changes;
    std::map<Tuple, std::optional<Tuple>, TupleLess> old_rows;
    for_each_change(delta, [&](const Tuple& t, int64_t sign) {
      Change ch{group_key(t), {}, sign};
      for (const auto& agg : aggregates_) ch.args.push_back(agg.star ? Value{} : agg.arg.eval(t));
      if (!old_rows.count(ch.key)) old_rows.emplace(ch.key, row(ch.key));
      changes.push_back(std::move(ch));
    });
    for (const auto& ch : changes) {
      Group& g = groups_[ch.key];
      if (g.aggs.empty()) g.aggs.resize(aggregates_.size());
      g.rows += ch.sign;
      if (g.rows < 0) inconsistent(plan_, ch.key);
      for (size_t i = 0; i < aggregates_.size(); ++i) g.aggs[i].add(aggregates_[i].fn, ch.args[i], ch.sign);
    }
    SignedBag out;
    for (const auto& [key, old] : old_rows) {
      auto it = groups_.find(key);
      if (it != groups_.end() && it->second.rows == 0) groups_.erase(it);
      std::optional<Tuple> now = row(key);
      if (old == now) continue;
      if (old) bag_add(out, *old, -1);
      if (now) bag_add(out, *now, 1);
    }
    return output(out, schema_);
  }

 private:
  struct Aggregate {
    size_t column = 0;
    AggregateFn fn = AggregateFn::Count;
    bool star = false;
    BoundExpr arg;
  };
  struct Group {
    int64_t rows = 0;
    std::vector<AggregateState> aggs;
  };

  Tuple group_key(const Tuple& t) const {
    Tuple k;
    k.reserve(key_sources_.size());
    for (const auto& s : key_sources_) k.push_back(s.get(t));
    return k;
  }

  std::optional<Tuple> row(const Tuple& key) const {
    auto it = groups_.find(key);
    if (it == groups_.end() || it->second.rows == 0) return std::nullopt;
    Tuple r(plan_.flat.size());
    for (size_t i = 0; i < key_columns_.size(); ++i) r[key_columns_[i]] = key[i];
    for (size_t i = 0; i < aggregates_.size(); ++i) {
      const auto& agg = aggregates_[i];
      r[agg.column] = agg.star ? Value{it->second.rows}
                               : it->second.aggs[i].result(agg.fn, it->second.rows);
    }
    return r;
  }

  std::vector<size_t> key_columns_;
  std::vector<ColumnSource> key_sources_;
  std::vector<Aggregate> aggregates_;
  std::map<Tuple, Group, TupleLess> groups_;
};

// -- sort and top -----------------------------------------------------------

class SortAndTopNode : public Node {
 public:
  explicit SortAndTopNode(const PlanNode& plan)
      : Node(plan), entries_(SortEntryLess{descending(plan)}) {
    for (const auto& k : plan.keys) keys_.emplace_back(k.expr, plan.child().flat);
  }

  ChangeSet on_input(size_t, const ChangeSet& delta) override {
    const bool windowed = plan_.skip > 0 || plan_.limit.has_value();
    SignedBag before = windowed ? window_bag() : SignedBag{};
    for_each_change(delta, [&](const Tuple& t, int64_t sign) {
      SortEntry e{sort_keys(t), t};
      auto it = entries_.find(e);
      const int64_t now = (it == entries_.end() ? 0 : it->second) + sign;
      if (now < 0) inconsistent(plan_, t);
      if (now == 0) {
        entries_.erase(it);
      } else if (it == entries_.end()) {
        entries_.emplace(std::move(e), now);
      } else {
        it->second = now;
      }
    });
    if (!windowed) {
      ChangeSet out = consolidate(delta);
      out.schema = schema_;
      return out;
    }
    SignedBag diff = window_bag();
    for (const auto& [t, m] : before) bag_add(diff, t, -m);
    return output(diff, schema_);
  }

  std::optional<std::vector<Tuple>> ordered_output() const override { return window(); }

 private:
  static std::vector<bool> descending(const PlanNode& plan) {
    std::vector<bool> d;
    for (const auto& k : plan.keys) d.push_back(k.descending);
    return d;
  }

  Tuple sort_keys(const Tuple& t) const {
    Tuple k;
    for (const auto& e : keys_) k.push_back(e.eval(t));
    return k;
  }

  std::vector<Tuple> window() const {
    std::vector<Tuple> out;
    int64_t skip = plan_.skip;
    const int64_t limit = plan_.limit.value_or(INT64_MAX);
    for (const auto& [e, m] : entries_) {
      for (int64_t i = 0; i < m; ++i) {
        if (static_cast<int64_t>(out.size()) >= limit) return out;
        if (skip > 0) {
          --skip;
          continue;
        }
        out.push_back(e.row);
      }
    }
    return out;
  }

  SignedBag window_bag() const {
    SignedBag b;
    for (const auto& t : window()) bag_add(b, t, 1);
    return b;
  }

  std::vector<BoundExpr> keys_;
  std::map<SortEntry, int64_t, SortEntryLess> entries_;
};

}  // namespace

std::unique_ptr<Node> make_node(const PlanNode& plan, const EngineConfig& config) {
  switch (plan.kind) {
    case OpKind::GetVertices:
    case OpKind::GetEdges: return std::make_unique<ScanNode>(plan);
    case OpKind::TransitiveGetEdges: return make_transitive_node(plan, config);
    case OpKind::SingletonUnit: return std::make_unique<UnitNode>(plan);
    case OpKind::Selection: return std::make_unique<SelectionNode>(plan);
    case OpKind::Projection: return std::make_unique<ProjectionNode>(plan);
    case OpKind::Unwind: return std::make_unique<UnwindNode>(plan);
    case OpKind::Union: return std::make_unique<UnionNode>(plan);
    case OpKind::DedupAll: return std::make_unique<DedupNode>(plan);
    case OpKind::NaturalJoin: return std::make_unique<JoinNode>(plan);
    case OpKind::LeftOuterJoin: return std::make_unique<LeftOuterJoinNode>(plan);
    case OpKind::Semijoin: return std::make_unique<ExistenceJoinNode>(plan, true);
    case OpKind::Antijoin: return std::make_unique<ExistenceJoinNode>(plan, false);
    case OpKind::Grouping: return std::make_unique<GroupingNode>(plan);
    case OpKind::SortAndTop: return std::make_unique<SortAndTopNode>(plan);
    case OpKind::Expand:
    case OpKind::TransitiveExpand: break;
  }
  throw Error(ErrorKind::InferenceError,
              std::string(to_string(plan.kind)) + " cannot be evaluated; lower the plan first");
}

}  // namespace graphivm::rete
