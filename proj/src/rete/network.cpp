#include "graphivm/rete/network.hpp"

#include <map>

#include "graphivm/rete/nodes.hpp"

namespace graphivm::rete {

Network::Network(PlanNode fra, PropertyGraph& graph, EngineConfig config)
    : plan_(std::move(fra)), graph_(&graph), config_(config) {
  if (!plan_.has_flat) {
    throw Error(ErrorKind::InferenceError, "the network needs a plan with flat schemas");
  }
  build(plan_, std::nullopt, 0);
  for (const auto& a : plan_.nested) output_columns_.push_back(*find_attribute(plan_.flat, a));
  output_schema_ = std::make_shared<const Schema>(plan_.nested);
}

Network::~Network() { detach(); }

size_t Network::build(const PlanNode& plan, std::optional<size_t> parent, size_t port) {
  const size_t id = nodes_.size();
  nodes_.push_back(make_node(plan, config_));
  node_plans_.push_back(&plan);
  parents_.push_back(parent);
  parent_ports_.push_back(port);
  outputs_.emplace_back();
  for (size_t i = 0; i < plan.children.size(); ++i) build(plan.children[i], id, i);
  return id;
}

const PlanNode& Network::node_plan(size_t i) const { return *node_plans_.at(i); }
const SignedBag& Network::node_output(size_t i) const { return outputs_.at(i); }

void Network::detach() {
  for (const auto& [sub, target] : routes_) graph_->unsubscribe(sub);
  routes_.clear();
}

ChangeSet Network::initialize() {
  if (initialized_) throw Error(ErrorKind::InconsistentRetraction, "network initialized twice");
  initialized_ = true;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const auto descriptors = nodes_[i]->subscriptions();
    for (size_t port = 0; port < descriptors.size(); ++port) {
      auto [sub, scan] = graph_->subscribe(descriptors[port]);
      routes_.push_back({sub, {i, port}});
      if (!scan.empty()) queue_.push_back({i, port, std::move(scan)});
    }
    if (auto init = nodes_[i]->initial()) queue_.push_back({i, 0, std::move(*init)});
  }
  SignedBag sink;
  run(sink);
  return sink_delta(sink);
}

ChangeSet Network::propagate(const std::vector<Notification>& notifications, bool coalesce) {
  std::map<SubscriptionId, std::pair<size_t, size_t>> routes(routes_.begin(), routes_.end());
  if (coalesce) {
    std::map<SubscriptionId, ChangeSet> merged;
    for (const auto& n : notifications) {
      if (!routes.count(n.subscription)) continue;
      ChangeSet& cs = merged[n.subscription];
      cs.schema = n.changes.schema;
      cs.positive.insert(cs.positive.end(), n.changes.positive.begin(), n.changes.positive.end());
      cs.negative.insert(cs.negative.end(), n.changes.negative.begin(), n.changes.negative.end());
    }
    for (auto& [sub, cs] : merged) {
      ChangeSet net = consolidate(cs);
      if (net.empty()) continue;
      const auto [node, port] = routes.at(sub);
      queue_.push_back({node, port, std::move(net)});
    }
  } else {
    for (const auto& n : notifications) {
      auto it = routes.find(n.subscription);
      if (it == routes.end() || n.changes.empty()) continue;
      queue_.push_back({it->second.first, it->second.second, n.changes});
    }
  }
  SignedBag sink;
  run(sink);
  return sink_delta(sink);
}

void Network::run(SignedBag& sink) {
  while (!queue_.empty()) {
    Message msg = std::move(queue_.front());
    queue_.pop_front();
    ChangeSet out;
    try {
      out = nodes_[msg.node]->on_input(msg.port, msg.changes);
    } catch (...) {
      queue_.clear();
      throw;
    }
    if (out.empty()) continue;
    if (!apply_to_bag(outputs_[msg.node], out)) {
      queue_.clear();
      throw Error(ErrorKind::InconsistentRetraction,
                  node_label(*node_plans_[msg.node]) + " retracted a tuple it never produced");
    }
    if (const auto parent = parents_[msg.node]) {
      queue_.push_back({*parent, parent_ports_[msg.node], std::move(out)});
    } else {
      for (const auto& t : out.negative) bag_add(sink, t, -1);
      for (const auto& t : out.positive) bag_add(sink, t, 1);
    }
  }
}

ChangeSet Network::sink_delta(const SignedBag& sink) const {
  SignedBag projected;
  for (const auto& [t, m] : sink) {
    Tuple row;
    row.reserve(output_columns_.size());
    for (size_t c : output_columns_) row.push_back(t[c]);
    bag_add(projected, row, m);
  }
  return to_changeset(projected, output_schema_);
}

SignedBag Network::result_bag() const {
  SignedBag out;
  for (const auto& [t, m] : outputs_.front()) {
    Tuple row;
    for (size_t c : output_columns_) row.push_back(t[c]);
    bag_add(out, row, m);
  }
  return out;
}

std::vector<Tuple> Network::read_results() const {
  auto ordered = nodes_.front()->ordered_output();
  if (!ordered) return bag_rows(result_bag());
  std::vector<Tuple> rows;
  rows.reserve(ordered->size());
  for (const auto& t : *ordered) {
    Tuple row;
    row.reserve(output_columns_.size());
    for (size_t c : output_columns_) row.push_back(t[c]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace graphivm::rete
