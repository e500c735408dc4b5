#include "graphivm/changeset.hpp"

#include <algorithm>

namespace graphivm {

void bag_add(SignedBag& bag, const Tuple& t, int64_t delta) {
  if (delta == 0) return;
  auto [it, inserted] = bag.try_emplace(t, 0);
  it->second += delta;
  if (it->second == 0) bag.erase(it);
}

SignedBag net_changes(const ChangeSet& cs) {
  SignedBag bag;
  for (const auto& t : cs.positive) bag_add(bag, t, 1);
  for (const auto& t : cs.negative) bag_add(bag, t, -1);
  return bag;
}

ChangeSet to_changeset(const SignedBag& bag, SchemaPtr schema) {
  std::vector<std::pair<Tuple, int64_t>> entries(bag.begin(), bag.end());
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return TupleLess{}(a.first, b.first); });
  ChangeSet out;
  out.schema = std::move(schema);
  for (const auto& [t, m] : entries) {
    auto& side = m > 0 ? out.positive : out.negative;
    for (int64_t i = 0; i < (m > 0 ? m : -m); ++i) side.push_back(t);
  }
  return out;
}

ChangeSet consolidate(const ChangeSet& cs) { return to_changeset(net_changes(cs), cs.schema); }

bool apply_to_bag(SignedBag& bag, const ChangeSet& cs) {
  const SignedBag net = net_changes(cs);
  for (const auto& [t, m] : net) {
    if (m >= 0) continue;
    auto it = bag.find(t);
    if (it == bag.end() || it->second + m < 0) return false;
  }
  for (const auto& [t, m] : net) bag_add(bag, t, m);
  return true;
}

std::vector<Tuple> bag_rows(const SignedBag& bag) {
  std::vector<Tuple> rows;
  for (const auto& [t, m] : bag) {
    for (int64_t i = 0; i < m; ++i) rows.push_back(t);
  }
  std::sort(rows.begin(), rows.end(), TupleLess{});
  return rows;
}

}  // namespace graphivm
