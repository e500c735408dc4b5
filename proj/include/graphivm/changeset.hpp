#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphivm/schema.hpp"
#include "graphivm/value.hpp"

namespace graphivm {

/// Insertions (positive) and deletions (negative) of tuples over one schema.
/// Both sides are bags: a tuple may repeat.
struct ChangeSet {
  SchemaPtr schema;
  std::vector<Tuple> positive;
  std::vector<Tuple> negative;

  bool empty() const { return positive.empty() && negative.empty(); }
  size_t size() const { return positive.size() + negative.size(); }
};

/// Tuple -> signed multiplicity.
using SignedBag = std::unordered_map<Tuple, int64_t, TupleHash>;

/// Net signed multiplicities of a change set.
SignedBag net_changes(const ChangeSet& cs);

/// Expands a signed bag back into a change set (zero entries dropped,
/// tuples emitted in canonical order).
ChangeSet to_changeset(const SignedBag& bag, SchemaPtr schema);

/// Cancels tuples that occur on both sides.
ChangeSet consolidate(const ChangeSet& cs);

/// Adds `sign * multiplicity` to bag[t], erasing the entry when it reaches zero.
void bag_add(SignedBag& bag, const Tuple& t, int64_t delta);

/// Applies a change set to a multiplicity bag. Returns false if some
/// retraction would drive a multiplicity below zero (bag left unchanged).
bool apply_to_bag(SignedBag& bag, const ChangeSet& cs);

/// Bag contents as a sorted tuple list (multiplicities expanded).
std::vector<Tuple> bag_rows(const SignedBag& bag);

}  // namespace graphivm
