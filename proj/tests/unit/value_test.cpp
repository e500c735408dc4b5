#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "graphivm/changeset.hpp"
#include "graphivm/error.hpp"
#include "graphivm/value.hpp"

namespace graphivm {
namespace {

std::vector<Value> one_of_each() {
  return {Value{true}, Value{int64_t{3}}, Value{"s"}, Value{Bag{{Value{1}}}}, Value{Path{{1, 2}}},
          Value{VertexRef{0}}, Value{EdgeRef{0}}, Value{Null{}}};
}

TEST(ValueOrder, KindsFollowTheTotalOrder) {
  const auto xs = one_of_each();
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    EXPECT_TRUE(xs[i] < xs[i + 1]) << display(xs[i]) << " vs " << display(xs[i + 1]);
  }
}

TEST(ValueOrder, NumbersCompareAcrossRepresentations) {
  EXPECT_TRUE(Value{1} < Value{1.5});
  EXPECT_TRUE(Value{-2.5} < Value{-2});
  // Equal magnitude: the integer sorts first and the two are distinct.
  EXPECT_TRUE(Value{2} < Value{2.0});
  EXPECT_FALSE(Value{2} == Value{2.0});
  EXPECT_TRUE(Value{false} < Value{true});
}

TEST(ValueOrder, NullEqualsNullForIdentity) { EXPECT_EQ(Value{Null{}}, Value{}); }

TEST(ValueOrder, RandomSortsAreConsistent) {
  std::mt19937_64 rng(3);
  std::vector<Value> pool = one_of_each();
  for (int i = -3; i <= 3; ++i) {
    pool.emplace_back(i);
    pool.emplace_back(i * 0.5);
    pool.emplace_back(std::string(1, static_cast<char>('a' + i + 3)));
  }
  for (int round = 0; round < 50; ++round) {
    std::shuffle(pool.begin(), pool.end(), rng);
    const Value& a = pool[0];
    const Value& b = pool[1];
    const Value& c = pool[2];
    // Antisymmetry and transitivity.
    EXPECT_EQ(a < b, compare(b, a) == std::strong_ordering::greater);
    if (a < b && b < c) EXPECT_TRUE(a < c);
    if (a == b) EXPECT_EQ(hash_value(a), hash_value(b));
  }
}

TEST(BagValue, EqualityIgnoresInsertionOrder) {
  Bag x({Value{"fr"}, Value{"en"}, Value{"en"}});
  Bag y({Value{"en"}, Value{"fr"}, Value{"en"}});
  Bag z({Value{"en"}, Value{"fr"}});
  EXPECT_EQ(x, y);
  EXPECT_FALSE(x == z);
}

TEST(ValueDisplay, RendersEveryKind) {
  EXPECT_EQ(display(Value{"Alice"}), "Alice");
  EXPECT_EQ(display(Value{}), "null");
  EXPECT_EQ(display(Value{Path{{4, 5}}}), "[#4, #5]");
  EXPECT_EQ(display(Value{VertexRef{7}}), "#7");
  EXPECT_EQ(literal_text(Value{"it's"}), "'it\\'s'");
  EXPECT_EQ(display(Value{Bag{{Value{"fr"}, Value{"en"}}}}), "{en, fr}");
}

TEST(ChangeSetOps, ConsolidateCancelsOppositeCopies) {
  ChangeSet cs;
  cs.positive = {{Value{1}}, {Value{1}}, {Value{2}}};
  cs.negative = {{Value{1}}, {Value{3}}};
  const ChangeSet c = consolidate(cs);
  EXPECT_EQ(c.positive, (std::vector<Tuple>{{Value{1}}, {Value{2}}}));
  EXPECT_EQ(c.negative, (std::vector<Tuple>{{Value{3}}}));
}

TEST(ChangeSetOps, ApplyRejectsOverRetraction) {
  SignedBag bag;
  ChangeSet add;
  add.positive = {{Value{"a"}}};
  ASSERT_TRUE(apply_to_bag(bag, add));
  ChangeSet twice;
  twice.negative = {{Value{"a"}}, {Value{"a"}}};
  EXPECT_FALSE(apply_to_bag(bag, twice));
  EXPECT_EQ(bag_rows(bag).size(), 1u);
}

TEST(ErrorText, DiagnosticCarriesPosition) {
  Error e(ErrorKind::SyntaxError, "boom", {2, 5});
  EXPECT_EQ(e.diagnostic(), "2:5: SyntaxError: boom");
  EXPECT_TRUE(is_internal(ErrorKind::InconsistentRetraction));
  EXPECT_FALSE(is_internal(ErrorKind::UnknownId));
}

}  // namespace
}  // namespace graphivm
