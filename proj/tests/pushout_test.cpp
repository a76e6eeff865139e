#include <gtest/gtest.h>

#include "bruhatspec/error.hpp"
#include "bruhatspec/pushout.hpp"

using namespace bruhatspec;

TEST(PushoutSquare, TimesTwoInA2) {
  const auto r = pushout_square(matrix_by_name("A2"), {1}, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.size_d, 4u);
  const auto m = matrix_by_name("A2");
  EXPECT_TRUE(isomorphic(interval(m, {1, 2}).poset, product(interval(m, {1}).poset, two_chain())));
}

TEST(PushoutSquare, QuantumMatrixData) {
  const auto r = pushout_square(matrix_by_name("A3"), {2, 1, 3}, 2);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
  EXPECT_EQ(r.size_d, 14u);
  EXPECT_EQ(r.size_b, 8u);
  EXPECT_EQ(r.size_a, 8u);
  EXPECT_EQ(r.size_c, 14u);
}

TEST(PushoutSquare, EighteenElements) {
  const auto r = pushout_square(matrix_by_name("A3"), {2, 1, 3, 2}, 1);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
  EXPECT_EQ(r.size_d, 18u);
}

TEST(PushoutSquare, Preconditions) {
  EXPECT_THROW(pushout_square(matrix_by_name("A3"), {2, 1, 3}, 1), HypothesisError);
  EXPECT_THROW(pushout_square(matrix_by_name("A3"), {2, 2}, 1), InputError);
}

TEST(PushoutSquare, MapsHaveTheStatedShape) {
  const auto part = partition(matrix_by_name("A3"), {2, 1, 3, 2}, 1);
  const auto sq = build_pushout_square(part);
  EXPECT_EQ(sq.a.size(), part.W3.size() + 2 * part.W2.size());
  EXPECT_EQ(sq.c.size(), 2 * (part.W2.size() + part.W3.size()));
  EXPECT_EQ(sq.b.size(), part.lower.size());
  EXPECT_EQ(sq.d.size(), part.upper.size());
  EXPECT_TRUE(sq.nu1.bijective());
  EXPECT_TRUE(sq.nu2.injective());
  EXPECT_TRUE(sq.top.bijective());
  for (std::size_t x = 0; x < sq.a.size(); ++x) EXPECT_EQ(sq.top(sq.nu2(x)), sq.incl(sq.nu1(x)));
  for (std::size_t y = 0; y < sq.d.size(); ++y) EXPECT_EQ(sq.top(sq.top_inverse[y]), y);
}

TEST(PushoutSquare, JsonReport) {
  const auto j = pushout_square(matrix_by_name("A3"), {2, 1, 3}, 2).to_json();
  EXPECT_EQ(j["wbar"], "s2s1s3");
  EXPECT_EQ(j["a"], 2);
  EXPECT_EQ(j["passed"], true);
  EXPECT_TRUE(j["failures"].empty());
}

// A block assignment that breaks the square is caught.
TEST(PushoutSquare, DetectsCorruptedPartition) {
  auto part = partition(matrix_by_name("A3"), {2, 1, 3}, 2);
  ASSERT_FALSE(part.W3.empty());
  const auto moved = part.W3.back();
  part.W3.pop_back();
  part.W2.push_back(moved);
  part.block[moved] = 2;
  EXPECT_FALSE(check_pushout_square(part).passed());
}

TEST(PushoutSquareProperty, HoldsForEveryValidPair) {
  for (const auto& [name, bound] : std::vector<std::pair<const char*, int>>{{"A3", 5}, {"D4", 3}, {"affineA2", 4}}) {
    const auto m = matrix_by_name(name);
    for (const auto& w : elements_up_to_length(m, bound))
      for (int a = 1; a <= m.rank(); ++a) {
        if (w.right_descent(a)) continue;
        const auto r = pushout_square(m, w.canonical_word(), a);
        EXPECT_TRUE(r.passed()) << name << " " << r.to_json().dump();
      }
  }
}

// When s_a is not below wbar, [1, wbar a] ≅ [1, wbar] × 2.
TEST(PushoutSquareProperty, TimesTwoWhenGeneratorAbsent) {
  for (const char* name : {"A3", "D4", "affineA2"}) {
    const auto m = matrix_by_name(name);
    for (const auto& w : elements_up_to_length(m, 4))
      for (int a = 1; a <= m.rank(); ++a) {
        if (bruhat_leq(element_from_word(m, {a}), w)) continue;
        const auto p = partition(m, w.canonical_word(), a);
        EXPECT_TRUE(p.W1.empty() && p.W2.empty());
        EXPECT_TRUE(isomorphic(p.upper.poset, product(p.lower.poset, two_chain())));
      }
  }
}
