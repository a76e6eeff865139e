#include <gtest/gtest.h>

#include <set>

#include "bruhatspec/bruhat.hpp"
#include "bruhatspec/error.hpp"
#include "oracles.hpp"

using namespace bruhatspec;

namespace {

CoxeterMatrix A(int n) { return builtin_matrix(CoxeterFamily::A, n); }

std::set<std::size_t> indices_of(const BruhatInterval& iv, const std::vector<Word>& words) {
  std::set<std::size_t> out;
  for (const auto& w : words) out.insert(iv.index_of(element_from_word(iv.base.coxeter(), w)));
  return out;
}

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(BruhatLeq, Examples) {
  const auto m2 = A(2);
  for (const auto& v : elements_up_to_length(m2, 3)) EXPECT_TRUE(bruhat_leq(identity(m2), v));
  EXPECT_FALSE(bruhat_leq(element_from_word(m2, {1}), element_from_word(m2, {2})));
  const auto m3 = A(3);
  EXPECT_TRUE(bruhat_leq(element_from_word(m3, {1, 3}), element_from_word(m3, {2, 1, 3, 2})));
  EXPECT_THROW(bruhat_leq(identity(m2), identity(m3)), InputError);
}

// All 576 ordered pairs of S_4 against two independent characterizations.
TEST(BruhatLeq, AgreesWithPermutationOracles) {
  const auto m = A(3);
  const auto all = elements_up_to_length(m, 6);
  ASSERT_EQ(all.size(), 24u);
  for (const auto& u : all)
    for (const auto& v : all) {
      const auto pu = oracle::perm_from_word(3, u.canonical_word());
      const auto pv = oracle::perm_from_word(3, v.canonical_word());
      const bool expected = oracle::subword_leq(pu, pv);
      ASSERT_EQ(expected, oracle::tableau_leq(pu, pv));
      EXPECT_EQ(bruhat_leq(u, v), expected) << word_label(u.canonical_word()) << " vs "
                                            << word_label(v.canonical_word());
    }
}

TEST(BruhatLeq, AgreesWithSubwordOracleInOtherTypes) {
  for (const char* name : {"D4", "affineA2"}) {
    const auto m = matrix_by_name(name);
    const auto all = elements_up_to_length(m, 4);
    for (const auto& v : all)
      for (const auto& u : all)
        EXPECT_EQ(bruhat_leq(u, v), oracle::subword_leq(m, u.canonical_word(), v.canonical_word()))
            << name << " " << word_label(u.canonical_word()) << " vs " << word_label(v.canonical_word());
  }
}

TEST(Interval, A2Diamond) {
  const auto iv = interval(A(2), {1, 2});
  ASSERT_EQ(iv.size(), 4u);
  EXPECT_EQ(iv.poset.labels(), (std::vector<std::string>{"e", "s1", "s2", "s1s2"}));
  EXPECT_TRUE(iv.poset.less(0, 1));
  EXPECT_TRUE(iv.poset.less(0, 2));
  EXPECT_FALSE(iv.poset.comparable(1, 2));
  EXPECT_TRUE(iv.poset.less(1, 3));
  EXPECT_TRUE(iv.poset.less(2, 3));
}

TEST(Interval, WeylTwentyElements) {
  const auto iv = interval(A(3), {3, 2, 1, 2, 3});
  EXPECT_EQ(iv.size(), 20u);
  EXPECT_EQ(rank_profile(iv.poset), (std::vector<int>{1, 3, 5, 6, 4, 1}));
}

TEST(Interval, FourteenElements) { EXPECT_EQ(interval(A(3), {2, 1, 3, 2}).size(), 14u); }

TEST(Interval, RejectsNonReduced) {
  EXPECT_THROW(interval(A(2), {1, 2, 1, 2}), InputError);
  EXPECT_THROW(interval(A(2), {1, 4}), InputError);
}

TEST(Interval, OrderingConventions) {
  const auto iv = interval(A(3), {2, 1, 3, 2});
  EXPECT_TRUE(iv.elements.front().is_identity());
  EXPECT_EQ(iv.elements.back(), iv.base);
  for (std::size_t i = 0; i < iv.size(); ++i) {
    EXPECT_EQ(iv.poset.label(i), word_label(iv.elements[i].canonical_word()));
    EXPECT_EQ((*iv.poset.rank())[i], iv.elements[i].length());
    EXPECT_EQ(iv.index_of(iv.elements[i]), i);
  }
  EXPECT_FALSE(iv.contains(element_from_word(A(3), {3, 2, 1})));
  EXPECT_THROW(iv.index_of(element_from_word(A(3), {3, 2, 1})), Error);
}

// Sizes, rank profiles and the order itself match subword enumeration.
TEST(IntervalProperty, MatchesSubwordOracle) {
  for (const char* name : {"A3", "D4", "affineA2"}) {
    const auto m = matrix_by_name(name);
    for (const auto& w : elements_up_to_length(m, 5)) {
      const auto& word = w.canonical_word();
      const auto iv = interval(m, word);
      EXPECT_EQ(iv.size(), oracle::subword_interval_size(m, word)) << name << " " << word_label(word);
      EXPECT_EQ(rank_profile(iv.poset), oracle::subword_rank_profile(m, word));
    }
  }
}

TEST(IntervalProperty, GradedByLength) {
  const auto iv = interval(matrix_by_name("D4"), {4, 3, 2, 1, 3, 4});
  EXPECT_EQ(iv.size(), 48u);
  const auto r = graded_rank(iv.poset);
  ASSERT_TRUE(r.has_value());
  for (std::size_t i = 0; i < iv.size(); ++i) EXPECT_EQ((*r)[i], iv.elements[i].length());
}

TEST(Partition, QuantumMatrixExample) {
  const auto p = partition(A(3), {2, 1, 3}, 2);
  EXPECT_EQ(as_set(p.W2), indices_of(p.upper, {{}}));
  EXPECT_EQ(as_set(p.W1), indices_of(p.upper, {{2}}));
  EXPECT_EQ(p.W3.size(), 6u);
  EXPECT_EQ(p.lower.size(), 8u);
  std::set<std::size_t> w4;
  for (auto i : p.W3) w4.insert(p.times_a[i]);
  EXPECT_EQ(as_set(p.W4), w4);
  EXPECT_TRUE(is_upper_set(p.lower.poset, [&] {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.lower.size(); ++i)
      if (p.block[p.lower_to_upper[i]] == 3) out.push_back(i);
    return out;
  }()));
}

TEST(Partition, GeneratorNotBelow) {
  const auto p = partition(A(2), {1}, 2);
  EXPECT_TRUE(p.W1.empty());
  EXPECT_TRUE(p.W2.empty());
  EXPECT_EQ(as_set(p.W3), indices_of(p.upper, {{}, {1}}));
  EXPECT_EQ(as_set(p.W4), indices_of(p.upper, {{2}, {1, 2}}));
}

TEST(Partition, EighteenElementExample) {
  const auto p = partition(A(3), {2, 1, 3, 2}, 1);
  EXPECT_EQ(p.upper.size(), 18u);
  EXPECT_EQ(as_set(p.W2), indices_of(p.upper, {{}, {2}, {3}, {2, 3}, {1, 2}}));
  EXPECT_EQ(as_set(p.W1), indices_of(p.upper, {{1}, {2, 1}, {1, 3}, {2, 1, 3}, {2, 1, 2}}));
  std::vector<std::size_t> lower_w3;
  for (std::size_t i = 0; i < p.lower.size(); ++i)
    if (p.block[p.lower_to_upper[i]] == 3) lower_w3.push_back(i);
  const auto gen = p.lower.index_of(element_from_word(A(3), {3, 2}));
  EXPECT_EQ(lower_w3, upper_set_generated_by(p.lower.poset, {gen}));
}

TEST(Partition, Errors) {
  EXPECT_THROW(partition(A(3), {2, 1, 3}, 3), HypothesisError);
  EXPECT_THROW(partition(A(3), {1, 1}, 2), InputError);
  EXPECT_THROW(partition(A(3), {1}, 5), InputError);
}

TEST(Partition, TagsAndBlocks) {
  const auto p = partition(A(3), {2, 1, 3}, 2);
  const auto tags = p.tagged_poset().tags();
  ASSERT_EQ(tags.size(), p.upper.size());
  for (int b = 1; b <= 4; ++b)
    for (auto i : p.W(b)) {
      EXPECT_EQ(p.block[i], b);
      EXPECT_EQ(tags[i], "W" + std::to_string(b));
    }
}

// Every partition law holds for every valid (wbar, a) up to a length bound.
TEST(PartitionProperty, LawsHoldEverywhere) {
  for (const auto& [name, bound] : std::vector<std::pair<const char*, int>>{{"A3", 5}, {"D4", 4}, {"affineA2", 4}}) {
    const auto m = matrix_by_name(name);
    std::size_t checked = 0;
    for (const auto& w : elements_up_to_length(m, bound))
      for (int a = 1; a <= m.rank(); ++a) {
        if (w.right_descent(a)) continue;
        const auto p = partition(m, w.canonical_word(), a);
        EXPECT_TRUE(partition_law_violations(p).empty());
        EXPECT_EQ(p.W1.size() + p.W2.size() + p.W3.size() + p.W4.size(), p.upper.size());
        EXPECT_EQ(p.W1.size() + p.W2.size() + p.W3.size(), p.lower.size());
        ++checked;
      }
    EXPECT_GT(checked, 0u) << name;
  }
}

// Membership in the blocks recomputed straight from the definitions.
TEST(PartitionProperty, BlocksMatchDefinitions) {
  const auto m = A(3);
  for (const auto& w : elements_up_to_length(m, 4))
    for (int a = 1; a <= 3; ++a) {
      if (w.right_descent(a)) continue;
      const auto p = partition(m, w.canonical_word(), a);
      for (std::size_t i = 0; i < p.upper.size(); ++i) {
        const auto& x = p.upper.elements[i];
        const auto xa = x.times_generator(a);
        const bool below = bruhat_leq(x, w);
        int expected = 0;
        if (below && xa.length() < x.length()) expected = 1;
        else if (xa.length() > x.length() && bruhat_leq(xa, w)) expected = 2;
        else if (below) expected = 3;
        else expected = 4;
        EXPECT_EQ(p.block[i], expected);
      }
    }
}

TEST(Phi, Examples) {
  const auto m = A(3);
  const auto p = partition(m, {2, 1, 3, 2}, 1);
  const auto f = phi(p.upper, 1);
  EXPECT_EQ(f[0], 0u);
  const auto s1 = p.upper.index_of(element_from_word(m, {1}));
  EXPECT_EQ(f[s1], 0u);
  const auto top = p.upper.index_of(element_from_word(m, {2, 1, 3, 2, 1}));
  EXPECT_EQ(f[top], p.upper.index_of(element_from_word(m, {2, 1, 3, 2})));
}

TEST(PhiProperty, ProjectionOntoAscents) {
  const auto m = matrix_by_name("affineA2");
  for (const auto& w : elements_up_to_length(m, 4))
    for (int a = 1; a <= 3; ++a) {
      if (w.right_descent(a)) continue;
      const auto p = partition(m, w.canonical_word(), a);
      const auto f = phi(p.upper, a);
      std::vector<int> fibre(p.upper.size(), 0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_EQ(f[f[i]], f[i]);
        EXPECT_TRUE(p.block[f[i]] == 2 || p.block[f[i]] == 3);
        ++fibre[f[i]];
        for (std::size_t j = 0; j < f.size(); ++j)
          if (p.upper.poset.leq(i, j)) {
            EXPECT_TRUE(p.upper.poset.leq(f[i], f[j]));
          }
      }
      for (std::size_t i = 0; i < f.size(); ++i)
        EXPECT_EQ(fibre[i], (p.block[i] == 2 || p.block[i] == 3) ? 2 : 0);
    }
}

TEST(Decomposable, Examples) {
  const auto d1 = is_decomposable(A(3), {1, 3});
  ASSERT_TRUE(d1.has_value());
  EXPECT_EQ(d1->first, (Word{1}));
  EXPECT_EQ(d1->second, (Word{3}));
  const auto d2 = is_decomposable(A(2), {1, 2});
  ASSERT_TRUE(d2.has_value());
  EXPECT_EQ(*d2, std::make_pair(Word{1}, Word{2}));
  EXPECT_FALSE(is_decomposable(A(2), {2, 1, 2}).has_value());
  EXPECT_FALSE(is_decomposable(A(2), {1}).has_value());
  EXPECT_THROW(is_decomposable(A(2), {1, 1}), InputError);
}

// A decomposable w gives [1, w] ≅ [1, u] × [1, v].
TEST(DecomposableProperty, IntervalSplitsAsProduct) {
  const auto m = A(3);
  std::size_t found = 0;
  for (const auto& w : elements_up_to_length(m, 4)) {
    const auto d = is_decomposable(m, w.canonical_word());
    if (!d) continue;
    ++found;
    EXPECT_EQ(multiply(element_from_word(m, d->first), element_from_word(m, d->second)), w);
    EXPECT_TRUE(isomorphic(interval(m, w.canonical_word()).poset,
                           product(interval(m, d->first).poset, interval(m, d->second).poset)));
  }
  EXPECT_GT(found, 0u);
}

TEST(Lifting, Examples) {
  EXPECT_TRUE(check_lifting(A(2), 3).passed);
  const auto r = check_lifting(A(3), 4);
  EXPECT_TRUE(r.passed) << r.counterexample;
  EXPECT_GT(r.instances, 0u);
  EXPECT_TRUE(check_lifting(matrix_by_name("affineA2"), 4).passed);
}
