#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "bruhatspec/bruhat.hpp"
#include "bruhatspec/error.hpp"
#include "bruhatspec/poset.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace bruhatspec;

namespace {

LabeledPoset diamond() { return LabeledPoset::build({"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

// Random poset: relations only from lower to higher index, so always acyclic.
LabeledPoset random_poset(std::mt19937& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<std::string> labels;
  std::vector<Edge> rel;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("v" + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j)
      if (coin(rng)) rel.emplace_back(j, i);
  }
  return LabeledPoset::build(labels, rel);
}

}  // namespace

TEST(Build, Examples) {
  const auto one = LabeledPoset::build({"x"}, {});
  EXPECT_EQ(one.size(), 1u);
  EXPECT_TRUE(one.hasse().empty());
  const auto two = LabeledPoset::build({"a", "b"}, {{0, 1}});
  EXPECT_TRUE(two.less(0, 1));
  EXPECT_EQ(two.hasse(), (std::vector<Edge>{{0, 1}}));
  EXPECT_THROW(LabeledPoset::build({"a", "b"}, {{0, 1}, {1, 0}}), InputError);
}

TEST(Build, ClosureAndCovers) {
  const auto c = LabeledPoset::build({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_TRUE(c.leq(0, 2));
  EXPECT_EQ(c.hasse(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(c.covers(0, 1));
  EXPECT_FALSE(c.covers(0, 2));
  EXPECT_EQ(c.upper_covers(0), (std::vector<std::size_t>{1}));
  EXPECT_EQ(c.lower_covers(2), (std::vector<std::size_t>{1}));
}

TEST(Rank, AttachAndDerive) {
  const auto d = diamond();
  EXPECT_EQ(graded_rank(d), (std::vector<int>{0, 1, 1, 2}));
  EXPECT_EQ(height(d), 2);
  EXPECT_EQ(rank_profile(d), (std::vector<int>{1, 2, 1}));
  EXPECT_THROW(d.with_rank({0, 1, 2, 3}), InputError);
  const auto pentagon = LabeledPoset::build({"0", "a", "b", "c", "1"}, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
  EXPECT_FALSE(graded_rank(pentagon).has_value());
  EXPECT_FALSE(pentagon.with_graded_rank().rank().has_value());
  EXPECT_THROW(height(pentagon), InputError);
}

TEST(Product, Examples) {
  const auto d = product(two_chain(), two_chain());
  EXPECT_EQ(d.size(), 4u);
  EXPECT_TRUE(isomorphic(d, diamond()));
  EXPECT_EQ(d.label(1), "(0,1)");
  EXPECT_TRUE(isomorphic(product(diamond(), chain(1)), diamond()));
  const auto m = matrix_by_name("A2");
  EXPECT_TRUE(isomorphic(product(interval(m, {1}).poset, interval(m, {2}).poset), interval(m, {1, 2}).poset));
}

TEST(DisjointUnion, Examples) {
  const auto two = disjoint_union(chain(1), chain(1));
  EXPECT_EQ(two.size(), 2u);
  EXPECT_TRUE(isomorphic(two, antichain(2)));
  const auto three = disjoint_union(two_chain(), chain(1));
  EXPECT_EQ(three.size(), 3u);
  EXPECT_EQ(three.hasse().size(), 1u);
  const auto p = partition(matrix_by_name("A3"), {2, 1, 3}, 2);
  const auto w3 = subposet(p.upper.poset, p.W3);
  const auto w2 = subposet(p.upper.poset, p.W2);
  EXPECT_EQ(disjoint_union(w3, product(w2, two_chain())).size(), 8u);
}

TEST(FindIsomorphism, Examples) {
  const auto f = find_isomorphism(diamond(), product(two_chain(), two_chain()));
  ASSERT_TRUE(f.has_value());
  EXPECT_TRUE(f->is_isomorphism());
  EXPECT_FALSE(find_isomorphism(chain(3), antichain(3)).has_value());
  EXPECT_TRUE(isomorphic(interval(matrix_by_name("A3"), {2, 1, 3}).poset, boolean_lattice(3)));
  EXPECT_FALSE(isomorphic(chain(3), chain(4)));
}

TEST(FindIsomorphism, RespectsBlocks) {
  const auto d = diamond();
  const auto f = find_isomorphism(d, d, {{{1}, {2}}, {{2}, {1}}});
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ((*f)(1), 2u);
  EXPECT_EQ((*f)(2), 1u);
  EXPECT_FALSE(find_isomorphism(d, d, {{{0}, {3}}}).has_value());
  EXPECT_FALSE(find_isomorphism(d, d, {{{1}, {1, 2}}}).has_value());
}

TEST(FindIsomorphismProperty, AgreesWithBruteForce) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto p = random_poset(rng, n, 0.35);
    const auto q = random_poset(rng, n, 0.35);
    const auto f = find_isomorphism(p, q);
    EXPECT_EQ(f.has_value(), oracle::brute_force_isomorphic(p, q)) << "trial " << trial;
    if (f) {
      EXPECT_TRUE(f->is_isomorphism());
    }
  }
}

TEST(FindIsomorphismProperty, FindsRelabelledCopies) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_poset(rng, 12, 0.25);
    std::vector<std::size_t> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> rel;
    for (auto [x, y] : p.hasse()) rel.emplace_back(perm[x], perm[y]);
    const auto q = LabeledPoset::build(std::vector<std::string>(p.size(), "u"), rel);
    const auto f = find_isomorphism(p, q);
    ASSERT_TRUE(f.has_value()) << "trial " << trial;
    EXPECT_TRUE(f->is_isomorphism());
  }
}

TEST(UpperSets, Examples) {
  const auto d = diamond();
  EXPECT_TRUE(is_upper_set(d, {3}));
  EXPECT_FALSE(is_upper_set(two_chain(), {0}));
  EXPECT_TRUE(is_lower_set(two_chain(), {0}));
  EXPECT_EQ(upper_set_generated_by(d, {1}), (std::vector<std::size_t>{1, 3}));
  const auto p = partition(matrix_by_name("A3"), {2, 1, 3}, 2);
  std::vector<std::size_t> w3;
  for (std::size_t i = 0; i < p.lower.size(); ++i)
    if (p.block[p.lower_to_upper[i]] == 3) w3.push_back(i);
  EXPECT_TRUE(is_upper_set(p.lower.poset, w3));
}

TEST(PosetMapFlags, Basics) {
  const auto c = two_chain();
  const PosetMap id(c, c, {0, 1});
  EXPECT_TRUE(id.is_isomorphism());
  const PosetMap flip(c, c, {1, 0});
  EXPECT_TRUE(flip.bijective());
  EXPECT_FALSE(flip.order_preserving());
  const PosetMap collapse(c, c, {0, 0});
  EXPECT_TRUE(collapse.order_preserving());
  EXPECT_FALSE(collapse.injective());
  EXPECT_FALSE(collapse.surjective());
  // Bijective and monotone but not reflecting.
  const PosetMap onto_chain(antichain(2), c, {0, 1});
  EXPECT_TRUE(onto_chain.bijective());
  EXPECT_TRUE(onto_chain.order_preserving());
  EXPECT_FALSE(onto_chain.is_isomorphism());
  EXPECT_EQ(flip.inverse(), (std::vector<std::size_t>{1, 0}));
}

TEST(Pushout, GluesTwoChains) {
  // Two 2-chains glued along their bottoms give a V.
  const auto a = chain(1);
  const auto r = pushout(a, two_chain(), two_chain(), {0}, {0});
  EXPECT_EQ(r.poset.size(), 3u);
  EXPECT_EQ(r.from_b[0], r.from_c[0]);
  EXPECT_FALSE(r.poset.comparable(r.from_b[1], r.from_c[1]));
}

TEST(Pushout, CollapsesCycles) {
  // Gluing a<b in B with b<a in C forces a = b.
  const auto a = antichain(2);
  const auto r = pushout(a, two_chain(), two_chain(), {0, 1}, {1, 0});
  EXPECT_EQ(r.poset.size(), 1u);
}

TEST(PosetProperty, ProductAndUnionAssociativeCommutative) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_poset(rng, 3, 0.5);
    const auto q = random_poset(rng, 2, 0.5);
    const auto r = random_poset(rng, 2, 0.5);
    EXPECT_TRUE(isomorphic(product(p, q), product(q, p)));
    EXPECT_TRUE(isomorphic(product(product(p, q), r), product(p, product(q, r))));
    EXPECT_TRUE(isomorphic(disjoint_union(p, q), disjoint_union(q, p)));
    EXPECT_TRUE(isomorphic(disjoint_union(disjoint_union(p, q), r), disjoint_union(p, disjoint_union(q, r))));
  }
}

TEST(PosetProperty, HasseReclosureIsExact) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_poset(rng, 10, 0.3);
    const auto q = LabeledPoset::build(p.labels(), p.hasse());
    for (std::size_t x = 0; x < p.size(); ++x)
      for (std::size_t y = 0; y < p.size(); ++y) ASSERT_EQ(p.leq(x, y), q.leq(x, y));
    EXPECT_EQ(p.hasse(), q.hasse());
  }
}

TEST(Export, Dot) {
  const auto one = export_poset(chain(1), ExportFormat::Dot);
  EXPECT_NE(one.find("n0 [label=\"0\"]"), std::string::npos);
  EXPECT_EQ(one.find("->"), std::string::npos);
  const auto two = export_poset(two_chain(), ExportFormat::Dot);
  EXPECT_NE(two.find("n0 -> n1;"), std::string::npos);
  EXPECT_NE(two.find("rankdir=BT"), std::string::npos);
}

TEST(Export, WeylIntervalLayers) {
  const auto iv = interval(matrix_by_name("A3"), {3, 2, 1, 2, 3});
  const auto dot = export_poset(iv.poset, ExportFormat::Dot);
  std::size_t layers = 0;
  for (std::size_t pos = 0; (pos = dot.find("rank=same", pos)) != std::string::npos; ++pos) ++layers;
  EXPECT_EQ(layers, 6u);
  const auto j = nlohmann::json::parse(export_poset(iv.poset, ExportFormat::Json));
  EXPECT_EQ(j["elements"].size(), 20u);
  EXPECT_EQ(j["elements"][0]["label"], "e");
  EXPECT_EQ(j["elements"][19]["rank"], 5);
  EXPECT_EQ(j["hasse"].size(), iv.poset.hasse().size());
  EXPECT_EQ(export_poset(iv.poset, ExportFormat::Json), export_poset(iv.poset, ExportFormat::Json));
}

TEST(Export, FormatNames) {
  EXPECT_EQ(parse_export_format("dot"), ExportFormat::Dot);
  EXPECT_EQ(parse_export_format("json"), ExportFormat::Json);
  EXPECT_THROW(parse_export_format("png"), InputError);
}
