#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bruhatspec/coxeter.hpp"
#include "bruhatspec/poset.hpp"

namespace bruhatspec {

/// u <= v in Bruhat order. Recurses on the largest right descent of v.
bool bruhat_leq(const GroupElement& u, const GroupElement& v);

/// The lower interval [1, base] with its Bruhat order.
///
/// Elements are sorted shortlex by canonical word, so index 0 is the identity
/// and the last index is `base`. Poset labels are word_label(canonical word)
/// and the rank is the length.
struct BruhatInterval {
  GroupElement base;
  std::vector<GroupElement> elements;
  LabeledPoset poset;
  std::map<Word, std::size_t> index;

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> find(const GroupElement& w) const;
  /// Throws Error if w is not in the interval.
  std::size_t index_of(const GroupElement& w) const;
  bool contains(const GroupElement& w) const { return find(w).has_value(); }
};

/// [1, w] from the subwords of the reduced word w. Throws InputError if w is
/// not reduced.
BruhatInterval interval(const CoxeterMatrix& m, const Word& w);
BruhatInterval interval(const GroupElement& w);

/// The blocks W1..W4 of [1, wbar a] for a generator a with wbar < wbar a.
///
/// W1..W4 hold sorted indices into `upper`. `block[i]` is the block (1..4) of
/// upper element i, `times_a[i]` the index of (element i)·a, which stays in
/// `upper`, and `lower_to_upper` embeds [1, wbar] into [1, wbar a].
struct BruhatPartition {
  GroupElement wbar;
  int a = 0;
  BruhatInterval lower;
  BruhatInterval upper;
  std::vector<std::size_t> W1, W2, W3, W4;
  std::vector<int> block;
  std::vector<std::size_t> times_a;
  std::vector<std::size_t> lower_to_upper;

  const std::vector<std::size_t>& W(int i) const;
  /// "W1".."W4" per element of `upper`.
  std::vector<std::string> block_tags() const;
  /// [1, wbar a] with block tags attached.
  LabeledPoset tagged_poset() const;
};

/// Throws InputError for a non-reduced wbar or bad generator, and
/// HypothesisError if wbar a < wbar. Every partition law is checked before
/// returning; a violation raises Error.
BruhatPartition partition(const CoxeterMatrix& m, const Word& wbar, int a);

/// Human-readable descriptions of every failed partition law; empty when all
/// hold. Covers the block identities, the m_a isomorphisms, the upper-set
/// claims, the W2/W4 sandwich through w'a, and the two projection laws.
std::vector<std::string> partition_law_violations(const BruhatPartition& p);

/// Phi(w) = w if w < wa, else wa, as an index map on `upper` = [1, wbar a].
std::vector<std::size_t> phi(const BruhatInterval& upper, int a);

/// A length-additive factorization w = u v into nontrivial factors whose only
/// common lower bound is the identity, searched over the reduced words of w
/// (at most `budget`, all of them when w has length <= 8) and their splits.
std::optional<std::pair<Word, Word>> is_decomposable(const CoxeterMatrix& m, const Word& w,
                                                     std::size_t budget = 0);

struct LiftingReport {
  bool passed = true;
  std::size_t elements = 0;
  std::size_t instances = 0;
  std::string counterexample;
};

/// Checks: w < w', w < wa, w'a < w' imply w <= w'a and wa <= w', for all
/// elements w' of length <= bound and all w below w'.
LiftingReport check_lifting(const CoxeterMatrix& m, int bound);

}  // namespace bruhatspec
