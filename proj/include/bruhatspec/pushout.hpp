#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bruhatspec/bruhat.hpp"
#include "bruhatspec/poset.hpp"
#include "json.hpp"

namespace bruhatspec {

/// The square
///
///   W3 ⊔ (W2 × 2) --nu2--> (W2 ∪ W3) × 2
///        |                       |
///       nu1                     top
///        v                       v
///     [1, wbar] ---incl---> [1, wbar a]
///
/// Element order: `a` lists W3 (in upper-index order) then (w, 0), (w, 1) for
/// each w in W2; `c` lists (w, 0), (w, 1) for each w in W2 ∪ W3. `c_elements`
/// holds the upper indices of W2 ∪ W3 in that order.
struct PushoutSquare {
  LabeledPoset a, b, c, d;
  std::vector<std::size_t> c_elements;
  PosetMap nu1, nu2, top, incl;
  /// top^{-1}: w ↦ (w, 0) on W_a', w ↦ (wa, 1) on W_a.
  std::vector<std::size_t> top_inverse;
};

PushoutSquare build_pushout_square(const BruhatPartition& part);

struct PushoutReport {
  std::string wbar;
  int a = 0;
  std::size_t size_a = 0, size_b = 0, size_c = 0, size_d = 0;
  bool nu1_bijective_monotone = false;
  bool nu2_injective_monotone = false;
  bool top_bijective_monotone = false;
  bool commutes = false;
  bool top_inverse_is_inverse = false;
  bool inverse_monotone_on_Wa = false;
  bool inverse_monotone_on_Wa_prime = false;
  /// The pushout of nu1, nu2 computed as a quotient maps isomorphically onto
  /// [1, wbar a] via incl and top.
  bool colimit_matches = false;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  nlohmann::ordered_json to_json() const;
};

PushoutReport check_pushout_square(const BruhatPartition& part);
/// Throws InputError / HypothesisError when wbar is not reduced or wbar a < wbar.
PushoutReport pushout_square(const CoxeterMatrix& m, const Word& wbar, int a);

}  // namespace bruhatspec
