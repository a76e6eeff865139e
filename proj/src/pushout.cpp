#include "bruhatspec/pushout.hpp"

#include <algorithm>
#include <map>

#include "bruhatspec/error.hpp"

namespace bruhatspec {

PushoutSquare build_pushout_square(const BruhatPartition& part) {
  const auto& up = part.upper;
  PushoutSquare sq;
  sq.a = disjoint_union(subposet(up.poset, part.W3), product(subposet(up.poset, part.W2), two_chain()));
  sq.b = part.lower.poset;
  sq.c_elements = part.W2;
  sq.c_elements.insert(sq.c_elements.end(), part.W3.begin(), part.W3.end());
  std::sort(sq.c_elements.begin(), sq.c_elements.end());
  sq.c = product(subposet(up.poset, sq.c_elements), two_chain());
  sq.d = up.poset;

  std::vector<std::size_t> upper_to_lower(up.size(), up.size());
  for (std::size_t i = 0; i < part.lower_to_upper.size(); ++i) upper_to_lower[part.lower_to_upper[i]] = i;
  std::map<std::size_t, std::size_t> pos_c;
  for (std::size_t i = 0; i < sq.c_elements.size(); ++i) pos_c[sq.c_elements[i]] = i;

  std::vector<std::size_t> nu1, nu2;
  for (auto w : part.W3) {
    nu1.push_back(upper_to_lower[w]);
    nu2.push_back(2 * pos_c.at(w));
  }
  for (auto w : part.W2)
    for (std::size_t eps = 0; eps < 2; ++eps) {
      nu1.push_back(upper_to_lower[eps ? part.times_a[w] : w]);
      nu2.push_back(2 * pos_c.at(w) + eps);
    }
  std::vector<std::size_t> top;
  for (auto w : sq.c_elements) {
    top.push_back(w);
    top.push_back(part.times_a[w]);
  }
  for (std::size_t w = 0; w < up.size(); ++w) {
    const bool ascent = part.block[w] == 2 || part.block[w] == 3;
    sq.top_inverse.push_back(ascent ? 2 * pos_c.at(w) : 2 * pos_c.at(part.times_a[w]) + 1);
  }
  sq.nu1 = PosetMap(sq.a, sq.b, std::move(nu1));
  sq.nu2 = PosetMap(sq.a, sq.c, std::move(nu2));
  sq.top = PosetMap(sq.c, sq.d, std::move(top));
  sq.incl = PosetMap(sq.b, sq.d, part.lower_to_upper);
  return sq;
}

PushoutReport check_pushout_square(const BruhatPartition& part) {
  PushoutReport r;
  r.wbar = word_label(part.wbar.canonical_word());
  r.a = part.a;
  PushoutSquare sq;
  try {
    sq = build_pushout_square(part);
  } catch (const Error& e) {
    r.failures.push_back(std::string("square cannot be built: ") + e.what());
    return r;
  }
  r.size_a = sq.a.size();
  r.size_b = sq.b.size();
  r.size_c = sq.c.size();
  r.size_d = sq.d.size();

  r.nu1_bijective_monotone = sq.nu1.bijective() && sq.nu1.order_preserving();
  r.nu2_injective_monotone = sq.nu2.injective() && sq.nu2.order_preserving();
  r.top_bijective_monotone = sq.top.bijective() && sq.top.order_preserving();

  r.commutes = true;
  for (std::size_t x = 0; x < sq.a.size(); ++x)
    if (sq.top(sq.nu2(x)) != sq.incl(sq.nu1(x))) r.commutes = false;

  r.top_inverse_is_inverse = true;
  for (std::size_t c = 0; c < sq.c.size(); ++c)
    if (sq.top_inverse[sq.top(c)] != c) r.top_inverse_is_inverse = false;

  r.inverse_monotone_on_Wa = r.inverse_monotone_on_Wa_prime = true;
  for (std::size_t x = 0; x < sq.d.size(); ++x)
    for (std::size_t y = 0; y < sq.d.size(); ++y) {
      if (!sq.d.leq(x, y)) continue;
      const bool dx = part.upper.elements[x].right_descent(part.a);
      const bool dy = part.upper.elements[y].right_descent(part.a);
      if (dx != dy) continue;
      if (!sq.c.leq(sq.top_inverse[x], sq.top_inverse[y]))
        (dx ? r.inverse_monotone_on_Wa : r.inverse_monotone_on_Wa_prime) = false;
    }

  const auto po = pushout(sq.a, sq.b, sq.c, sq.nu1.assignment(), sq.nu2.assignment());
  std::vector<std::size_t> induced(po.poset.size(), sq.d.size());
  bool well_defined = true;
  auto assign = [&](std::size_t cls, std::size_t target) {
    if (induced[cls] != sq.d.size() && induced[cls] != target) well_defined = false;
    induced[cls] = target;
  };
  for (std::size_t b = 0; b < sq.b.size(); ++b) assign(po.from_b[b], sq.incl(b));
  for (std::size_t c = 0; c < sq.c.size(); ++c) assign(po.from_c[c], sq.top(c));
  r.colimit_matches = well_defined && po.poset.size() == sq.d.size() &&
                      PosetMap(po.poset, sq.d, induced).is_isomorphism();

  const std::pair<bool, const char*> checks[] = {
      {r.nu1_bijective_monotone, "nu1 is not a bijective order-preserving map"},
      {r.nu2_injective_monotone, "nu2 is not an injective order-preserving map"},
      {r.top_bijective_monotone, "top is not a bijective order-preserving map"},
      {r.commutes, "the square does not commute"},
      {r.top_inverse_is_inverse, "the explicit inverse of top is not its inverse"},
      {r.inverse_monotone_on_Wa, "top^{-1} is not order-preserving on W_a"},
      {r.inverse_monotone_on_Wa_prime, "top^{-1} is not order-preserving on W_a'"},
      {r.colimit_matches, "the pushout of nu1 and nu2 is not [1, wbar a]"},
  };
  for (const auto& [ok, message] : checks)
    if (!ok) r.failures.emplace_back(message);
  return r;
}

PushoutReport pushout_square(const CoxeterMatrix& m, const Word& wbar, int a) {
  return check_pushout_square(partition(m, wbar, a));
}

nlohmann::ordered_json PushoutReport::to_json() const {
  nlohmann::ordered_json j;
  j["wbar"] = wbar;
  j["a"] = a;
  j["sizes"] = {{"W3+W2x2", size_a}, {"lower", size_b}, {"W23x2", size_c}, {"upper", size_d}};
  j["nu1_bijective_monotone"] = nu1_bijective_monotone;
  j["nu2_injective_monotone"] = nu2_injective_monotone;
  j["top_bijective_monotone"] = top_bijective_monotone;
  j["commutes"] = commutes;
  j["top_inverse_is_inverse"] = top_inverse_is_inverse;
  j["inverse_monotone_on_Wa"] = inverse_monotone_on_Wa;
  j["inverse_monotone_on_Wa_prime"] = inverse_monotone_on_Wa_prime;
  j["colimit_matches"] = colimit_matches;
  j["passed"] = passed();
  j["failures"] = failures;
  return j;
}

}  // namespace bruhatspec
