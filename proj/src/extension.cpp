#include "bruhatspec/extension.hpp"

#include <algorithm>
#include <set>

namespace bruhatspec {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::vector<char> membership(std::size_t n, const std::vector<std::size_t>& subset) {
  std::vector<char> in(n, 0);
  for (auto x : subset) {
    if (x >= n) throw InputError("subset refers to a missing element");
    in[x] = 1;
  }
  return in;
}

std::vector<std::size_t> upper_to_lower(const BruhatPartition& part) {
  std::vector<std::size_t> out(part.upper.size(), kNone);
  for (std::size_t i = 0; i < part.lower_to_upper.size(); ++i) out[part.lower_to_upper[i]] = i;
  return out;
}

}  // namespace

SetupReport validate_setup(const SetupData& s) {
  const auto& T = s.ptilde;
  const std::size_t n = T.size();
  auto fail = [](std::string clause) { return SetupReport{false, std::move(clause)}; };

  const auto inP = membership(n, s.P), inPx = membership(n, s.Px);
  for (std::size_t i = 0; i < n; ++i)
    if (inP[i] + inPx[i] != 1) return fail("P and Px do not partition Ptilde at " + T.label(i));
  if (s.P.size() + s.Px.size() != n) return fail("P and Px contain repeated elements");
  if (!is_upper_set(T, s.Px)) return fail("Px is not an upper set of Ptilde");
  if (s.phi_tilde.size() != n) return fail("phi_tilde is not defined on all of Ptilde");
  for (std::size_t i = 0; i < n; ++i)
    if (s.phi_tilde[i] >= n || !inP[s.phi_tilde[i]]) return fail("phi_tilde leaves P at " + T.label(i));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (T.leq(x, y) && !T.leq(s.phi_tilde[x], s.phi_tilde[y]))
        return fail("phi_tilde is not order-preserving at " + T.label(x) + " <= " + T.label(y));
  for (auto x : s.Px)
    for (auto y : s.Px) {
      if (x != y && s.phi_tilde[x] == s.phi_tilde[y])
        return fail("phi_tilde is not injective on Px at " + T.label(x) + ", " + T.label(y));
      if (T.leq(x, y) != T.leq(s.phi_tilde[x], s.phi_tilde[y]))
        return fail("phi_tilde restricted to Px is not an isomorphism onto its image at " + T.label(x) +
                    ", " + T.label(y));
    }
  for (auto x : s.Px)
    if (!T.leq(s.phi_tilde[x], x)) return fail("phi_tilde(p) <= p fails at " + T.label(x));
  for (auto p : s.P)
    for (auto q : s.Px)
      if (T.leq(p, q) != T.leq(s.phi_tilde[p], s.phi_tilde[q]))
        return fail("p <= p' iff phi_tilde(p) <= phi_tilde(p') fails at " + T.label(p) + ", " + T.label(q));
  if (s.projection)
    for (std::size_t i = 0; i < n; ++i)
      if (s.phi_tilde[s.phi_tilde[i]] != s.phi_tilde[i]) return fail("phi_tilde is not idempotent at " + T.label(i));
  return {};
}

std::map<std::size_t, std::size_t> derive_partners(const LabeledPoset& poset, const std::vector<std::size_t>& P1,
                                                   const std::vector<std::size_t>& P2,
                                                   const std::map<std::size_t, std::size_t>& overrides) {
  const auto inP2 = membership(poset.size(), P2);
  std::map<std::size_t, std::size_t> out;
  for (auto p : P1) {
    if (auto it = overrides.find(p); it != overrides.end()) {
      if (!inP2.at(it->second) || !poset.covers(it->second, p))
        throw InputError("declared partner of " + poset.label(p) + " is not a P2 element covered by it");
      out[p] = it->second;
      continue;
    }
    std::vector<std::size_t> candidates;
    for (auto d : poset.lower_covers(p))
      if (inP2[d]) candidates.push_back(d);
    if (candidates.empty()) throw InputError("no partner for " + poset.label(p) + ": it covers no element of P2");
    if (candidates.size() > 1)
      throw InputError("ambiguous partner for " + poset.label(p) + ": it covers " +
                       std::to_string(candidates.size()) + " elements of P2");
    out[p] = candidates.front();
  }
  return out;
}

void check_spectrum_partition(const SpectrumPartition& sp) {
  const std::size_t n = sp.poset.size();
  const auto a = membership(n, sp.P1), b = membership(n, sp.P2), c = membership(n, sp.P3);
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] + b[i] + c[i] != 1) throw InputError("P1, P2, P3 do not partition the spectrum at " + sp.poset.label(i));
  if (sp.P1.size() + sp.P2.size() + sp.P3.size() != n) throw InputError("P1, P2, P3 contain repeated elements");
  for (auto p : sp.P1) {
    auto it = sp.partner.find(p);
    if (it == sp.partner.end()) throw InputError("no partner for " + sp.poset.label(p));
    if (!b.at(it->second) || !sp.poset.covers(it->second, p))
      throw InputError("partner of " + sp.poset.label(p) + " is not a P2 element covered by it");
  }
}

OreStep ore_step(const SpectrumPartition& sp, std::vector<std::string> labels) {
  check_spectrum_partition(sp);
  const auto& P = sp.poset;
  const std::size_t np = P.size(), n3 = sp.P3.size(), n = np + n3;
  std::vector<std::size_t> pi(np);
  for (std::size_t p = 0; p < np; ++p) {
    auto it = sp.partner.find(p);
    pi[p] = it == sp.partner.end() ? p : it->second;
  }
  if (labels.empty()) {
    labels = P.labels();
    for (auto q : sp.P3) labels.push_back(P.label(q) + "+x");
  }
  if (labels.size() != n) throw InputError("ore_step: wrong number of labels");

  std::vector<std::size_t> base(n);  // the P element each Ptilde element lies over
  OreStep out;
  for (std::size_t p = 0; p < np; ++p) base[p] = p;
  for (std::size_t k = 0; k < n3; ++k) {
    base[np + k] = sp.P3[k];
    out.new_of_p3[sp.P3[k]] = np + k;
  }
  std::vector<char> leq(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const bool x_new = x >= np, y_new = y >= np;
      if (x_new && !y_new) continue;
      if (x_new == y_new)
        leq[x * n + y] = P.leq(base[x], base[y]);
      else
        leq[x * n + y] = P.leq(pi[x], base[y]);
    }
  out.setup.ptilde = LabeledPoset::from_relation(std::move(labels), std::move(leq)).with_graded_rank();
  for (std::size_t p = 0; p < np; ++p) out.setup.P.push_back(p);
  for (std::size_t k = 0; k < n3; ++k) out.setup.Px.push_back(np + k);
  out.setup.phi_tilde.resize(n);
  for (std::size_t x = 0; x < n; ++x) out.setup.phi_tilde[x] = x < np ? pi[x] : base[x];
  out.setup.projection = true;
  out.iota = out.setup.P;
  out.psi_tilde = out.setup.phi_tilde;
  return out;
}

std::optional<std::string> hypothesis_a_violation(const std::vector<std::size_t>& nabla, const BruhatPartition& part,
                                                  const SetupData& s) {
  const auto to_lower = upper_to_lower(part);
  std::set<std::size_t> lhs, rhs;
  for (auto w : part.W3) lhs.insert(nabla.at(to_lower[w]));
  for (auto p : s.Px) rhs.insert(s.phi_tilde.at(p));
  for (auto w : part.W3)
    if (!rhs.count(nabla[to_lower[w]]))
      return "nabla(" + part.upper.poset.label(w) + ") = " + s.ptilde.label(nabla[to_lower[w]]) +
             " is not in phi_tilde(Px)";
  for (auto p : rhs)
    if (!lhs.count(p)) return s.ptilde.label(p) + " is in phi_tilde(Px) but not in nabla(W3)";
  return std::nullopt;
}

std::optional<std::string> hypothesis_b_violation(const std::vector<std::size_t>& nabla, const BruhatPartition& part,
                                                  const SetupData& s) {
  const auto to_lower = upper_to_lower(part);
  const auto f = phi(part.upper, part.a);
  for (auto w : part.lower_to_upper) {
    if (s.projection && part.block[w] > 2) continue;
    const auto lhs = s.phi_tilde.at(nabla.at(to_lower[w]));
    const auto rhs = nabla.at(to_lower[f[w]]);
    if (lhs != rhs)
      return "at " + part.upper.poset.label(w) + ": phi_tilde nabla gives " + s.ptilde.label(lhs) +
             ", nabla Phi gives " + s.ptilde.label(rhs);
  }
  return std::nullopt;
}

PosetMap extend_iso(const std::vector<std::size_t>& nabla, const BruhatPartition& part, const SetupData& s) {
  const auto& L = part.lower.poset;
  const auto& T = s.ptilde;
  if (nabla.size() != L.size()) throw InputError("extend_iso: nabla is not defined on all of [1, wbar]");
  {
    const auto inP = membership(T.size(), s.P);
    std::set<std::size_t> image;
    for (auto p : nabla) {
      if (p >= T.size() || !inP[p]) throw InputError("extend_iso: nabla leaves P");
      image.insert(p);
    }
    if (image.size() != s.P.size() || image.size() != L.size())
      throw InputError("extend_iso: nabla is not a bijection onto P");
    for (std::size_t x = 0; x < L.size(); ++x)
      for (std::size_t y = 0; y < L.size(); ++y)
        if (L.leq(x, y) != T.leq(nabla[x], nabla[y]))
          throw InputError("extend_iso: nabla is not an isomorphism at " + L.label(x) + ", " + L.label(y));
  }
  if (auto v = hypothesis_a_violation(nabla, part, s)) throw ExtensionHypothesisError('a', *v, "hypothesis (a) fails: " + *v);
  if (auto v = hypothesis_b_violation(nabla, part, s)) throw ExtensionHypothesisError('b', *v, "hypothesis (b) fails: " + *v);

  std::map<std::size_t, std::size_t> phi_px_inverse;
  for (auto p : s.Px) phi_px_inverse[s.phi_tilde[p]] = p;
  const auto to_lower = upper_to_lower(part);
  std::vector<std::size_t> out(part.upper.size());
  for (std::size_t w = 0; w < part.upper.size(); ++w) {
    if (to_lower[w] != kNone) {
      out[w] = nabla[to_lower[w]];
      continue;
    }
    const auto target = nabla[to_lower[part.times_a[w]]];
    auto it = phi_px_inverse.find(target);
    if (it == phi_px_inverse.end())
      throw ExtensionHypothesisError('a', part.upper.poset.label(w),
                                     "hypothesis (a) fails: no element of Px over nabla(wa) for w = " +
                                         part.upper.poset.label(w));
    out[w] = it->second;
  }
  PosetMap result(part.upper.poset, T, std::move(out));
  if (!result.is_isomorphism()) throw Error("extend_iso: the extended map is not an isomorphism");
  return result;
}

SquareReport commuting_square(const std::vector<std::size_t>& nabla, const PosetMap& nabla_tilde,
                              const BruhatPartition& part, const SpectrumPartition& sp, const OreStep& step) {
  SquareReport r;
  auto note = [&](bool& flag, const std::string& message) {
    flag = false;
    if (r.first_failure.empty()) r.first_failure = message;
  };
  std::map<std::size_t, std::size_t> iota_inverse;
  for (std::size_t p = 0; p < step.iota.size(); ++p) iota_inverse[step.iota[p]] = p;
  auto psi = [&](std::size_t x) { return iota_inverse.at(step.setup.phi_tilde.at(x)); };

  const auto to_lower = upper_to_lower(part);
  const auto f = phi(part.upper, part.a);
  for (std::size_t w = 0; w < part.upper.size(); ++w) {
    const auto lhs = psi(nabla_tilde(w));
    const auto rhs = iota_inverse.at(nabla.at(to_lower[f[w]]));
    if (lhs != rhs) {
      ++r.mismatches;
      note(r.commutes, "square fails at " + part.upper.poset.label(w));
    }
  }

  const auto& P = sp.poset;
  std::vector<int> fibre(P.size(), 0);
  for (std::size_t x = 0; x < step.setup.ptilde.size(); ++x) ++fibre[psi(x)];
  std::set<std::size_t> partners;
  for (const auto& [p, q] : sp.partner) partners.insert(q);
  const auto inP3 = membership(P.size(), sp.P3);
  for (std::size_t p = 0; p < P.size(); ++p) {
    if (fibre[p] > 2) note(r.at_most_two_to_one, "psi_tilde has a fibre of size " + std::to_string(fibre[p]) + " over " + P.label(p));
    if (inP3[p] && fibre[p] != 2) note(r.p3_fibres_doubled, "the fibre over " + P.label(p) + " in P3 is not of size 2");
    if (!inP3[p] && fibre[p] == 2 && !partners.count(p))
      note(r.extra_fibres_over_partners, "size-2 fibre over " + P.label(p) + ", which is neither in P3 nor a partner");
  }
  return r;
}

}  // namespace bruhatspec
