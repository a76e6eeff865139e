#include "bruhatspec/bruhat.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "bruhatspec/error.hpp"

namespace bruhatspec {

bool bruhat_leq(const GroupElement& u, const GroupElement& v) {
  if (!(u.coxeter() == v.coxeter())) throw InputError("bruhat_leq: elements of different groups");
  GroupElement x = u, y = v;
  for (;;) {
    if (x.length() > y.length()) return false;
    if (y.is_identity()) return x.is_identity();
    const auto descents = y.right_descents();
    const int s = descents.back();
    if (x.right_descent(s)) x = x.times_generator(s);
    y = y.times_generator(s);
  }
}

std::optional<std::size_t> BruhatInterval::find(const GroupElement& w) const {
  if (!(w.coxeter() == base.coxeter())) return std::nullopt;
  auto it = index.find(w.canonical_word());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::size_t BruhatInterval::index_of(const GroupElement& w) const {
  auto i = find(w);
  if (!i) throw Error(word_label(w.canonical_word()) + " is not in [1, " + word_label(base.canonical_word()) + "]");
  return *i;
}

BruhatInterval interval(const CoxeterMatrix& m, const Word& w) {
  m.check_word(w);
  if (!is_reduced(m, w)) throw InputError("interval: word " + word_label(w) + " is not reduced");
  std::map<Word, GroupElement> found;
  const auto e = identity(m);
  found.emplace(e.canonical_word(), e);
  for (int letter : w) {
    std::vector<GroupElement> grown;
    for (const auto& [word, x] : found) grown.push_back(x.times_generator(letter));
    for (auto& x : grown) found.emplace(x.canonical_word(), std::move(x));
  }
  std::vector<GroupElement> elements;
  for (auto& [word, x] : found) elements.push_back(x);
  std::sort(elements.begin(), elements.end());

  const std::size_t n = elements.size();
  std::vector<std::string> labels;
  std::vector<int> rank;
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(word_label(elements[i].canonical_word()));
    rank.push_back(elements[i].length());
    index.emplace(elements[i].canonical_word(), i);
  }
  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rank[i] <= rank[j]) leq[i * n + j] = bruhat_leq(elements[i], elements[j]);
  auto poset = LabeledPoset::from_relation(std::move(labels), std::move(leq)).with_rank(std::move(rank));
  GroupElement base = elements.back();
  return BruhatInterval{std::move(base), std::move(elements), std::move(poset), std::move(index)};
}

BruhatInterval interval(const GroupElement& w) { return interval(w.coxeter(), w.canonical_word()); }

// ---------------------------------------------------------------------------

const std::vector<std::size_t>& BruhatPartition::W(int i) const {
  switch (i) {
    case 1: return W1;
    case 2: return W2;
    case 3: return W3;
    case 4: return W4;
    default: throw InputError("partition blocks are W1..W4");
  }
}

std::vector<std::string> BruhatPartition::block_tags() const {
  std::vector<std::string> tags;
  for (int b : block) tags.push_back("W" + std::to_string(b));
  return tags;
}

LabeledPoset BruhatPartition::tagged_poset() const { return upper.poset.with_tags(block_tags()); }

std::vector<std::size_t> phi(const BruhatInterval& upper, int a) {
  std::vector<std::size_t> out(upper.size());
  for (std::size_t i = 0; i < upper.size(); ++i) {
    const auto& w = upper.elements[i];
    out[i] = w.right_descent(a) ? upper.index_of(w.times_generator(a)) : i;
  }
  return out;
}

BruhatPartition partition(const CoxeterMatrix& m, const Word& wbar, int a) {
  m.check_word(wbar);
  if (!m.valid_generator(a)) throw InputError("invalid generator index " + std::to_string(a));
  if (!is_reduced(m, wbar)) throw InputError("partition: word " + word_label(wbar) + " is not reduced");
  const auto w = element_from_word(m, wbar);
  if (w.right_descent(a))
    throw HypothesisError("partition: " + word_label(w.canonical_word()) + " has s" + std::to_string(a) +
                          " as a right descent, so wbar a < wbar");
  Word top = w.canonical_word();
  top.push_back(a);

  BruhatPartition p{w, a, interval(m, w.canonical_word()), interval(m, top), {}, {}, {}, {}, {}, {}, {}};
  const std::size_t n = p.upper.size();
  std::vector<char> in_lower(n, 0);
  for (const auto& x : p.lower.elements) {
    const auto i = p.upper.index_of(x);
    p.lower_to_upper.push_back(i);
    in_lower[i] = 1;
  }
  for (const auto& x : p.upper.elements) p.times_a.push_back(p.upper.index_of(x.times_generator(a)));
  p.block.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int b;
    if (!in_lower[i])
      b = 4;
    else if (p.upper.elements[i].right_descent(a))
      b = 1;
    else
      b = in_lower[p.times_a[i]] ? 2 : 3;
    p.block[i] = b;
    (b == 1 ? p.W1 : b == 2 ? p.W2 : b == 3 ? p.W3 : p.W4).push_back(i);
  }
  const auto violations = partition_law_violations(p);
  if (!violations.empty())
    throw Error("partition law violated for wbar=" + word_label(w.canonical_word()) + ", a=" +
                std::to_string(a) + ": " + violations.front());
  return p;
}

namespace {

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

std::set<std::size_t> image(const std::vector<std::size_t>& map, const std::vector<std::size_t>& v) {
  std::set<std::size_t> out;
  for (auto x : v) out.insert(map[x]);
  return out;
}

std::set<std::size_t> set_union(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::set<std::size_t> out(a.begin(), a.end());
  out.insert(b.begin(), b.end());
  return out;
}

}  // namespace

std::vector<std::string> partition_law_violations(const BruhatPartition& p) {
  std::vector<std::string> out;
  const auto& up = p.upper;
  const auto& P = up.poset;
  const std::size_t n = up.size();
  const int a = p.a;
  auto label = [&](std::size_t i) { return P.label(i); };

  const auto lower = as_set(p.lower_to_upper);
  {
    auto w123 = set_union(p.W1, p.W2);
    w123.insert(p.W3.begin(), p.W3.end());
    if (w123 != lower) out.push_back("W1 ∪ W2 ∪ W3 differs from [1, wbar]");
  }
  if (p.W1.size() + p.W2.size() + p.W3.size() + p.W4.size() != n)
    out.push_back("W1..W4 do not partition [1, wbar a]");
  if (image(p.times_a, p.W1) != as_set(p.W2)) out.push_back("W2 differs from m_a(W1)");
  if (image(p.times_a, p.W4) != as_set(p.W3)) out.push_back("W3 differs from m_a(W4)");

  // W3 is an upper set of [1, wbar]; W4 and W3 ∪ W4 are upper sets of [1, wbar a].
  for (auto x : p.W3)
    for (auto y : p.lower_to_upper)
      if (P.leq(x, y) && p.block[y] != 3) out.push_back("W3 is not an upper set of [1, wbar] at " + label(x));
  if (!is_upper_set(P, p.W4)) out.push_back("W4 is not an upper set of [1, wbar a]");
  {
    std::vector<std::size_t> w34 = p.W3;
    w34.insert(w34.end(), p.W4.begin(), p.W4.end());
    if (!is_upper_set(P, w34)) out.push_back("W3 ∪ W4 is not an upper set of [1, wbar a]");
  }

  std::set<std::size_t> descent, ascent;
  for (std::size_t i = 0; i < n; ++i) (up.elements[i].right_descent(a) ? descent : ascent).insert(i);
  if (set_union(p.W2, p.W3) != ascent) out.push_back("W2 ∪ W3 differs from [1, wbar a] ∩ W_a'");
  if (set_union(p.W1, p.W4) != descent) out.push_back("W1 ∪ W4 differs from [1, wbar a] ∩ W_a");

  // m_a is a pair of mutually inverse order isomorphisms W_a <-> W_a'.
  for (std::size_t i = 0; i < n; ++i) {
    if (p.times_a[p.times_a[i]] != i) out.push_back("m_a is not an involution at " + label(i));
    if (descent.count(i) != ascent.count(p.times_a[i]))
      out.push_back("m_a does not swap W_a and W_a' at " + label(i));
  }
  for (auto x : descent)
    for (auto y : descent)
      if (P.leq(x, y) != P.leq(p.times_a[x], p.times_a[y]))
        out.push_back("m_a is not an order isomorphism at " + label(x) + ", " + label(y));

  // For w in W2 and w' in W4 with w <= w', z = w'a lies in W3 and w <= z <= w'.
  for (auto w : p.W2)
    for (auto w2 : p.W4) {
      if (!P.leq(w, w2)) continue;
      const auto z = p.times_a[w2];
      if (p.block[z] != 3 || !P.leq(w, z) || !P.leq(z, w2))
        out.push_back("sandwich through w'a fails for " + label(w) + " <= " + label(w2));
    }

  // Phi: 2-1, surjective onto W2 ∪ W3, order-preserving, idempotent, and
  // w' <= w iff Phi(w') <= Phi(w) for w in W_a, w' in W_a'.
  const auto f = phi(up, a);
  std::vector<int> fibre(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++fibre[f[i]];
    if (f[f[i]] != f[i]) out.push_back("Phi is not idempotent at " + label(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool target = ascent.count(i) != 0;
    if (target != (fibre[i] == 2) || (!target && fibre[i] != 0))
      out.push_back("Phi is not 2-1 onto W2 ∪ W3 at " + label(i));
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (P.leq(x, y) && !P.leq(f[x], f[y])) out.push_back("Phi is not order-preserving at " + label(x) + " <= " + label(y));
  for (auto w : descent)
    for (auto w2 : ascent)
      if (P.leq(w2, w) != P.leq(f[w2], f[w]))
        out.push_back("Phi does not reflect " + label(w2) + " <= " + label(w));
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::pair<Word, Word>> is_decomposable(const CoxeterMatrix& m, const Word& w,
                                                     std::size_t budget) {
  m.check_word(w);
  if (!is_reduced(m, w)) throw InputError("is_decomposable: word " + word_label(w) + " is not reduced");
  if (w.size() < 2) return std::nullopt;
  if (budget == 0) budget = w.size() <= 8 ? std::numeric_limits<std::size_t>::max() : std::size_t{1} << 16;
  const auto element = element_from_word(m, w);
  std::vector<GroupElement> generators;
  for (int s = 1; s <= m.rank(); ++s) generators.push_back(element_from_word(m, {s}));
  // A nonidentity common lower bound of u and v exists iff some simple
  // reflection lies below both.
  for (const auto& r : reduced_words(element, budget))
    for (std::size_t k = 1; k < r.size(); ++k) {
      const auto u = element_from_word(m, Word(r.begin(), r.begin() + k));
      const auto v = element_from_word(m, Word(r.begin() + k, r.end()));
      bool shared = false;
      for (const auto& s : generators)
        if (bruhat_leq(s, u) && bruhat_leq(s, v)) {
          shared = true;
          break;
        }
      if (!shared) return std::make_pair(u.canonical_word(), v.canonical_word());
    }
  return std::nullopt;
}

LiftingReport check_lifting(const CoxeterMatrix& m, int bound) {
  if (bound < 1) throw InputError("check_lifting: bound must be at least 1");
  LiftingReport report;
  const auto elements = elements_up_to_length(m, bound);
  report.elements = elements.size();
  for (const auto& w2 : elements)
    for (const auto& w : elements) {
      if (w.length() >= w2.length() || !bruhat_leq(w, w2)) continue;
      for (int s = 1; s <= m.rank(); ++s) {
        if (w.right_descent(s) || !w2.right_descent(s)) continue;
        ++report.instances;
        const auto w2s = w2.times_generator(s), ws = w.times_generator(s);
        if (!bruhat_leq(w, w2s) || !bruhat_leq(ws, w2)) {
          report.passed = false;
          report.counterexample = "w=" + word_label(w.canonical_word()) + ", w'=" +
                                  word_label(w2.canonical_word()) + ", a=s" + std::to_string(s);
          return report;
        }
      }
    }
  return report;
}

}  // namespace bruhatspec
