#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

using bruhatspec::Word;

Perm perm_from_word(int n, const Word& w) {
  Perm p(n + 1);
  std::iota(p.begin(), p.end(), 1);
  // Right multiplication by s_i swaps the entries in positions i and i+1.
  for (int i : w) std::swap(p[i - 1], p[i]);
  return p;
}

int inversions(const Perm& p) {
  int count = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) count += p[i] > p[j];
  return count;
}

Word bubble_word(const Perm& p) {
  Perm q = p;
  Word rev;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < q.size(); ++i)
      if (q[i] > q[i + 1]) {
        std::swap(q[i], q[i + 1]);
        rev.push_back(static_cast<int>(i) + 1);
        swapped = true;
      }
  }
  return Word(rev.rbegin(), rev.rend());
}

std::vector<Perm> symmetric_group(int n) {
  Perm p(n + 1);
  std::iota(p.begin(), p.end(), 1);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool subword_leq(const Perm& u, const Perm& v) {
  const int n = static_cast<int>(v.size()) - 1;
  const Word w = bubble_word(v);
  for (std::size_t mask = 0; mask < (std::size_t{1} << w.size()); ++mask) {
    Word sub;
    for (std::size_t t = 0; t < w.size(); ++t)
      if (mask >> t & 1) sub.push_back(w[t]);
    if (perm_from_word(n, sub) == u) return true;
  }
  return false;
}

bool tableau_leq(const Perm& u, const Perm& v) {
  for (std::size_t i = 1; i <= u.size(); ++i) {
    Perm a(u.begin(), u.begin() + i), b(v.begin(), v.begin() + i);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t k = 0; k < i; ++k)
      if (a[k] > b[k]) return false;
  }
  return true;
}

IntMatrix reflection_product(const bruhatspec::CoxeterMatrix& m, const Word& w) {
  const int n = m.rank();
  auto a = [&](int i, int j) -> std::int64_t {
    if (i == j) return 2;
    const int lo = std::min(i, j), mij = m.m(i, j);
    switch (mij) {
      case 2: return 0;
      case 3: return -1;
      case 4: return i == lo ? -1 : -2;
      case 6: return i == lo ? -1 : -3;
      case 0: return -2;
      default: throw std::logic_error("oracle: unsupported Coxeter entry");
    }
  };
  IntMatrix cur(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) cur[i * n + i] = 1;
  for (int s : w) {
    // cur <- cur * S_s, where S_s e_j = e_j - a(s, j) e_s.
    IntMatrix next = cur;
    for (int r = 0; r < n; ++r)
      for (int j = 1; j <= n; ++j) next[r * n + (j - 1)] -= cur[r * n + (s - 1)] * a(s, j);
    cur = std::move(next);
  }
  return cur;
}

std::map<IntMatrix, int> subword_products(const bruhatspec::CoxeterMatrix& m, const Word& w) {
  std::map<IntMatrix, int> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << w.size()); ++mask) {
    Word sub;
    for (std::size_t t = 0; t < w.size(); ++t)
      if (mask >> t & 1) sub.push_back(w[t]);
    auto key = reflection_product(m, sub);
    auto [it, fresh] = out.emplace(std::move(key), static_cast<int>(sub.size()));
    if (!fresh) it->second = std::min(it->second, static_cast<int>(sub.size()));
  }
  return out;
}

std::size_t subword_interval_size(const bruhatspec::CoxeterMatrix& m, const Word& w) {
  return subword_products(m, w).size();
}

std::vector<int> subword_rank_profile(const bruhatspec::CoxeterMatrix& m, const Word& w) {
  std::vector<int> profile;
  for (const auto& [mat, len] : subword_products(m, w)) {
    if (static_cast<int>(profile.size()) <= len) profile.resize(len + 1, 0);
    ++profile[len];
  }
  return profile;
}

bool subword_leq(const bruhatspec::CoxeterMatrix& m, const Word& u, const Word& v_reduced) {
  return subword_products(m, v_reduced).count(reflection_product(m, u)) != 0;
}

bool brute_force_isomorphic(const bruhatspec::LabeledPoset& p, const bruhatspec::LabeledPoset& q) {
  const std::size_t n = p.size();
  if (q.size() != n) return false;
  if (n > 10) throw std::logic_error("oracle: brute force limited to 10 elements");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) ok = p.leq(x, y) == q.leq(perm[x], perm[y]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace oracle
