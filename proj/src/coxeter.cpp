#include "bruhatspec/coxeter.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "bruhatspec/error.hpp"

namespace bruhatspec {

namespace {

// Off-diagonal Cartan pair (c_ij, c_ji) for i < j; the product is 4cos^2(pi/m).
std::pair<int, int> cartan_pair(int m) {
  switch (m) {
    case 2: return {0, 0};
    case 3: return {-1, -1};
    case 4: return {-1, -2};
    case 6: return {-1, -3};
    case CoxeterMatrix::kInfinity: return {-2, -2};
    default:
      throw InputError("non-crystallographic Coxeter entry " + std::to_string(m) +
                       " (supported: 2, 3, 4, 6, infinity)");
  }
}

using Mat = std::vector<std::int64_t>;

Mat identity_matrix(int n) {
  Mat id(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;
  return id;
}

// M <- M * S_i, where S_i e_j = e_j - c_ij e_i.
void right_multiply_generator(const CoxeterMatrix& cm, Mat& m, int i) {
  const int n = cm.rank();
  const int col_i = i - 1;
  for (int j = 0; j < n; ++j) {
    if (j == col_i) continue;
    const std::int64_t c = cm.cartan(i, j + 1);
    if (c == 0) continue;
    for (int r = 0; r < n; ++r) m[r * n + j] -= c * m[r * n + col_i];
  }
  // Column i: M(e_i - 2 e_i) = -M e_i.
  for (int r = 0; r < n; ++r) m[r * n + col_i] = -m[r * n + col_i];
}

bool column_negative(const Mat& m, int n, int i) {
  for (int r = 0; r < n; ++r)
    if (m[r * n + (i - 1)] < 0) return true;
  return false;
}

}  // namespace

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> entries, std::string name)
    : rank_(static_cast<int>(entries.size())), name_(std::move(name)) {
  if (rank_ < 1) throw InputError("Coxeter matrix must have rank >= 1");
  m_.assign(static_cast<std::size_t>(rank_) * rank_, 0);
  cartan_.assign(m_.size(), 0);
  for (int i = 0; i < rank_; ++i) {
    if (static_cast<int>(entries[i].size()) != rank_)
      throw InputError("Coxeter matrix is not square");
    for (int j = 0; j < rank_; ++j) m_[i * rank_ + j] = entries[i][j];
  }
  for (int i = 0; i < rank_; ++i) {
    if (m_[i * rank_ + i] != 1) throw InputError("Coxeter matrix diagonal entries must be 1");
    cartan_[i * rank_ + i] = 2;
    for (int j = i + 1; j < rank_; ++j) {
      const int mij = m_[i * rank_ + j];
      if (mij != m_[j * rank_ + i]) throw InputError("Coxeter matrix is not symmetric");
      if (mij == 1 || mij < 0) throw InputError("off-diagonal Coxeter entries must be >= 2 or infinity");
      auto [cij, cji] = cartan_pair(mij);
      cartan_[i * rank_ + j] = cij;
      cartan_[j * rank_ + i] = cji;
    }
  }
}

int CoxeterMatrix::m(int i, int j) const {
  if (!valid_generator(i) || !valid_generator(j))
    throw InputError("generator index out of range");
  return m_[(i - 1) * rank_ + (j - 1)];
}

std::vector<std::vector<int>> CoxeterMatrix::entries() const {
  std::vector<std::vector<int>> out(rank_, std::vector<int>(rank_));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out[i][j] = m_[i * rank_ + j];
  return out;
}

void CoxeterMatrix::check_word(const Word& w) const {
  for (int letter : w)
    if (!valid_generator(letter))
      throw InputError("invalid generator index " + std::to_string(letter) + " for rank " +
                       std::to_string(rank_));
}

CoxeterMatrix builtin_matrix(CoxeterFamily family, int rank) {
  switch (family) {
    case CoxeterFamily::A: {
      if (rank < 1) throw InputError("type A needs rank >= 1");
      std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
      for (int i = 0; i < rank; ++i) m[i][i] = 1;
      for (int i = 0; i + 1 < rank; ++i) m[i][i + 1] = m[i + 1][i] = 3;
      return CoxeterMatrix(std::move(m), "A" + std::to_string(rank));
    }
    case CoxeterFamily::D: {
      if (rank < 4) throw InputError("type D needs rank >= 4");
      // s1 - s3, s2 - s3, then the chain s3 - s4 - ... - s_rank.
      std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
      for (int i = 0; i < rank; ++i) m[i][i] = 1;
      m[0][2] = m[2][0] = 3;
      m[1][2] = m[2][1] = 3;
      for (int i = 2; i + 1 < rank; ++i) m[i][i + 1] = m[i + 1][i] = 3;
      return CoxeterMatrix(std::move(m), "D" + std::to_string(rank));
    }
    case CoxeterFamily::AffineA2: {
      if (rank != 3) throw InputError("affine A2 has rank 3");
      return CoxeterMatrix({{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}, "affineA2");
    }
  }
  throw InputError("unsupported Coxeter family");
}

CoxeterMatrix matrix_by_name(std::string_view name) {
  if (name == "affineA2") return builtin_matrix(CoxeterFamily::AffineA2, 3);
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D')) {
    int rank = 0;
    auto digits = name.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rank);
    if (ec == std::errc() && ptr == digits.data() + digits.size())
      return builtin_matrix(name[0] == 'A' ? CoxeterFamily::A : CoxeterFamily::D, rank);
  }
  throw InputError("unknown Coxeter matrix name '" + std::string(name) + "'");
}

CoxeterMatrix matrix_from_json(const nlohmann::json& j) {
  if (j.is_string()) return matrix_by_name(j.get<std::string>());
  if (!j.is_object() || !j.contains("m"))
    throw InputError("Coxeter matrix JSON needs a builtin name or {\"rank\", \"m\"}");
  std::vector<std::vector<int>> m;
  try {
    m = j.at("m").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad Coxeter matrix entries: ") + e.what());
  }
  if (j.contains("rank") && j.at("rank").get<int>() != static_cast<int>(m.size()))
    throw InputError("Coxeter matrix rank does not match its entries");
  return CoxeterMatrix(std::move(m), j.value("name", std::string{}));
}

nlohmann::json matrix_to_json(const CoxeterMatrix& m) {
  return {{"rank", m.rank()}, {"m", m.entries()}};
}

// ---------------------------------------------------------------------------

GroupElement::GroupElement(CoxeterMatrix m, std::vector<std::int64_t> matrix)
    : coxeter_(std::move(m)), matrix_(std::move(matrix)) {
  const int n = coxeter_.rank();
  const Mat id = identity_matrix(n);

  // Strip right descents to reach the identity; the stripped letters give
  // w^{-1} as a product of simple reflections.
  Mat cur = matrix_;
  Mat inv = id;
  while (cur != id) {
    int d = 1;
    while (d <= n && !column_negative(cur, n, d)) ++d;
    right_multiply_generator(coxeter_, cur, d);
    right_multiply_generator(coxeter_, inv, d);
  }
  // Greedy smallest left descent of w, i.e. smallest right descent of w^{-1}.
  while (inv != id) {
    int d = 1;
    while (d <= n && !column_negative(inv, n, d)) ++d;
    word_.push_back(d);
    right_multiply_generator(coxeter_, inv, d);
  }
}

bool GroupElement::right_descent(int i) const {
  if (!coxeter_.valid_generator(i)) throw InputError("invalid generator index " + std::to_string(i));
  return column_negative(matrix_, coxeter_.rank(), i);
}

bool GroupElement::left_descent(int i) const {
  if (!coxeter_.valid_generator(i)) throw InputError("invalid generator index " + std::to_string(i));
  return inverse().right_descent(i);
}

std::vector<int> GroupElement::right_descents() const {
  std::vector<int> out;
  for (int i = 1; i <= coxeter_.rank(); ++i)
    if (right_descent(i)) out.push_back(i);
  return out;
}

GroupElement GroupElement::times_generator(int i) const {
  if (!coxeter_.valid_generator(i)) throw InputError("invalid generator index " + std::to_string(i));
  Mat m = matrix_;
  right_multiply_generator(coxeter_, m, i);
  return GroupElement(coxeter_, std::move(m));
}

GroupElement GroupElement::inverse() const {
  Word rev(word_.rbegin(), word_.rend());
  return element_from_word(coxeter_, rev);
}

bool operator<(const GroupElement& a, const GroupElement& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.word_ < b.word_;
}

GroupElement identity(const CoxeterMatrix& m) {
  return GroupElement(m, identity_matrix(m.rank()));
}

GroupElement element_from_word(const CoxeterMatrix& m, const Word& w) {
  m.check_word(w);
  Mat mat = identity_matrix(m.rank());
  for (int letter : w) right_multiply_generator(m, mat, letter);
  return GroupElement(m, std::move(mat));
}

GroupElement multiply(const GroupElement& u, const GroupElement& v) {
  if (!(u.coxeter() == v.coxeter())) throw InputError("multiply: elements of different groups");
  const int n = u.coxeter().rank();
  Mat out(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const auto x = u.matrix()[r * n + k];
      if (x == 0) continue;
      for (int c = 0; c < n; ++c) out[r * n + c] += x * v.matrix()[k * n + c];
    }
  return GroupElement(u.coxeter(), std::move(out));
}

bool right_descent(const GroupElement& w, int i) { return w.right_descent(i); }

Word canonical_word(const GroupElement& w) { return w.canonical_word(); }

bool is_reduced(const CoxeterMatrix& m, const Word& w) {
  return element_from_word(m, w).length() == static_cast<int>(w.size());
}

std::vector<GroupElement> elements_up_to_length(const CoxeterMatrix& m, int bound) {
  std::vector<GroupElement> all{identity(m)};
  std::vector<GroupElement> frontier = all;
  for (int len = 1; len <= bound; ++len) {
    std::map<Word, GroupElement> next;
    for (const auto& w : frontier)
      for (int i = 1; i <= m.rank(); ++i) {
        if (w.right_descent(i)) continue;
        auto x = w.times_generator(i);
        next.emplace(x.canonical_word(), std::move(x));
      }
    frontier.clear();
    for (auto& [word, x] : next) frontier.push_back(x);
    std::sort(frontier.begin(), frontier.end());
    all.insert(all.end(), frontier.begin(), frontier.end());
  }
  return all;
}

namespace {

void collect_reduced_words(const GroupElement& w, std::map<Word, std::vector<Word>>& memo,
                           std::size_t limit) {
  if (memo.count(w.canonical_word())) return;
  std::vector<Word> out;
  if (w.is_identity()) {
    out.push_back({});
  } else {
    for (int d : w.right_descents()) {
      auto shorter = w.times_generator(d);
      collect_reduced_words(shorter, memo, limit);
      for (const auto& prefix : memo.at(shorter.canonical_word())) {
        if (out.size() >= limit) break;
        Word x = prefix;
        x.push_back(d);
        out.push_back(std::move(x));
      }
    }
    std::sort(out.begin(), out.end());
  }
  memo.emplace(w.canonical_word(), std::move(out));
}

}  // namespace

std::vector<Word> reduced_words(const GroupElement& w, std::size_t limit) {
  std::map<Word, std::vector<Word>> memo;
  collect_reduced_words(w, memo, limit);
  auto out = memo.at(w.canonical_word());
  if (out.size() > limit) out.resize(limit);
  return out;
}

std::string word_label(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (int letter : w) out += "s" + std::to_string(letter);
  return out;
}

Word parse_word(std::string_view text) {
  Word out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ',' || text[pos] == ' ')) ++pos;
    if (pos >= text.size()) break;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + pos)
      throw InputError("malformed word '" + std::string(text) + "'");
    out.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos < text.size() && text[pos] != ',' && text[pos] != ' ')
      throw InputError("malformed word '" + std::string(text) + "'");
  }
  return out;
}

}  // namespace bruhatspec
