#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bruhatspec {

/// A word in the simple generators, 1-based (s_1 is letter 1).
using Word = std::vector<int>;

enum class CoxeterFamily { A, D, AffineA2 };

/// Symmetric Coxeter matrix restricted to the crystallographic values
/// {2, 3, 4, 6, infinity} off the diagonal. Infinity is stored as 0.
///
/// The matrix also carries the integer reflection representation used to
/// realize group elements; it is built once and shared between copies.
class CoxeterMatrix {
 public:
  static constexpr int kInfinity = 0;

  explicit CoxeterMatrix(std::vector<std::vector<int>> entries, std::string name = {});

  int rank() const { return rank_; }
  /// Entry m_ij for 1-based generator indices.
  int m(int i, int j) const;
  std::vector<std::vector<int>> entries() const;
  const std::string& name() const { return name_; }

  bool valid_generator(int i) const { return i >= 1 && i <= rank_; }
  void check_word(const Word& w) const;

  /// Column j of the action of s_i on the root lattice is e_j - cartan(i,j) e_i.
  std::int64_t cartan(int i, int j) const { return cartan_[(i - 1) * rank_ + (j - 1)]; }

  friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b) {
    return a.rank_ == b.rank_ && a.m_ == b.m_;
  }

 private:
  int rank_ = 0;
  std::vector<int> m_;
  std::vector<std::int64_t> cartan_;
  std::string name_;
};

CoxeterMatrix builtin_matrix(CoxeterFamily family, int rank);

/// "A<k>", "D<k>" or "affineA2".
CoxeterMatrix matrix_by_name(std::string_view name);

/// {"rank": n, "m": [[...]]} with infinity encoded as 0, or a builtin name string.
CoxeterMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const CoxeterMatrix& m);

/// Group element stored as its matrix in the reflection representation,
/// together with the lexicographically least reduced word.
class GroupElement {
 public:
  const CoxeterMatrix& coxeter() const { return coxeter_; }
  const std::vector<std::int64_t>& matrix() const { return matrix_; }
  const Word& canonical_word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_identity() const { return word_.empty(); }

  /// l(w s_i) < l(w), read off the sign of the root w(alpha_i).
  bool right_descent(int i) const;
  /// l(s_i w) < l(w).
  bool left_descent(int i) const;
  std::vector<int> right_descents() const;

  GroupElement times_generator(int i) const;
  GroupElement inverse() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.coxeter_ == b.coxeter_ && a.matrix_ == b.matrix_;
  }
  /// Shortlex on canonical words; used for deterministic orderings.
  friend bool operator<(const GroupElement& a, const GroupElement& b);

 private:
  friend GroupElement identity(const CoxeterMatrix& m);
  friend GroupElement element_from_word(const CoxeterMatrix& m, const Word& w);
  friend GroupElement multiply(const GroupElement& u, const GroupElement& v);

  GroupElement(CoxeterMatrix m, std::vector<std::int64_t> matrix);

  CoxeterMatrix coxeter_;
  std::vector<std::int64_t> matrix_;
  Word word_;
};

GroupElement identity(const CoxeterMatrix& m);
GroupElement element_from_word(const CoxeterMatrix& m, const Word& w);
GroupElement multiply(const GroupElement& u, const GroupElement& v);
bool right_descent(const GroupElement& w, int i);
Word canonical_word(const GroupElement& w);
bool is_reduced(const CoxeterMatrix& m, const Word& w);

/// Every element of length <= bound, in shortlex order.
std::vector<GroupElement> elements_up_to_length(const CoxeterMatrix& m, int bound);

/// All reduced words of w in lexicographic order, at most `limit` of them.
std::vector<Word> reduced_words(const GroupElement& w, std::size_t limit = 1u << 16);

/// "e" for the empty word, otherwise "s2s1s3".
std::string word_label(const Word& w);
/// Parses "3,2,1,2,3" (commas or spaces). The empty string is the empty word.
Word parse_word(std::string_view text);

}  // namespace bruhatspec
