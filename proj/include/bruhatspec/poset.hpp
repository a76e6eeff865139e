#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bruhatspec {

using Edge = std::pair<std::size_t, std::size_t>;

/// Finite poset on elements 0..n-1 with opaque text labels.
///
/// The order relation is stored reflexive-transitive closed. Hasse edges are
/// the transitive reduction, sorted lexicographically. The optional rank
/// function, when present, increases by exactly one along every cover.
class LabeledPoset {
 public:
  LabeledPoset() = default;

  /// Closes `relations` (pairs x <= y) reflexively and transitively.
  /// Throws InputError if the closure is not antisymmetric.
  static LabeledPoset build(std::vector<std::string> labels, const std::vector<Edge>& relations);

  /// `leq` must be an n*n row-major relation; it is closed and validated.
  static LabeledPoset from_relation(std::vector<std::string> labels, std::vector<char> leq);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool leq(std::size_t x, std::size_t y) const { return leq_[x * size() + y] != 0; }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }
  bool comparable(std::size_t x, std::size_t y) const { return leq(x, y) || leq(y, x); }

  const std::vector<Edge>& hasse() const { return hasse_; }
  std::vector<std::size_t> lower_covers(std::size_t x) const;
  std::vector<std::size_t> upper_covers(std::size_t x) const;
  bool covers(std::size_t lower, std::size_t upper) const;

  const std::optional<std::vector<int>>& rank() const { return rank_; }
  /// Attaches a rank function; throws InputError unless covers step by +1.
  LabeledPoset with_rank(std::vector<int> rank) const;
  /// Attaches the graded rank (distance from the minimal elements) if the
  /// poset is graded, otherwise returns a copy without rank.
  LabeledPoset with_graded_rank() const;

  /// Per-element tags (partition blocks etc.), carried through export.
  const std::vector<std::string>& tags() const { return tags_; }
  LabeledPoset with_tags(std::vector<std::string> tags) const;

 private:
  void derive_hasse();

  std::vector<std::string> labels_;
  std::vector<char> leq_;
  std::vector<Edge> hasse_;
  std::vector<std::vector<std::size_t>> down_, up_;
  std::optional<std::vector<int>> rank_;
  std::vector<std::string> tags_;
};

/// Rank function if every maximal chain from a minimal element to x has the
/// same length for all x (graded), otherwise nullopt.
std::optional<std::vector<int>> graded_rank(const LabeledPoset& p);

/// Length of the longest chain; throws InputError for non-graded posets.
int height(const LabeledPoset& p);

std::vector<int> rank_profile(const LabeledPoset& p);

LabeledPoset chain(std::size_t n);
LabeledPoset antichain(std::size_t n);
LabeledPoset boolean_lattice(std::size_t atoms);
/// The two-element chain {0 < 1}.
inline LabeledPoset two_chain() { return chain(2); }

/// Componentwise order; element (i, j) has index i * |Q| + j and label "(p,q)".
LabeledPoset product(const LabeledPoset& p, const LabeledPoset& q);
/// Elements of P first, then Q; no relations across.
LabeledPoset disjoint_union(const LabeledPoset& p, const LabeledPoset& q);
/// Induced order on `elements` (in the given order).
LabeledPoset subposet(const LabeledPoset& p, const std::vector<std::size_t>& elements);

bool is_upper_set(const LabeledPoset& p, const std::vector<std::size_t>& subset);
bool is_lower_set(const LabeledPoset& p, const std::vector<std::size_t>& subset);
/// Sorted indices of the upper set generated by `generators`.
std::vector<std::size_t> upper_set_generated_by(const LabeledPoset& p,
                                                const std::vector<std::size_t>& generators);

/// A map between two posets with its properties computed on construction.
class PosetMap {
 public:
  PosetMap() = default;
  PosetMap(const LabeledPoset& source, const LabeledPoset& target,
           std::vector<std::size_t> assignment);

  std::size_t operator()(std::size_t x) const { return assignment_.at(x); }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  std::size_t source_size() const { return assignment_.size(); }
  std::size_t target_size() const { return target_size_; }

  bool order_preserving() const { return order_preserving_; }
  bool injective() const { return injective_; }
  bool surjective() const { return surjective_; }
  bool bijective() const { return injective_ && surjective_; }
  /// Bijective, order-preserving and order-reflecting.
  bool is_isomorphism() const { return is_isomorphism_; }

  /// Inverse assignment; only valid for bijections.
  std::vector<std::size_t> inverse() const;

 private:
  std::vector<std::size_t> assignment_;
  std::size_t target_size_ = 0;
  bool order_preserving_ = false;
  bool injective_ = false;
  bool surjective_ = false;
  bool is_isomorphism_ = false;
};

/// A pair of element sets that an isomorphism must map onto each other.
struct BlockConstraint {
  std::vector<std::size_t> in_source;
  std::vector<std::size_t> in_target;
};

/// Rank-stratified backtracking with invariant refinement. Elements outside
/// every block may only go to target elements outside every block. Candidate
/// targets are tried in label order, so the result is deterministic.
std::optional<PosetMap> find_isomorphism(const LabeledPoset& p, const LabeledPoset& q,
                                         const std::vector<BlockConstraint>& constraints = {});

inline bool isomorphic(const LabeledPoset& p, const LabeledPoset& q) {
  return find_isomorphism(p, q).has_value();
}

/// Pushout of C <-f- A -g-> B in finite posets: the quotient of B ⊔ C by
/// f(a) ~ g(a) with the induced order, cycles collapsed.
struct PosetPushout {
  LabeledPoset poset;
  std::vector<std::size_t> from_b;  // theta_B
  std::vector<std::size_t> from_c;  // theta_C
};
PosetPushout pushout(const LabeledPoset& a, const LabeledPoset& b, const LabeledPoset& c,
                     const std::vector<std::size_t>& f_to_b, const std::vector<std::size_t>& g_to_c);

enum class ExportFormat { Dot, Json };

/// DOT: bottom-to-top, one rank=same layer per rank. JSON: the poset schema
/// {"elements":[{"id","label","rank"}],"hasse":[[src,dst],...]}.
std::string export_poset(const LabeledPoset& p, ExportFormat format);
ExportFormat parse_export_format(const std::string& name);

}  // namespace bruhatspec
