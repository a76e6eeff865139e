#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bruhatspec/bruhat.hpp"
#include "bruhatspec/error.hpp"
#include "bruhatspec/poset.hpp"

namespace bruhatspec {

/// A poset Ptilde = P ⊔ Px with a map phi_tilde : Ptilde -> P.
///
/// `P` and `Px` are element indices of `ptilde`; `phi_tilde[i]` is an index
/// of `ptilde` lying in `P`. `projection` marks phi_tilde as idempotent,
/// which relaxes hypothesis (b) of the extension step to W1 ∪ W2.
struct SetupData {
  LabeledPoset ptilde;
  std::vector<std::size_t> P;
  std::vector<std::size_t> Px;
  std::vector<std::size_t> phi_tilde;
  bool projection = false;
};

struct SetupReport {
  bool passed = true;
  std::string failed_clause;
};

/// Checks, in order: P and Px partition Ptilde; Px is an upper set;
/// phi_tilde maps into P and is order-preserving; it restricts to an
/// isomorphism of Px onto its image; phi_tilde(p) <= p on Px;
/// p <= p' iff phi_tilde(p) <= phi_tilde(p') for p in P, p' in Px; and
/// phi_tilde is idempotent when `projection` is set.
SetupReport validate_setup(const SetupData& s);

/// A spectrum poset with its three classes. partner maps each P1 element to
/// an element of P2 that it covers.
struct SpectrumPartition {
  LabeledPoset poset;
  std::vector<std::size_t> P1, P2, P3;
  std::map<std::size_t, std::size_t> partner;
};

/// The unique P2 element covered by p, for every p in P1. Entries of
/// `overrides` (P1 element -> P2 element) are used as given after checking
/// the cover. Throws InputError on a missing or ambiguous partner.
std::map<std::size_t, std::size_t> derive_partners(const LabeledPoset& poset,
                                                   const std::vector<std::size_t>& P1,
                                                   const std::vector<std::size_t>& P2,
                                                   const std::map<std::size_t, std::size_t>& overrides = {});

/// Throws InputError unless P1, P2, P3 partition the poset and every P1
/// element covers its partner in P2.
void check_spectrum_partition(const SpectrumPartition& sp);

/// The Ore step on posets.
///
/// Ptilde lists the old copy of P first (same indices) and then one x-copy
/// per element of P3 in increasing order. iota : P -> Ptilde is therefore the
/// identity on indices and psi_tilde = phi_tilde read in P.
struct OreStep {
  SetupData setup;
  std::vector<std::size_t> iota;
  std::vector<std::size_t> psi_tilde;
  std::map<std::size_t, std::size_t> new_of_p3;
};

/// `labels`, if nonempty, gives all |P| + |P3| labels of Ptilde; otherwise
/// the x-copy of q is labelled "<label of q>+x".
OreStep ore_step(const SpectrumPartition& sp, std::vector<std::string> labels = {});

/// Failure of a hypothesis of the extension step, naming the offending
/// element of [1, wbar] (or of Ptilde for a clause stated there).
class ExtensionHypothesisError : public HypothesisError {
 public:
  ExtensionHypothesisError(char hypothesis, std::string element, const std::string& what)
      : HypothesisError(what), hypothesis_(hypothesis), element_(std::move(element)) {}
  char hypothesis() const { return hypothesis_; }
  const std::string& element() const { return element_; }

 private:
  char hypothesis_;
  std::string element_;
};

/// Hypothesis (a): nabla(W3) = phi_tilde(Px). `nabla` maps indices of
/// part.lower to indices of s.ptilde. Returns a description of the first
/// offending element, or nullopt.
std::optional<std::string> hypothesis_a_violation(const std::vector<std::size_t>& nabla,
                                                  const BruhatPartition& part, const SetupData& s);

/// Hypothesis (b): phi_tilde nabla = nabla Phi on W1 ∪ W2 if s.projection,
/// otherwise on all of [1, wbar].
std::optional<std::string> hypothesis_b_violation(const std::vector<std::size_t>& nabla,
                                                  const BruhatPartition& part, const SetupData& s);

/// The extension of nabla : [1, wbar] ≅ P to [1, wbar a] ≅ Ptilde, equal to
/// nabla below wbar and to (phi_tilde|Px)^{-1} nabla(wa) on W4. Throws
/// InputError if nabla is not an isomorphism onto P and
/// ExtensionHypothesisError if (a) or (b) fails.
PosetMap extend_iso(const std::vector<std::size_t>& nabla, const BruhatPartition& part, const SetupData& s);

struct SquareReport {
  bool commutes = true;
  bool at_most_two_to_one = true;
  /// Every element of P3 has a fibre of size 2 under psi_tilde.
  bool p3_fibres_doubled = true;
  /// Size-2 fibres outside P3 lie over partners of P1 elements only.
  bool extra_fibres_over_partners = true;
  std::size_t mismatches = 0;
  std::string first_failure;

  bool passed() const {
    return commutes && at_most_two_to_one && p3_fibres_doubled && extra_fibres_over_partners;
  }
};

/// psi_tilde ∘ nabla_tilde = nabla ∘ Phi on [1, wbar a], read in P, plus the
/// fibre structure of psi_tilde.
SquareReport commuting_square(const std::vector<std::size_t>& nabla, const PosetMap& nabla_tilde,
                              const BruhatPartition& part, const SpectrumPartition& sp, const OreStep& step);

}  // namespace bruhatspec
