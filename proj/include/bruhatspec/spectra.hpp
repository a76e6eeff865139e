#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bruhatspec/extension.hpp"
#include "bruhatspec/poset.hpp"
#include "json.hpp"

namespace bruhatspec {

/// A product of symbols with scalars dropped. The unit monomial has no
/// factors and is_unit set; no proper prime contains it.
struct Monomial {
  std::vector<std::string> factors;
  bool is_unit = false;

  static Monomial unit() { return {{}, true}; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// A prime modelled by the normal generators that generate it.
struct PrimeLabel {
  std::set<std::string> generators;

  /// "0" for the zero ideal, otherwise "<x1,x2>" in symbol order.
  std::string text() const;
  friend bool operator==(const PrimeLabel&, const PrimeLabel&) = default;
  friend auto operator<=>(const PrimeLabel&, const PrimeLabel&) = default;
};

/// True iff some factor of m is a generator of p; false for the unit.
bool in_ideal(const Monomial& m, const PrimeLabel& p);

/// symbol -> the monomials of its image; a missing symbol or an empty list
/// means the symbol is killed.
using DeltaMap = std::map<std::string, std::vector<Monomial>>;

/// The combinatorial model of a torus-invariant spectrum at one step.
struct SpectrumModel {
  std::vector<std::string> symbols;
  std::vector<PrimeLabel> primes;
  /// Labels are the prime texts, in the order of `primes`.
  LabeledPoset order;
  DeltaMap delta;
  std::map<std::string, std::string> rewrites;
  /// P1 prime text -> P2 prime text, overriding the derived partner.
  std::map<std::string, std::string> partner_overrides;

  /// Order by inclusion of generator sets.
  static SpectrumModel from_inclusion(std::vector<std::string> symbols, std::vector<PrimeLabel> primes,
                                      DeltaMap delta = {});
  /// Throws InputError unless primes are distinct, use only model symbols,
  /// and the order contains every inclusion between labels.
  void validate() const;
};

/// The union of the generators of every prime below p; membership of
/// delta-images is tested against this set.
std::vector<PrimeLabel> saturated_labels(const SpectrumModel& model);

/// P3: every delta-image of every symbol lies in p. P2: otherwise, but the
/// delta-image of every generator of p lies in p. P1: the rest. Generators
/// and membership use saturated labels.
SpectrumPartition classify(const SpectrumModel& model);

nlohmann::ordered_json monomial_to_json(const Monomial& m);
/// A list of symbols, with [] read as the unit, or {"factors":[...],"unit":bool}.
Monomial monomial_from_json(const nlohmann::json& j);
nlohmann::ordered_json delta_to_json(const DeltaMap& d);
DeltaMap delta_from_json(const nlohmann::json& j);

}  // namespace bruhatspec
