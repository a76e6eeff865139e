#include "bruhatspec/spectra.hpp"

#include <algorithm>

#include "bruhatspec/error.hpp"

namespace bruhatspec {

std::string PrimeLabel::text() const {
  if (generators.empty()) return "0";
  std::string out = "<";
  for (const auto& g : generators) out += (out.size() > 1 ? "," : "") + g;
  return out + ">";
}

bool in_ideal(const Monomial& m, const PrimeLabel& p) {
  if (m.is_unit) return false;
  return std::any_of(m.factors.begin(), m.factors.end(), [&](const std::string& f) { return p.generators.count(f) != 0; });
}

SpectrumModel SpectrumModel::from_inclusion(std::vector<std::string> symbols, std::vector<PrimeLabel> primes,
                                            DeltaMap delta) {
  std::vector<std::string> labels;
  std::vector<Edge> rel;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    labels.push_back(primes[i].text());
    for (std::size_t j = 0; j < primes.size(); ++j)
      if (std::includes(primes[j].generators.begin(), primes[j].generators.end(), primes[i].generators.begin(),
                        primes[i].generators.end()))
        rel.emplace_back(i, j);
  }
  SpectrumModel m;
  m.symbols = std::move(symbols);
  m.primes = std::move(primes);
  m.order = LabeledPoset::build(std::move(labels), rel).with_graded_rank();
  m.delta = std::move(delta);
  m.validate();
  return m;
}

void SpectrumModel::validate() const {
  if (order.size() != primes.size()) throw InputError("spectrum model: order and primes differ in size");
  const std::set<std::string> alphabet(symbols.begin(), symbols.end());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (order.label(i) != primes[i].text())
      throw InputError("spectrum model: order label " + order.label(i) + " does not match prime " + primes[i].text());
    for (const auto& g : primes[i].generators)
      if (!alphabet.count(g)) throw InputError("spectrum model: prime " + primes[i].text() + " uses unknown symbol " + g);
    for (std::size_t j = 0; j < primes.size(); ++j) {
      if (i != j && primes[i] == primes[j]) throw InputError("spectrum model: repeated prime " + primes[i].text());
      const auto& a = primes[i].generators;
      const auto& b = primes[j].generators;
      if (std::includes(b.begin(), b.end(), a.begin(), a.end()) && !order.leq(i, j))
        throw InputError("spectrum model: " + primes[i].text() + " ⊆ " + primes[j].text() + " but not below it");
    }
  }
  for (const auto& [symbol, images] : delta) {
    for (const auto& m : images) {
      if (m.is_unit && !m.factors.empty()) throw InputError("spectrum model: unit monomial with factors");
      for (const auto& f : m.factors)
        if (!alphabet.count(f)) throw InputError("spectrum model: delta(" + symbol + ") uses unknown symbol " + f);
    }
  }
}

std::vector<PrimeLabel> saturated_labels(const SpectrumModel& model) {
  std::vector<PrimeLabel> out(model.primes.size());
  for (std::size_t p = 0; p < model.primes.size(); ++p)
    for (std::size_t q = 0; q < model.primes.size(); ++q)
      if (model.order.leq(q, p)) out[p].generators.insert(model.primes[q].generators.begin(), model.primes[q].generators.end());
  return out;
}

SpectrumPartition classify(const SpectrumModel& model) {
  model.validate();
  const auto saturated = saturated_labels(model);
  auto image_inside = [&](const std::string& symbol, const PrimeLabel& p) {
    auto it = model.delta.find(symbol);
    if (it == model.delta.end()) return true;
    return std::all_of(it->second.begin(), it->second.end(), [&](const Monomial& m) { return in_ideal(m, p); });
  };
  SpectrumPartition sp;
  sp.poset = model.order;
  for (std::size_t p = 0; p < model.primes.size(); ++p) {
    const auto& label = saturated[p];
    const bool contains_all =
        std::all_of(model.symbols.begin(), model.symbols.end(), [&](const std::string& s) { return image_inside(s, label); }) &&
        std::all_of(model.delta.begin(), model.delta.end(), [&](const auto& kv) { return image_inside(kv.first, label); });
    if (contains_all) {
      sp.P3.push_back(p);
      continue;
    }
    const bool invariant = std::all_of(label.generators.begin(), label.generators.end(),
                                       [&](const std::string& g) { return image_inside(g, label); });
    (invariant ? sp.P2 : sp.P1).push_back(p);
  }
  std::map<std::size_t, std::size_t> overrides;
  auto index_of = [&](const std::string& text) {
    for (std::size_t i = 0; i < model.primes.size(); ++i)
      if (model.primes[i].text() == text) return i;
    throw InputError("partner override names unknown prime " + text);
  };
  for (const auto& [from, to] : model.partner_overrides) overrides[index_of(from)] = index_of(to);
  sp.partner = derive_partners(sp.poset, sp.P1, sp.P2, overrides);
  return sp;
}

nlohmann::ordered_json monomial_to_json(const Monomial& m) {
  if (m.is_unit) return {{"factors", nlohmann::ordered_json::array()}, {"unit", true}};
  return m.factors;
}

Monomial monomial_from_json(const nlohmann::json& j) {
  Monomial m;
  if (j.is_array()) {
    for (const auto& f : j) {
      if (!f.is_string()) throw InputError("monomial factors must be symbol strings");
      m.factors.push_back(f.get<std::string>());
    }
    m.is_unit = m.factors.empty();
    return m;
  }
  if (j.is_object()) {
    m.factors = monomial_from_json(j.value("factors", nlohmann::json::array())).factors;
    m.is_unit = j.value("unit", false);
    if (m.is_unit && !m.factors.empty()) throw InputError("unit monomial with factors");
    if (!m.is_unit && m.factors.empty()) throw InputError("monomial without factors must set \"unit\": true");
    return m;
  }
  throw InputError("a monomial is a list of symbols or {\"factors\":[...],\"unit\":bool}");
}

nlohmann::ordered_json delta_to_json(const DeltaMap& d) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [symbol, images] : d) {
    auto& list = j[symbol] = nlohmann::ordered_json::array();
    for (const auto& m : images) list.push_back(monomial_to_json(m));
  }
  return j;
}

DeltaMap delta_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("delta must be an object mapping symbols to monomial lists");
  DeltaMap d;
  for (const auto& [symbol, images] : j.items()) {
    if (!images.is_array()) throw InputError("delta(" + symbol + ") must be a list of monomials");
    auto& list = d[symbol];
    for (const auto& m : images) list.push_back(monomial_from_json(m));
  }
  return d;
}

}  // namespace bruhatspec
