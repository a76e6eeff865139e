#include "bruhatspec/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bruhatspec {

namespace {

using ojson = nlohmann::ordered_json;

const char* side_name(StepSide s) { return s == StepSide::Left ? "left" : "right"; }

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }))
      throw InputError("unknown key \"" + key + "\" in " + where);
}

std::map<std::string, std::string> string_map(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw InputError(where + " must be an object of strings");
    out[k] = v.get<std::string>();
  }
  return out;
}

PipelineStep step_from_json(const nlohmann::json& j, std::size_t k) {
  const std::string where = "step " + std::to_string(k);
  if (!j.is_object()) throw InputError(where + " must be an object");
  reject_unknown_keys(j, {"gen", "side", "var", "delta", "rewrite", "partner"}, where);
  PipelineStep s;
  if (j.contains("gen") && !j["gen"].is_null()) {
    if (!j["gen"].is_number_integer()) throw InputError(where + ": gen must be an integer");
    s.gen = j["gen"].get<int>();
  }
  const std::string side = j.value("side", "right");
  if (side == "left")
    s.side = StepSide::Left;
  else if (side != "right")
    throw InputError(where + ": side must be \"left\" or \"right\"");
  if (!j.contains("var") || !j["var"].is_string() || j["var"].get<std::string>().empty())
    throw InputError(where + ": var must be a nonempty string");
  s.var = j["var"].get<std::string>();
  if (j.contains("delta")) s.delta = delta_from_json(j["delta"]);
  if (j.contains("rewrite")) s.rewrite = string_map(j["rewrite"], where + ": rewrite");
  if (j.contains("partner")) s.partner = string_map(j["partner"], where + ": partner");
  return s;
}

}  // namespace

PipelineSpec pipeline_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("a pipeline must be a JSON object");
  reject_unknown_keys(j, {"name", "coxeter", "generator_names", "steps", "expect", "caveat"}, "pipeline");
  PipelineSpec spec;
  try {
    spec.name = j.value("name", "");
    if (!j.contains("coxeter")) throw InputError("pipeline: missing \"coxeter\"");
    spec.coxeter = matrix_from_json(j["coxeter"]);
    if (j.contains("generator_names")) spec.generator_names = j["generator_names"].get<std::vector<std::string>>();
    spec.caveat = j.value("caveat", "");
    if (!j.contains("steps") || !j["steps"].is_array() || j["steps"].empty())
      throw InputError("pipeline: \"steps\" must be a nonempty list");
    std::size_t k = 1;
    for (const auto& s : j["steps"]) spec.steps.push_back(step_from_json(s, k++));
    if (j.contains("expect")) {
      const auto& e = j["expect"];
      reject_unknown_keys(e, {"size", "rank_profile", "word", "labels"}, "expect");
      if (e.contains("size")) spec.expect.size = e["size"].get<std::size_t>();
      if (e.contains("rank_profile")) spec.expect.rank_profile = e["rank_profile"].get<std::vector<int>>();
      if (e.contains("word")) spec.expect.word = e["word"].get<Word>();
      if (e.contains("labels")) spec.expect.labels = string_map(e["labels"], "expect.labels");
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InputError("pipeline: " + std::string(ex.what()));
  }
  for (const auto& s : spec.steps)
    if (s.gen && !spec.coxeter.valid_generator(*s.gen))
      throw InputError("pipeline: generator " + std::to_string(*s.gen) + " out of range");
  return spec;
}

ojson pipeline_to_json(const PipelineSpec& spec) {
  ojson j;
  j["name"] = spec.name;
  bool named = false;
  if (!spec.coxeter.name().empty()) {
    try {
      named = matrix_by_name(spec.coxeter.name()) == spec.coxeter;
    } catch (const Error&) {
    }
  }
  if (named)
    j["coxeter"] = spec.coxeter.name();
  else
    j["coxeter"] = matrix_to_json(spec.coxeter);
  if (!spec.generator_names.empty()) j["generator_names"] = spec.generator_names;
  if (!spec.caveat.empty()) j["caveat"] = spec.caveat;
  j["steps"] = ojson::array();
  for (const auto& s : spec.steps) {
    ojson step;
    if (s.gen) step["gen"] = *s.gen;
    if (s.side == StepSide::Left) step["side"] = "left";
    step["var"] = s.var;
    if (!s.delta.empty()) step["delta"] = delta_to_json(s.delta);
    if (!s.rewrite.empty()) step["rewrite"] = s.rewrite;
    if (!s.partner.empty()) step["partner"] = s.partner;
    j["steps"].push_back(std::move(step));
  }
  ojson e = ojson::object();
  if (spec.expect.size) e["size"] = *spec.expect.size;
  if (spec.expect.rank_profile) e["rank_profile"] = *spec.expect.rank_profile;
  if (spec.expect.word) e["word"] = *spec.expect.word;
  if (!spec.expect.labels.empty()) e["labels"] = spec.expect.labels;
  if (!e.empty()) j["expect"] = std::move(e);
  return j;
}

PipelineSpec load_pipeline_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read pipeline file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw InputError("pipeline file " + path + ": " + ex.what());
  }
  try {
    return pipeline_from_json(j);
  } catch (const InputError& ex) {
    throw InputError("pipeline file " + path + ": " + ex.what());
  }
}

// ---------------------------------------------------------------------------

ojson StepReport::to_json() const {
  ojson j;
  j["step"] = step;
  if (gen)
    j["gen"] = *gen;
  else
    j["gen"] = nullptr;
  j["side"] = side_name(side);
  j["var"] = var;
  j["applicable"] = applicable;
  if (applicable) {
    j["hypothesis_a"] = hypothesis_a;
    j["hypothesis_b"] = hypothesis_b;
    j["square_commutes"] = square_commutes;
  } else {
    j["hypothesis_a"] = nullptr;
    j["hypothesis_b"] = nullptr;
    j["square_commutes"] = nullptr;
  }
  j["setup_valid"] = setup_valid;
  j["fibres_ok"] = fibres_ok;
  j["nabla_source"] = nabla_source;
  j["wbar"] = wbar;
  if (gen) j["partitioned"] = word_label(partitioned);
  j["sizes"] = {{"P", size_P}, {"P1", size_P1}, {"P2", size_P2}, {"P3", size_P3}, {"new", size_new}};
  return j;
}

std::string PipelineResult::prime_of(const Word& w) const {
  for (std::size_t i = 0; i < interval.size(); ++i)
    if (interval.elements[i].canonical_word() == w) return poset.label(nabla[i]);
  throw InputError(word_label(w) + " is not in the final interval");
}

ojson PipelineResult::to_json() const {
  ojson j;
  j["pipeline"] = name;
  j["final_word"] = word_label(final_word);
  j["size"] = poset.size();
  j["rank_profile"] = rank_profile(poset);
  j["height"] = height(poset);
  j["steps"] = ojson::array();
  for (const auto& s : steps) j["steps"].push_back(s.to_json());
  ojson corr = ojson::array();
  for (std::size_t i = 0; i < interval.size(); ++i)
    corr.push_back({interval.poset.label(i), poset.label(nabla[i])});
  j["nabla"] = std::move(corr);
  j["expect_met"] = expect_met();
  j["expect_failures"] = expect_failures;
  return j;
}

PipelineFailure::PipelineFailure(std::string pipeline, std::size_t step, std::string reason)
    : Error("pipeline " + pipeline + ", step " + std::to_string(step) + ": " + reason),
      pipeline_(std::move(pipeline)),
      step_(step),
      reason_(std::move(reason)) {}

ojson PipelineFailure::to_json() const {
  ojson j;
  j["pipeline"] = pipeline_;
  j["step"] = step_;
  j["reason"] = reason_;
  return j;
}

namespace {

// Indices of `to` elements re-read from `from` via an element-wise map.
template <class F>
std::vector<std::size_t> transport(const BruhatInterval& from, const std::vector<std::size_t>& values,
                                   const BruhatInterval& to, F&& map_element) {
  std::vector<std::size_t> out(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) out[i] = values.at(from.index_of(map_element(to.elements[i])));
  return out;
}

PrimeLabel rewritten(const PrimeLabel& p, const std::map<std::string, std::string>& rewrite) {
  PrimeLabel out;
  for (const auto& g : p.generators) {
    auto it = rewrite.find(g);
    out.generators.insert(it == rewrite.end() ? g : it->second);
  }
  return out;
}

LabeledPoset relabel(const LabeledPoset& p, const std::vector<PrimeLabel>& primes) {
  std::vector<std::string> labels;
  for (const auto& q : primes) labels.push_back(q.text());
  std::vector<char> leq(p.size() * p.size());
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) leq[x * p.size() + y] = p.leq(x, y);
  return LabeledPoset::from_relation(std::move(labels), std::move(leq)).with_graded_rank();
}

}  // namespace

PipelineResult run_pipeline(const PipelineSpec& spec) {
  const auto& m = spec.coxeter;
  if (spec.steps.empty()) throw PipelineFailure(spec.name, 0, "no steps");

  GroupElement wbar = identity(m);
  BruhatInterval current = interval(m, {});
  std::vector<PrimeLabel> primes{PrimeLabel{}};
  LabeledPoset poset = LabeledPoset::build({"0"}, {}).with_graded_rank();
  std::vector<std::size_t> nabla{0};
  std::vector<std::string> symbols;
  std::vector<StepReport> reports;

  for (std::size_t k = 1; k <= spec.steps.size(); ++k) {
    const auto& step = spec.steps[k - 1];
    auto fail = [&](const std::string& reason) { throw PipelineFailure(spec.name, k, reason); };
    if (std::find(symbols.begin(), symbols.end(), step.var) != symbols.end())
      fail("variable " + step.var + " is already in use");

    SpectrumModel model;
    model.symbols = symbols;
    model.primes = primes;
    model.order = poset;
    model.delta = step.delta;
    model.rewrites = step.rewrite;
    model.partner_overrides = step.partner;
    SpectrumPartition sp;
    try {
      sp = classify(model);
    } catch (const Error& ex) {
      fail(std::string("classification failed: ") + ex.what());
    }

    StepReport report;
    report.step = k;
    report.gen = step.gen;
    report.side = step.side;
    report.var = step.var;
    report.size_P = sp.poset.size();
    report.size_P1 = sp.P1.size();
    report.size_P2 = sp.P2.size();
    report.size_P3 = sp.P3.size();

    std::vector<PrimeLabel> next_primes;
    for (std::size_t p = 0; p < primes.size(); ++p)
      next_primes.push_back(sp.partner.count(p) ? rewritten(primes[p], step.rewrite) : primes[p]);
    for (auto q : sp.P3) {
      PrimeLabel x = primes[q];
      x.generators.insert(step.var);
      next_primes.push_back(std::move(x));
    }
    std::vector<std::string> next_labels;
    for (const auto& p : next_primes) next_labels.push_back(p.text());

    if (!step.gen) {
      if (!sp.P3.empty())
        fail("a step without generator needs P3 empty, found " + std::to_string(sp.P3.size()) + " primes containing delta(R)");
      const auto ore = ore_step(sp, next_labels);
      report.applicable = false;
      report.setup_valid = validate_setup(ore.setup).passed;
      if (!report.setup_valid) fail("Ore step setup invalid: " + validate_setup(ore.setup).failed_clause);
      report.fibres_ok = true;
      report.nabla_source = "unchanged";
      primes = std::move(next_primes);
      poset = relabel(ore.setup.ptilde, primes);
    } else {
      const int a = *step.gen;
      if (!m.valid_generator(a)) fail("generator " + std::to_string(a) + " out of range");
      const bool left = step.side == StepSide::Left;
      const GroupElement v = left ? wbar.inverse() : wbar;
      BruhatPartition part = [&] {
        try {
          return partition(m, v.canonical_word(), a);
        } catch (const Error& ex) {
          fail(std::string("partition failed: ") + ex.what());
          throw;
        }
      }();
      report.partitioned = v.canonical_word();
      const auto inverse_of = [](const GroupElement& g) { return g.inverse(); };
      const auto same = [](const GroupElement& g) { return g; };
      std::vector<std::size_t> nabla_lower =
          left ? transport(current, nabla, part.lower, inverse_of) : transport(current, nabla, part.lower, same);

      const auto ore = ore_step(sp, next_labels);
      const auto setup_report = validate_setup(ore.setup);
      report.setup_valid = setup_report.passed;
      if (!setup_report.passed) fail("Ore step setup invalid: " + setup_report.failed_clause);

      std::vector<int> class_of(sp.poset.size(), 0);
      for (auto p : sp.P1) class_of[p] = 1;
      for (auto p : sp.P2) class_of[p] = 2;
      for (auto p : sp.P3) class_of[p] = 3;
      auto blocks_match = [&](const std::vector<std::size_t>& candidate) {
        for (std::size_t i = 0; i < candidate.size(); ++i)
          if (part.block[part.lower_to_upper[i]] != class_of[candidate[i]]) return false;
        return true;
      };
      auto to_ptilde = [&](const std::vector<std::size_t>& n) {
        std::vector<std::size_t> out;
        for (auto p : n) out.push_back(ore.iota[p]);
        return out;
      };

      std::vector<std::pair<std::string, std::vector<std::size_t>>> candidates;
      if (blocks_match(nabla_lower)) candidates.emplace_back("carried", nabla_lower);
      {
        std::vector<std::size_t> upper_to_lower(part.upper.size(), part.upper.size());
        for (std::size_t i = 0; i < part.lower_to_upper.size(); ++i) upper_to_lower[part.lower_to_upper[i]] = i;
        std::vector<BlockConstraint> constraints(3);
        for (int b = 1; b <= 3; ++b) {
          for (auto w : part.W(b)) constraints[b - 1].in_source.push_back(upper_to_lower[w]);
          constraints[b - 1].in_target = b == 1 ? sp.P1 : b == 2 ? sp.P2 : sp.P3;
        }
        if (auto iso = find_isomorphism(part.lower.poset, sp.poset, constraints))
          if (candidates.empty() || iso->assignment() != candidates.front().second)
            candidates.emplace_back("searched", iso->assignment());
      }
      if (candidates.empty())
        fail("no isomorphism [1, " + word_label(v.canonical_word()) + "] -> spectrum with W_i -> P_i for i = 1, 2, 3");

      std::optional<PosetMap> nabla_tilde;
      std::vector<std::size_t> chosen;
      std::string last_failure;
      for (const auto& [source, candidate] : candidates) {
        const auto n = to_ptilde(candidate);
        const auto va = hypothesis_a_violation(n, part, ore.setup);
        const auto vb = hypothesis_b_violation(n, part, ore.setup);
        report.hypothesis_a = !va;
        report.hypothesis_b = !vb;
        report.nabla_source = source;
        if (va || vb) {
          last_failure = va ? "hypothesis (a) fails: " + *va : "hypothesis (b) fails: " + *vb;
          continue;
        }
        nabla_tilde = extend_iso(n, part, ore.setup);
        chosen = n;
        break;
      }
      if (!nabla_tilde) fail(last_failure);

      const auto square = commuting_square(chosen, *nabla_tilde, part, sp, ore);
      report.square_commutes = square.commutes;
      report.fibres_ok = square.passed();
      if (!square.passed()) fail("commuting square check failed: " + square.first_failure);

      const auto& upper = part.upper;
      if (left) {
        wbar = upper.base.inverse();
        BruhatInterval next = interval(wbar);
        nabla = transport(upper, nabla_tilde->assignment(), next, inverse_of);
        current = std::move(next);
      } else {
        wbar = upper.base;
        nabla = nabla_tilde->assignment();
        current = upper;
      }
      primes = std::move(next_primes);
      poset = relabel(ore.setup.ptilde, primes);
    }
    symbols.push_back(step.var);
    for (const auto& [from, to] : step.rewrite)
      if (std::find(symbols.begin(), symbols.end(), to) == symbols.end()) symbols.push_back(to);
    report.size_new = poset.size();
    report.wbar = word_label(wbar.canonical_word());
    reports.push_back(std::move(report));
  }

  PipelineResult result{spec.name, wbar.canonical_word(), std::move(current), std::move(primes),
                        std::move(poset),  std::move(nabla),        std::move(reports), {}};
  auto& failures = result.expect_failures;
  if (!PosetMap(result.interval.poset, result.poset, result.nabla).is_isomorphism())
    failures.push_back("final nabla is not an isomorphism");
  const auto& e = spec.expect;
  if (e.size && *e.size != result.poset.size())
    failures.push_back("size " + std::to_string(result.poset.size()) + ", expected " + std::to_string(*e.size));
  if (e.rank_profile && *e.rank_profile != rank_profile(result.poset))
    failures.push_back("rank profile differs from the expected one");
  if (e.word && !(element_from_word(m, *e.word) == element_from_word(m, result.final_word)))
    failures.push_back("final word " + word_label(result.final_word) + ", expected " + word_label(*e.word));
  for (const auto& [element, text] : e.labels) {
    std::string got;
    for (std::size_t i = 0; i < result.interval.size(); ++i)
      if (result.interval.poset.label(i) == element) got = result.poset.label(result.nabla[i]);
    if (got != text)
      failures.push_back("prime of " + element + " is " + (got.empty() ? "missing" : got) + ", expected " + text);
  }
  return result;
}

}  // namespace bruhatspec
