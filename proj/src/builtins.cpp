#include <cstdlib>
#include <filesystem>
#include <regex>

#include "bruhatspec/pipeline.hpp"

namespace bruhatspec {

namespace {

constexpr int kMaxFamilyIndex = 8;

const char* kCaveat =
    "Primes are modelled by sets of normal generators with divisibility membership; "
    "this is a modelling assumption for this family, not a theorem.";

Monomial mono(std::initializer_list<std::string> factors) { return Monomial{factors, false}; }

PipelineStep step(std::optional<int> gen, std::string var, DeltaMap delta = {},
                  std::map<std::string, std::string> rewrite = {}, StepSide side = StepSide::Right) {
  PipelineStep s;
  s.gen = gen;
  s.side = side;
  s.var = std::move(var);
  s.delta = std::move(delta);
  s.rewrite = std::move(rewrite);
  return s;
}

std::string omega(int k) { return "Omega" + std::to_string(k); }

std::vector<int> binomial_row(int n) {
  std::vector<int> row{1};
  for (int k = 1; k <= n; ++k) row.push_back(row.back() * (n - k + 1) / k);
  return row;
}

PipelineSpec qaffine(int n) {
  PipelineSpec s;
  s.name = "qaffine" + std::to_string(n);
  s.coxeter = builtin_matrix(CoxeterFamily::A, n);
  s.caveat = kCaveat;
  Word w;
  for (int i = 1; i <= n; ++i) {
    s.steps.push_back(step(i, "x" + std::to_string(i)));
    w.push_back(i);
  }
  s.expect.size = std::size_t{1} << n;
  s.expect.rank_profile = binomial_row(n);
  s.expect.word = w;
  return s;
}

PipelineSpec qmatrix2() {
  PipelineSpec s;
  s.name = "qmatrix2";
  s.coxeter = builtin_matrix(CoxeterFamily::A, 3);
  s.caveat = kCaveat;
  s.steps = {step(2, "x1"), step(1, "x2"), step(3, "x3"),
             step(2, "x4", {{"x1", {mono({"x2", "x3"})}}}, {{"x1", "Dq"}})};
  s.expect.size = 14;
  s.expect.rank_profile = std::vector<int>{1, 3, 5, 4, 1};
  s.expect.word = Word{2, 1, 3, 2};
  return s;
}

PipelineSpec m2_ext_a3() {
  PipelineSpec s = qmatrix2();
  s.name = "m2-ext-A3";
  s.steps.push_back(step(1, "x5", {{"x1", {mono({"x3"})}}, {"x2", {mono({"x4"})}}}));
  s.expect.size = 18;
  s.expect.rank_profile = std::vector<int>{1, 3, 5, 5, 3, 1};
  s.expect.word = Word{2, 1, 3, 2, 1};
  return s;
}

PipelineSpec m2_ext_affine_a2() {
  PipelineSpec s;
  s.name = "m2-ext-affineA2";
  s.coxeter = builtin_matrix(CoxeterFamily::AffineA2, 3);
  s.generator_names = {"s1", "s2", "s0"};
  s.caveat = kCaveat;
  s.steps = {step(2, "x1"), step(1, "x2"), step(3, "x3"),
             step(2, "x4", {{"x1", {mono({"x2", "x3"})}}}, {{"x1", "Dq"}}),
             step(1, "x5", {{"x1", {mono({"x3", "x3"})}}, {"x2", {mono({"x3", "x4"})}}})};
  s.expect.size = 22;
  s.expect.rank_profile = std::vector<int>{1, 3, 6, 7, 4, 1};
  s.expect.word = Word{2, 1, 3, 2, 1};
  return s;
}

PipelineSpec weyl(int n) {
  PipelineSpec s;
  s.name = "weyl" + std::to_string(n);
  s.coxeter = builtin_matrix(CoxeterFamily::A, n);
  s.caveat = kCaveat;
  s.steps.push_back(step(1, "x1"));
  s.steps.push_back(step(std::nullopt, "y1", {{"x1", {Monomial::unit()}}}, {{"x1", omega(1)}}));
  for (int k = 2; k <= n; ++k) {
    const auto x = "x" + std::to_string(k), y = "y" + std::to_string(k);
    s.steps.push_back(step(k, x, {}, {}, StepSide::Left));
    s.steps.push_back(step(k, y, {{x, {mono({omega(k - 1)})}}}, {{x, omega(k)}}));
  }
  Word w;
  for (int k = n; k >= 1; --k) w.push_back(k);
  for (int k = 2; k <= n; ++k) w.push_back(k);
  s.expect.word = w;
  s.expect.labels["s" + std::to_string(n)] = "<" + omega(n) + ">";
  if (n == 3) {
    s.expect.size = 20;
    s.expect.rank_profile = std::vector<int>{1, 3, 5, 6, 4, 1};
  }
  return s;
}

PipelineSpec horton(int n) {
  PipelineSpec s;
  s.name = "horton" + std::to_string(n);
  s.caveat = kCaveat;
  // idx[k] is the index of the generator written s_k.
  std::vector<int> idx(n + 1);
  if (n == 2) {
    s.coxeter = builtin_matrix(CoxeterFamily::A, 3);
    idx = {1, 3, 2};
    s.generator_names = {"s0", "s2", "s1"};
  } else {
    s.coxeter = builtin_matrix(CoxeterFamily::D, n + 1);
    for (int k = 0; k <= n; ++k) {
      idx[k] = k + 1;
      s.generator_names.push_back("s" + std::to_string(k));
    }
  }
  s.steps.push_back(step(idx[1], "x1"));
  s.steps.push_back(step(idx[0], "y1"));
  s.steps.push_back(step(idx[2], "x2", {}, {}, StepSide::Left));
  s.steps.push_back(step(idx[2], "y2", {{"x2", {mono({"y1", "x1"})}}}, {{"x2", omega(2)}}));
  for (int k = 3; k <= n; ++k) {
    const auto x = "x" + std::to_string(k), y = "y" + std::to_string(k);
    s.steps.push_back(step(idx[k], x, {}, {}, StepSide::Left));
    s.steps.push_back(step(idx[k], y, {{x, {mono({omega(k - 1)})}}}, {{x, omega(k)}}));
  }
  Word w;
  for (int k = n; k >= 2; --k) w.push_back(idx[k]);
  w.push_back(idx[1]);
  w.push_back(idx[0]);
  for (int k = 2; k <= n; ++k) w.push_back(idx[k]);
  s.expect.word = w;
  if (n == 3) {
    s.expect.size = 48;
    s.expect.rank_profile = std::vector<int>{1, 4, 9, 14, 13, 6, 1};
  }
  return s;
}

struct ParsedName {
  std::string family;
  int n = 0;
};

ParsedName parse_name(const std::string& name) {
  static const std::regex with_index(R"(^(qaffine|weyl|horton)(?:\((\d+)\)|(\d+))$)");
  std::smatch match;
  if (std::regex_match(name, match, with_index)) {
    const std::string digits = match[2].matched ? match[2].str() : match[3].str();
    if (digits.size() > 3) throw InputError("unsupported index in builtin " + name);
    return {match[1].str(), std::stoi(digits)};
  }
  if (name == "qmatrix2" || name == "m2-ext-A3" || name == "m2-ext-affineA2") return {name, 0};
  throw InputError("unknown builtin pipeline '" + name +
                   "' (expected qaffine(n), qmatrix2, weyl(n), horton(n), m2-ext-A3, m2-ext-affineA2)");
}

}  // namespace

std::string canonical_builtin_name(const std::string& name) {
  const auto p = parse_name(name);
  if (p.family == "qaffine" || p.family == "weyl") {
    if (p.n < 1 || p.n > kMaxFamilyIndex) throw InputError("unsupported n for " + p.family + ": " + std::to_string(p.n));
  } else if (p.family == "horton") {
    if (p.n < 2 || p.n > kMaxFamilyIndex) throw InputError("unsupported n for horton: " + std::to_string(p.n));
  } else {
    return p.family;
  }
  return p.family + std::to_string(p.n);
}

PipelineSpec builtin_compiled(const std::string& name) {
  const auto canonical = canonical_builtin_name(name);
  const auto p = parse_name(canonical);
  if (p.family == "qaffine") return qaffine(p.n);
  if (p.family == "weyl") return weyl(p.n);
  if (p.family == "horton") return horton(p.n);
  if (p.family == "qmatrix2") return qmatrix2();
  if (p.family == "m2-ext-A3") return m2_ext_a3();
  return m2_ext_affine_a2();
}

PipelineSpec builtin(const std::string& name) {
  const auto canonical = canonical_builtin_name(name);
  if (const char* dir = std::getenv("BRUHATSPEC_DATA"); dir && *dir) {
    const auto path = std::filesystem::path(dir) / (canonical + ".json");
    if (std::filesystem::exists(path)) {
      auto spec = load_pipeline_file(path.string());
      if (spec.name.empty()) spec.name = canonical;
      return spec;
    }
  }
  return builtin_compiled(canonical);
}

std::vector<std::string> shipped_builtins() {
  return {"qaffine1", "qaffine2", "qaffine3", "qaffine4", "qaffine5", "qmatrix2", "m2-ext-A3",
          "m2-ext-affineA2", "weyl1", "weyl2", "weyl3", "horton2", "horton3", "horton4"};
}

}  // namespace bruhatspec
