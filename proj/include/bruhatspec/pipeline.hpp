#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bruhatspec/bruhat.hpp"
#include "bruhatspec/coxeter.hpp"
#include "bruhatspec/error.hpp"
#include "bruhatspec/spectra.hpp"
#include "json.hpp"

namespace bruhatspec {

enum class StepSide { Right, Left };

/// One Ore step. A step without `gen` adjoins `var` without moving wbar and
/// requires P3 to be empty. A left step multiplies wbar by the generator on
/// the left.
struct PipelineStep {
  std::optional<int> gen;
  StepSide side = StepSide::Right;
  std::string var;
  DeltaMap delta;
  /// Symbol renames applied to the labels of the old copies of P1 primes.
  std::map<std::string, std::string> rewrite;
  /// P1 prime text -> P2 prime text.
  std::map<std::string, std::string> partner;
};

struct PipelineExpect {
  std::optional<std::size_t> size;
  std::optional<std::vector<int>> rank_profile;
  std::optional<Word> word;
  /// Canonical word label of an interval element -> expected prime text.
  std::map<std::string, std::string> labels;
};

struct PipelineSpec {
  std::string name;
  CoxeterMatrix coxeter = matrix_by_name("A1");
  /// Display names of the generators, e.g. {"s1","s2","s0"}; informational.
  std::vector<std::string> generator_names;
  std::vector<PipelineStep> steps;
  PipelineExpect expect;
  std::string caveat;
};

PipelineSpec pipeline_from_json(const nlohmann::json& j);
nlohmann::ordered_json pipeline_to_json(const PipelineSpec& spec);
/// Reads and parses a pipeline file; errors name the file.
PipelineSpec load_pipeline_file(const std::string& path);

struct StepReport {
  std::size_t step = 0;
  std::optional<int> gen;
  StepSide side = StepSide::Right;
  std::string var;
  /// False for a step without generator, where the checks do not apply.
  bool applicable = true;
  bool hypothesis_a = false;
  bool hypothesis_b = false;
  bool setup_valid = false;
  bool square_commutes = false;
  bool fibres_ok = false;
  std::string nabla_source;
  std::string wbar;
  /// The element whose interval was partitioned (wbar^{-1} on left steps).
  Word partitioned;
  std::size_t size_P = 0, size_P1 = 0, size_P2 = 0, size_P3 = 0, size_new = 0;

  nlohmann::ordered_json to_json() const;
};

struct PipelineResult {
  std::string name;
  Word final_word;
  BruhatInterval interval;
  std::vector<PrimeLabel> primes;
  /// The final spectrum poset, labelled by prime texts.
  LabeledPoset poset;
  /// interval index -> poset index.
  std::vector<std::size_t> nabla;
  std::vector<StepReport> steps;
  std::vector<std::string> expect_failures;

  bool expect_met() const { return expect_failures.empty(); }
  /// Prime text of the interval element with the given canonical word.
  std::string prime_of(const Word& w) const;
  nlohmann::ordered_json to_json() const;
};

/// Raised at the first step that cannot be carried out.
class PipelineFailure : public Error {
 public:
  PipelineFailure(std::string pipeline, std::size_t step, std::string reason);
  const std::string& pipeline() const { return pipeline_; }
  std::size_t step() const { return step_; }
  const std::string& reason() const { return reason_; }
  nlohmann::ordered_json to_json() const;

 private:
  std::string pipeline_;
  std::size_t step_;
  std::string reason_;
};

/// Runs every step from the trivial ring (spectrum {0}, wbar = 1). Each step
/// partitions the interval, classifies the spectrum, picks nabla (the
/// carried one if it matches W_i to P_i, else a constrained search), runs
/// the Ore step, extends nabla and checks the commuting square. Throws
/// PipelineFailure on the first failing step; mismatches against `expect`
/// are reported in the result.
PipelineResult run_pipeline(const PipelineSpec& spec);

/// qaffine(n), qmatrix2, weyl(n), horton(n), m2-ext-A3, m2-ext-affineA2.
/// "qaffine3" and "qaffine(3)" are both accepted. If BRUHATSPEC_DATA names a
/// directory containing "<canonical name>.json", that file is used instead.
PipelineSpec builtin(const std::string& name);
/// The pipeline compiled into the library, ignoring BRUHATSPEC_DATA.
PipelineSpec builtin_compiled(const std::string& name);
/// "qaffine(3)" -> "qaffine3"; throws InputError for unknown names.
std::string canonical_builtin_name(const std::string& name);
/// Canonical names of the shipped pipeline files.
std::vector<std::string> shipped_builtins();

}  // namespace bruhatspec
