#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bruhatspec/acceptance.hpp"
#include "bruhatspec/bruhat.hpp"
#include "bruhatspec/pipeline.hpp"
#include "bruhatspec/pushout.hpp"

using namespace bruhatspec;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string matrix = "A3";
  std::string word;
  int gen = 0;
  std::string builtin_name;
  std::string pipeline_file;
  std::string output;
  std::string format;
  bool print_spec = false;
};

CoxeterMatrix load_matrix(const std::string& text) {
  if (std::filesystem::is_regular_file(text)) {
    std::ifstream in(text);
    try {
      return matrix_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("matrix file " + text + ": " + e.what());
    }
  }
  return matrix_by_name(text);
}

std::string profile_text(const std::vector<int>& p) {
  std::string out;
  for (int x : p) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

// Writes to --output if given, otherwise to stdout.
void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw InputError("cannot write " + o.output);
  out << text;
}

int cmd_interval(const Options& o) {
  const auto m = load_matrix(o.matrix);
  const auto iv = interval(m, parse_word(o.word));
  std::cout << iv.size() << " elements, ranks " << profile_text(rank_profile(iv.poset)) << "\n";
  if (!o.format.empty() || !o.output.empty())
    emit(o, export_poset(iv.poset, parse_export_format(o.format.empty() ? "json" : o.format)));
  return kOk;
}

int cmd_partition(const Options& o) {
  const auto part = partition(load_matrix(o.matrix), parse_word(o.word), o.gen);
  for (int b = 1; b <= 4; ++b) {
    std::cout << "W" << b << " (" << part.W(b).size() << "):";
    for (auto i : part.W(b)) std::cout << " " << part.upper.poset.label(i);
    std::cout << "\n";
  }
  if (!o.format.empty() || !o.output.empty())
    emit(o, export_poset(part.tagged_poset(), parse_export_format(o.format.empty() ? "json" : o.format)));
  return kOk;
}

int cmd_pushout(const Options& o) {
  const auto report = pushout_square(load_matrix(o.matrix), parse_word(o.word), o.gen);
  if (o.format == "json") {
    emit(o, report.to_json().dump(2) + "\n");
  } else {
    std::cout << "pushout square for wbar=" << report.wbar << ", a=s" << report.a << ": "
              << (report.passed() ? "pass" : "FAIL") << " (|[1,wbar]|=" << report.size_b
              << ", |[1,wbar a]|=" << report.size_d << ")\n";
    for (const auto& f : report.failures) std::cout << "  " << f << "\n";
  }
  return report.passed() ? kOk : kVerificationFailed;
}

int cmd_pipeline(const Options& o) {
  if (o.builtin_name.empty() == o.pipeline_file.empty())
    throw InputError("pipeline needs exactly one of --builtin and --pipeline");
  const auto spec = o.builtin_name.empty() ? load_pipeline_file(o.pipeline_file) : builtin(o.builtin_name);
  if (o.print_spec) {
    emit(o, pipeline_to_json(spec).dump(2) + "\n");
    return kOk;
  }
  PipelineResult result = [&] {
    try {
      return run_pipeline(spec);
    } catch (const PipelineFailure& f) {
      std::cout << "FAIL " << f.to_json().dump() << "\n";
      throw;
    }
  }();
  if (o.format == "json") {
    std::cout << result.to_json().dump(2) << "\n";
  } else {
    for (const auto& s : result.steps) std::cout << s.to_json().dump() << "\n";
    std::cout << "pipeline " << result.name << ": final size " << result.poset.size() << ", ranks "
              << profile_text(rank_profile(result.poset)) << ", wbar " << word_label(result.final_word) << "\n";
    for (const auto& f : result.expect_failures) std::cout << "  expectation failed: " << f << "\n";
    std::cout << (result.expect_met() ? "all steps pass" : "FAIL") << "\n";
  }
  if (!o.output.empty()) emit(o, export_poset(result.poset, parse_export_format(o.format == "dot" ? "dot" : "json")));
  return result.expect_met() ? kOk : kVerificationFailed;
}

int cmd_export(const Options& o) {
  const auto format = parse_export_format(o.format.empty() ? "dot" : o.format);
  if (!o.builtin_name.empty() || !o.pipeline_file.empty()) {
    const auto spec = o.builtin_name.empty() ? load_pipeline_file(o.pipeline_file) : builtin(o.builtin_name);
    emit(o, export_poset(run_pipeline(spec).poset, format));
  } else if (o.gen != 0) {
    emit(o, export_poset(partition(load_matrix(o.matrix), parse_word(o.word), o.gen).tagged_poset(), format));
  } else {
    emit(o, export_poset(interval(load_matrix(o.matrix), parse_word(o.word)).poset, format));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bruhat intervals, poset isomorphism extension, and torus-invariant spectra"};
  app.require_subcommand(1);
  Options o;

  auto add_matrix = [&](CLI::App* c) {
    c->add_option("--matrix", o.matrix, "builtin name (A<k>, D<k>, affineA2) or JSON file")->capture_default_str();
  };
  auto add_word = [&](CLI::App* c) { c->add_option("--word", o.word, "comma-separated generator indices")->required(); };
  auto add_gen = [&](CLI::App* c, bool required) {
    auto opt = c->add_option("--gen", o.gen, "generator index a")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };
  auto add_output = [&](CLI::App* c) {
    c->add_option("--output", o.output, "write the export to this file");
    c->add_option("--format", o.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  };

  auto* iv = app.add_subcommand("interval", "size and rank profile of [1, w]");
  add_matrix(iv);
  add_word(iv);
  add_output(iv);

  auto* part = app.add_subcommand("partition", "the blocks W1..W4 of [1, wbar a]");
  add_matrix(part);
  add_word(part);
  add_gen(part, true);
  add_output(part);

  auto* po = app.add_subcommand("pushout-check", "verify the pushout square for (wbar, a)");
  add_matrix(po);
  add_word(po);
  add_gen(po, true);
  add_output(po);

  auto* pipe = app.add_subcommand("pipeline", "run an iterated extension pipeline");
  pipe->add_option("--builtin", o.builtin_name, "builtin pipeline name, e.g. qaffine3 or weyl(2)");
  pipe->add_option("--pipeline", o.pipeline_file, "pipeline JSON file");
  pipe->add_flag("--print-spec", o.print_spec, "print the pipeline definition instead of running it");
  add_output(pipe);

  app.add_subcommand("selftest", "run the acceptance criteria");

  auto* ex = app.add_subcommand("export", "export an interval, partition or pipeline poset");
  add_matrix(ex);
  ex->add_option("--word", o.word, "comma-separated generator indices");
  add_gen(ex, false);
  ex->add_option("--builtin", o.builtin_name, "export the final poset of a builtin pipeline");
  ex->add_option("--pipeline", o.pipeline_file, "export the final poset of a pipeline file");
  add_output(ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (iv->parsed()) return cmd_interval(o);
    if (part->parsed()) return cmd_partition(o);
    if (po->parsed()) return cmd_pushout(o);
    if (pipe->parsed()) return cmd_pipeline(o);
    if (ex->parsed()) return cmd_export(o);
    return acceptance::report(std::cout);
  } catch (const PipelineFailure& f) {
    std::cerr << "error: " << f.what() << "\n";
    return kVerificationFailed;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const HypothesisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}
