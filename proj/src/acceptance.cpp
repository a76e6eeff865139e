#include "bruhatspec/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <tuple>

#include "bruhatspec/bruhat.hpp"
#include "bruhatspec/pipeline.hpp"
#include "bruhatspec/poset.hpp"
#include "bruhatspec/pushout.hpp"
#include "oracles.hpp"

namespace bruhatspec::acceptance {

namespace {

// Interval sizes computed by the subword oracle and frozen here.
constexpr std::size_t kWeylInterval = 20;         // A3, s3s2s1s2s3
constexpr std::size_t kM2ExtA3Interval = 18;      // A3, s2s1s3s2s1
constexpr std::size_t kM2ExtAffineInterval = 22;  // affine A2, s2s1s0s2s1
constexpr std::size_t kHortonInterval = 48;       // D4, s3s2s1s0s2s3

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct PartitionRecord {
  CoxeterMatrix m;
  Word wbar;
  int a;
};

struct Shared {
  std::vector<PartitionRecord> partitions;  // from criteria 2 to 6
  std::vector<BruhatPartition> sweep;       // criterion 6
  bool sweep_done = false;
};

std::string profile_text(const std::vector<int>& p) {
  std::string out;
  for (int x : p) out += (out.empty() ? "" : ",") + std::to_string(x);
  return "(" + out + ")";
}

void record_pipeline(Shared& shared, const PipelineSpec& spec, const PipelineResult& r) {
  for (const auto& s : r.steps)
    if (s.gen) shared.partitions.push_back({spec.coxeter, s.partitioned, *s.gen});
}

// Runs a builtin pipeline and compares its final poset with [1, w].
Outcome figure_check(Shared& shared, const std::string& name, const std::string& matrix, const Word& w,
                     std::size_t frozen_size, const std::vector<int>& profile) {
  Outcome o;
  const auto m = matrix_by_name(matrix);
  const auto iv = interval(m, w);
  const auto oracle_size = oracle::subword_interval_size(m, w);
  std::ostringstream d;
  d << "[1," << word_label(w) << "] in " << matrix << " has " << iv.size() << " elements, profile "
    << profile_text(rank_profile(iv.poset));
  if (iv.size() != frozen_size || oracle_size != frozen_size || rank_profile(iv.poset) != profile) {
    o.ok = false;
    d << " (expected " << frozen_size << ", profile " << profile_text(profile) << ", oracle " << oracle_size << ")";
  }
  try {
    const auto spec = builtin(name);
    const auto r = run_pipeline(spec);
    record_pipeline(shared, spec, r);
    const bool iso = find_isomorphism(r.poset, iv.poset).has_value();
    d << "; " << name << " gives " << r.poset.size() << " primes, " << (iso ? "isomorphic" : "NOT isomorphic");
    if (!iso || !r.expect_met()) o.ok = false;
    for (const auto& f : r.expect_failures) d << "; " << f;
  } catch (const PipelineFailure& f) {
    o.ok = false;
    d << "; failure: " << f.to_json().dump();
  } catch (const Error& e) {
    o.ok = false;
    d << "; error: " << e.what();
  }
  o.detail = d.str();
  return o;
}

Outcome criterion1(Shared&) {
  const auto m = matrix_by_name("A3");
  const auto group = oracle::symmetric_group(3);
  std::size_t pairs = 0, mismatches = 0;
  for (const auto& u : group)
    for (const auto& v : group) {
      ++pairs;
      const bool lib = bruhat_leq(element_from_word(m, oracle::bubble_word(u)), element_from_word(m, oracle::bubble_word(v)));
      if (lib != oracle::subword_leq(u, v) || lib != oracle::tableau_leq(u, v)) ++mismatches;
    }
  return {pairs == 576 && mismatches == 0,
          std::to_string(pairs) + " ordered pairs of S4, " + std::to_string(mismatches) + " disagreements"};
}

Outcome criterion2(Shared& shared) {
  auto o = figure_check(shared, "weyl3", "A3", {3, 2, 1, 2, 3}, kWeylInterval, {1, 3, 5, 6, 4, 1});
  try {
    const auto label = run_pipeline(builtin("weyl3")).prime_of({3});
    o.detail += "; s3 -> " + label;
    if (label != "<Omega3>") o.ok = false;
  } catch (const Error& e) {
    o.ok = false;
    o.detail += std::string("; ") + e.what();
  }
  return o;
}

Outcome criterion3(Shared& shared) {
  return figure_check(shared, "m2-ext-A3", "A3", {2, 1, 3, 2, 1}, kM2ExtA3Interval, {1, 3, 5, 5, 3, 1});
}

Outcome criterion4(Shared& shared) {
  // s1 -> 1, s2 -> 2, s0 -> 3.
  return figure_check(shared, "m2-ext-affineA2", "affineA2", {2, 1, 3, 2, 1}, kM2ExtAffineInterval,
                      {1, 3, 6, 7, 4, 1});
}

Outcome criterion5(Shared& shared) {
  // s_k -> k + 1 in D4.
  return figure_check(shared, "horton3", "D4", {4, 3, 2, 1, 3, 4}, kHortonInterval, {1, 4, 9, 14, 13, 6, 1});
}

Outcome criterion6(Shared& shared) {
  const std::tuple<const char*, int> groups[] = {{"A3", 5}, {"D4", 4}, {"affineA2", 4}};
  std::size_t checked = 0, failed = 0;
  std::string first;
  std::ostringstream d;
  for (const auto& [name, bound] : groups) {
    const auto m = matrix_by_name(name);
    std::size_t here = 0;
    for (const auto& w : elements_up_to_length(m, bound))
      for (int a = 1; a <= m.rank(); ++a) {
        if (w.right_descent(a)) continue;
        ++checked;
        ++here;
        try {
          auto part = partition(m, w.canonical_word(), a);
          const auto rep = check_pushout_square(part);
          if (!rep.passed()) {
            ++failed;
            if (first.empty()) first = rep.to_json().dump();
          }
          shared.partitions.push_back({m, w.canonical_word(), a});
          shared.sweep.push_back(std::move(part));
        } catch (const Error& e) {
          ++failed;
          if (first.empty()) first = e.what();
        }
      }
    d << name << " l<=" << bound << ": " << here << " squares; ";
  }
  shared.sweep_done = true;
  d << checked << " total, " << failed << " failed";
  if (!first.empty()) d << "; first: " << first;
  return {failed == 0 && checked > 0, d.str()};
}

Outcome criterion7(Shared& shared) {
  if (!shared.sweep_done) return {false, "the pushout sweep did not run"};
  std::size_t checked = 0, failed = 0;
  std::string first;
  for (const auto& part : shared.sweep) {
    const auto s = element_from_word(part.wbar.coxeter(), {part.a});
    if (bruhat_leq(s, part.wbar)) continue;
    ++checked;
    if (!find_isomorphism(part.upper.poset, product(part.lower.poset, two_chain()))) {
      ++failed;
      if (first.empty()) first = word_label(part.wbar.canonical_word()) + ", a=" + std::to_string(part.a);
    }
  }
  std::string detail = std::to_string(checked) + " pairs with a not below wbar, " + std::to_string(failed) + " failed";
  if (!first.empty()) detail += "; first: " + first;
  return {failed == 0 && checked > 0, detail};
}

Outcome criterion8(Shared&) {
  Outcome o;
  std::ostringstream d;
  for (int n = 1; n <= 5; ++n) {
    try {
      const auto r = run_pipeline(builtin("qaffine" + std::to_string(n)));
      Word c;
      for (int i = 1; i <= n; ++i) c.push_back(i);
      const auto iv = interval(matrix_by_name("A" + std::to_string(n)), c);
      const bool ok = find_isomorphism(r.poset, boolean_lattice(n)).has_value() &&
                      find_isomorphism(iv.poset, boolean_lattice(n)).has_value() && r.expect_met();
      d << "n=" << n << (ok ? " ok" : " FAILED") << (n < 5 ? "; " : "");
      o.ok = o.ok && ok;
    } catch (const Error& e) {
      o.ok = false;
      d << "n=" << n << " error: " << e.what() << "; ";
    }
  }
  o.detail = d.str();
  return o;
}

Outcome criterion9(Shared&) {
  Outcome o;
  std::ostringstream d;
  auto check = [&](const std::string& name, int expected) {
    try {
      const int h = height(run_pipeline(builtin(name)).poset);
      d << name << "=" << h << " ";
      if (h != expected) {
        o.ok = false;
        d << "(expected " << expected << ") ";
      }
    } catch (const Error& e) {
      o.ok = false;
      d << name << " error: " << e.what() << " ";
    }
  };
  for (int n = 1; n <= 3; ++n) check("weyl" + std::to_string(n), 2 * n - 1);
  for (int n = 1; n <= 5; ++n) check("qaffine" + std::to_string(n), n);
  o.detail = d.str();
  if (!o.detail.empty()) o.detail.pop_back();
  return o;
}

Outcome criterion10(Shared&) {
  Outcome o;
  std::size_t steps = 0, skipped = 0, pipelines = 0;
  std::ostringstream d;
  for (const auto& name : shipped_builtins()) {
    try {
      const auto r = run_pipeline(builtin(name));
      ++pipelines;
      for (const auto& s : r.steps) {
        if (!s.applicable) {
          ++skipped;
          continue;
        }
        ++steps;
        if (!s.square_commutes || !s.fibres_ok) {
          o.ok = false;
          d << name << " step " << s.step << " fails; ";
        }
      }
    } catch (const PipelineFailure& f) {
      o.ok = false;
      d << "failure: " << f.to_json().dump() << "; ";
    } catch (const Error& e) {
      o.ok = false;
      d << name << " error: " << e.what() << "; ";
    }
  }
  d << pipelines << " pipelines, " << steps << " generator steps checked, " << skipped
    << " steps without generator";
  o.detail = d.str();
  return o;
}

Outcome criterion11(Shared& shared) {
  std::size_t checked = 0, failed = 0;
  std::string first;
  for (const auto& rec : shared.partitions) {
    ++checked;
    try {
      const auto v = partition_law_violations(partition(rec.m, rec.wbar, rec.a));
      if (!v.empty()) {
        ++failed;
        if (first.empty()) first = v.front();
      }
    } catch (const Error& e) {
      ++failed;
      if (first.empty()) first = e.what();
    }
  }
  std::string detail = std::to_string(checked) + " partitions, " + std::to_string(failed) + " with violations";
  if (!first.empty()) detail += "; first: " + first;
  return {failed == 0 && checked > 0, detail};
}

Outcome criterion12(Shared&) {
  Outcome o;
  std::ostringstream d;
  for (const char* name : {"A3", "affineA2"}) {
    const auto r = check_lifting(matrix_by_name(name), 5);
    d << name << ": " << r.instances << " instances over " << r.elements << " elements"
      << (r.passed ? "" : ", counterexample " + r.counterexample) << "; ";
    o.ok = o.ok && r.passed && r.instances > 0;
  }
  o.detail = d.str();
  o.detail.resize(o.detail.size() - 2);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit;
  Outcome (*run)(Shared&);
};

const Criterion kCriteria[] = {
    {1, "Bruhat order agrees with the subword oracle on A3", 1, criterion1},
    {2, "quantized Weyl algebra Y3 matches [1,s3s2s1s2s3]", 5, criterion2},
    {3, "extension of 2x2 quantum matrices matches [1,s2s1s3s2s1] in A3", 5, criterion3},
    {4, "extension over affine A2 matches [1,s2s1s0s2s1]", 5, criterion4},
    {5, "Horton algebra K3 matches [1,s3s2s1s0s2s3] in D4", 10, criterion5},
    {6, "pushout square sweep over A3, D4, affine A2", 60, criterion6},
    {7, "[1,wbar a] is [1,wbar] x 2 when a is not below wbar", 0, criterion7},
    {8, "quantum affine space is the Boolean lattice for n <= 5", 5, criterion8},
    {9, "heights of weyl(n) and qaffine(n)", 0, criterion9},
    {10, "commuting square and fibre structure at every step", 0, criterion10},
    {11, "partition laws on every computed partition", 0, criterion11},
    {12, "lifting property on A3 and affine A2 up to length 5", 30, criterion12},
};

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::string limit_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", s);
  return buf;
}

}  // namespace

std::vector<CriterionResult> run_all() {
  Shared shared;
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) {
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.limit = c.limit;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(shared);
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.detail = o.detail;
    r.passed = o.ok;
    if (c.limit > 0 && r.seconds >= c.limit) {
      r.passed = false;
      r.detail += "; time limit exceeded";
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string format(const CriterionResult& r) {
  std::string line = "criterion " + std::to_string(r.id) + (r.id < 10 ? "  " : " ") + (r.passed ? "PASS" : "FAIL") +
                     "  " + r.title + ": " + r.detail + " [" + seconds_text(r.seconds) + " s";
  line += r.limit > 0 ? ", limit " + limit_text(r.limit) + " s]" : ", exact]";
  return line;
}

int report(std::ostream& out) {
  const auto results = run_all();
  std::size_t passed = 0;
  for (const auto& r : results) {
    out << format(r) << "\n";
    passed += r.passed;
  }
  out << passed << "/" << results.size() << " criteria passed\n";
  return passed == results.size() ? 0 : 1;
}

}  // namespace bruhatspec::acceptance
