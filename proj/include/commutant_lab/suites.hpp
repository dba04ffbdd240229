#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "commutant_lab/hermitian.hpp"
#include "commutant_lab/io.hpp"

namespace commutant_lab {

struct SuiteOptions {
  std::vector<int> dims = {3, 4, 5, 8};
  /// 0 selects each suite's default trial count.
  int trials = 0;
  std::uint64_t seed = 1;
  Tolerance tol;
  /// Restricts lemma-aef to a single parameter value.
  std::optional<double> aef_a;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  int checks = 0;
  int failures = 0;
  /// Deterministic detail lines (no timings).
  std::vector<std::string> notes;
  io::Json counterexamples = io::Json::array();
  double elapsed_seconds = 0.0;

  void check(bool ok, const std::string& what);
};

/// Names accepted by run_suite, excluding "all".
const std::vector<std::string>& suite_names();

/// Runs one named suite ("all" is expanded by run_suites). Throws
/// std::invalid_argument for unknown suites or dims the suite cannot use.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);
std::vector<SuiteResult> run_suites(const std::string& name, const SuiteOptions& opts);

/// Re-checks a counterexample file; passes iff the recorded verdict reproduces.
SuiteResult replay_counterexample(const io::Json& counterexample);

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  Tolerance tol;
  std::vector<SuiteResult> suites;
  double wall_seconds = 0.0;

  bool passed() const;
};

io::Json report_to_json(const RunReport& r, bool include_timing = true);
RunReport report_from_json(const io::Json& j);
std::string report_to_text(const RunReport& r, bool include_timing = true);

}  // namespace commutant_lab
