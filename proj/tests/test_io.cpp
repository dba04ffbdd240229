#include <cstdio>
#include <filesystem>
#include <fstream>

#include "commutant_lab/io.hpp"
#include "commutant_lab/sampling.hpp"
#include "commutant_lab/suites.hpp"
#include "doctest.h"

using namespace commutant_lab;
using io::Json;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("commutant_lab_test_" + name)).string();
}

}  // namespace

TEST_CASE("matrix files round-trip exactly") {
  Rng rng(1);
  const HermitianMatrix a = random_hermitian(4, rng);
  const std::string path = temp_path("matrix.json");
  io::write_json_file(path, io::matrix_to_json(a, "A"));
  const io::MatrixFile back = io::read_matrix_file(path);
  CHECK(back.label == "A");
  CHECK(back.matrix == a);
  std::remove(path.c_str());
}

TEST_CASE("matrix files are validated") {
  Json bad = {{"dim", 2}, {"entries", {{{1, 0}, {2, 0}}, {{0, 0}, {1, 0}}}}};
  CHECK_THROWS_AS(io::matrix_from_json(bad), std::invalid_argument);
  Json ragged = {{"dim", 2}, {"entries", {{{1, 0}}, {{0, 0}, {1, 0}}}}};
  CHECK_THROWS_AS(io::matrix_from_json(ragged), std::invalid_argument);
  Json no_dim = {{"entries", Json::array()}};
  CHECK_THROWS_AS(io::matrix_from_json(no_dim), std::invalid_argument);
  Json triple = {{"dim", 1}, {"entries", {{{1, 0, 0}}}}};
  CHECK_THROWS_AS(io::matrix_from_json(triple), std::invalid_argument);
  // Within the 1e-9 relative file tolerance: accepted and symmetrized.
  Json near = {{"dim", 2}, {"entries", {{{1, 0}, {2, 1e-12}}, {{2, 0}, {1, 0}}}}};
  CHECK_NOTHROW(io::matrix_from_json(near));
  CHECK_THROWS_AS(io::read_matrix_file(temp_path("does_not_exist.json")), std::invalid_argument);
  const std::string path = temp_path("garbage.json");
  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(io::read_json_file(path), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("maps and shift policies round-trip") {
  Rng rng(2);
  const HermitianMatrix a0 = HermitianMatrix::diagonal({1, -1, 0});
  const ShiftPolicy shifts[] = {
      ShiftPolicy::zero(), ShiftPolicy::constant(0.75), ShiftPolicy::trace_based(),
      ShiftPolicy::theorem_compliant_quasi(ShiftPolicy::trace_based()),
      ShiftPolicy::pointwise({{a0, 1.0}}, ShiftPolicy::constant(-2.0))};
  for (const auto& shift : shifts) {
    const PreserverMap m(-3.0, random_unitary(3, rng), true, shift, RelationKind::quasi);
    const PreserverMap back = io::map_from_json(io::map_to_json(m));
    CHECK(back.scale() == m.scale());
    CHECK(back.antiunitary());
    CHECK(back.relation() == RelationKind::quasi);
    CHECK(back.conjugator() == m.conjugator());
    for (const auto& x : {a0, random_hermitian(3, rng), HermitianMatrix::diagonal({1, 2, 3})}) {
      CHECK(back.shift()(x) == m.shift()(x));
    }
  }
  const ShiftPolicy custom = ShiftPolicy::custom([](const HermitianMatrix&) { return 1.0; }, "one");
  CHECK_THROWS_AS(io::shift_to_json(custom), std::invalid_argument);
  CHECK_THROWS_AS(io::shift_from_json(Json{{"kind", "mystery"}}), std::invalid_argument);
}

TEST_CASE("tolerance round-trip") {
  Tolerance t;
  t.rel_zero = 1e-7;
  t.rank_cut = 1e-11;
  t.cluster_gap = 1e-6;
  const Tolerance back = io::tolerance_from_json(io::tolerance_to_json(t));
  CHECK(back.rel_zero == t.rel_zero);
  CHECK(back.rank_cut == t.rank_cut);
  CHECK(back.cluster_gap == t.cluster_gap);
}

TEST_CASE("counterexamples replay") {
  NecessityOptions opts;
  opts.dim = 4;
  const NecessityResult r = necessity_search(opts);
  const Json cex = io::counterexample_to_json(r.map, r.report.violations.front(), opts.tol);
  const std::string path = temp_path("cex.json");
  io::write_json_file(path, cex);
  const SuiteResult replay = replay_counterexample(io::read_json_file(path));
  CHECK(replay.passed);
  Json tampered = cex;
  tampered["direction"] = "both_hold";
  CHECK_FALSE(replay_counterexample(tampered).passed);
  std::remove(path.c_str());
}

TEST_CASE("run reports are deterministic and round-trip") {
  SuiteOptions opts;
  opts.dims = {3, 4};
  opts.trials = 50;
  opts.seed = 11;
  auto run = [&] {
    RunReport r;
    r.command = "test";
    r.seed = opts.seed;
    r.suites = run_suites("theorem-4", opts);
    r.suites.push_back(run_suite("lemma-aef", opts));
    return r;
  };
  const RunReport first = run();
  const RunReport second = run();
  CHECK(report_to_json(first, false).dump() == report_to_json(second, false).dump());
  CHECK(report_to_text(first, false) == report_to_text(second, false));
  const RunReport back = report_from_json(report_to_json(first));
  CHECK(report_to_json(back, false).dump() == report_to_json(first, false).dump());
  CHECK(first.passed());
}

TEST_CASE("suite argument validation") {
  SuiteOptions opts;
  CHECK_THROWS_AS(run_suite("no-such-suite", opts), std::invalid_argument);
  opts.dims = {2};
  CHECK_THROWS_AS(run_suite("lemma-1.8", opts), std::invalid_argument);
  opts.dims = {3};
  CHECK_THROWS_AS(run_suite("lemma-primitive", opts), std::invalid_argument);
  CHECK(suite_names().size() == 11);
}
