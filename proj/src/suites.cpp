#include "commutant_lab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "commutant_lab/commutant.hpp"
#include "commutant_lab/preserver.hpp"
#include "commutant_lab/sampling.hpp"
#include "commutant_lab/spectral.hpp"
#include "commutant_lab/structure.hpp"

namespace commutant_lab {

void SuiteResult::check(bool ok, const std::string& what) {
  ++checks;
  if (!ok) {
    ++failures;
    passed = false;
    if (notes.size() < 50) notes.push_back("FAIL: " + what);
  }
}

namespace {

constexpr std::size_t kMaxCounterexamples = 10;

template <typename T>
std::string str(const T& v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

SuiteResult named(std::string name) {
  SuiteResult r;
  r.name = std::move(name);
  return r;
}

int trials_or(const SuiteOptions& opts, int fallback) { return opts.trials > 0 ? opts.trials : fallback; }

int dim_at(const SuiteOptions& opts, int index) {
  return opts.dims[static_cast<std::size_t>(index) % opts.dims.size()];
}

Rng trial_rng(const SuiteOptions& opts, std::uint64_t stream, int index) {
  return Rng(derive_seed(derive_seed(opts.seed, stream), static_cast<std::uint64_t>(index)));
}

void add_counterexample(SuiteResult& r, io::Json j) {
  if (r.counterexamples.size() < kMaxCounterexamples) r.counterexamples.push_back(std::move(j));
}

// ---------------------------------------------------------------------------

SuiteResult suite_brooke(const SuiteOptions& opts) {
  SuiteResult r = named("brooke");
  const Tolerance& tol = opts.tol;
  auto near_unit = [](Complex lambda) {
    return std::abs(lambda - 1.0) <= 1e-6 || std::abs(lambda + 1.0) <= 1e-6;
  };
  int detected_random = 0;
  const int random_pairs = trials_or(opts, 1000);
  for (int t = 0; t < random_pairs; ++t) {
    Rng rng = trial_rng(opts, 1, t);
    const int n = dim_at(opts, t);
    const HermitianMatrix a = random_hermitian(n, rng);
    const HermitianMatrix b = random_hermitian(n, rng);
    if (auto lambda = quasi_commutation_factor(a, b, tol)) {
      ++detected_random;
      r.check(near_unit(*lambda), "random pair " + str(t) + " quasi-commutes with factor " + str(*lambda));
    }
  }
  for (int t = 0; t < 200; ++t) {
    Rng rng = trial_rng(opts, 2, t);
    const int n = dim_at(opts, t);
    const HermitianMatrix a = random_hermitian(n, rng);
    const SpectralData s = spectral_decompose(a, tol);
    std::vector<double> values(static_cast<std::size_t>(s.count()));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& v : values) v = normal(rng);
    const HermitianMatrix b = apply_function(s, values);
    const auto lambda = quasi_commutation_factor(a, b, tol);
    r.check(lambda && std::abs(*lambda - 1.0) <= 1e-6,
            "commuting pair " + str(t) + " factor " + (lambda ? str(*lambda) : "undetected"));
  }
  for (int t = 0; t < 200; ++t) {
    Rng rng = trial_rng(opts, 3, t);
    const int n = dim_at(opts, t);
    const HermitianMatrix a = random_with_spectrum(opposite_pair_spectrum(n, rng), rng);
    const HermitianMatrix b = random_element(anticommutant(a, tol), rng);
    const auto lambda = quasi_commutation_factor(a, b, tol);
    r.check(lambda && std::abs(*lambda + 1.0) <= 1e-6,
            "anticommuting pair " + str(t) + " factor " + (lambda ? str(*lambda) : "undetected"));
  }
  r.notes.push_back("random pairs: " + str(random_pairs) + ", quasi-commuting among them: " +
                    str(detected_random) + "; constructed commuting: 200, anticommuting: 200");
  return r;
}

SuiteResult suite_lemma_scalar(const SuiteOptions& opts) {
  SuiteResult r = named("lemma-scalar");
  const Tolerance& tol = opts.tol;
  const int trials = trials_or(opts, 100);
  for (int t = 0; t < trials; ++t) {
    Rng rng = trial_rng(opts, 10, t);
    const int n = dim_at(opts, t);
    const HermitianMatrix a = t % 2 == 0 ? random_hermitian(n, rng)
                                         : random_with_spectrum(degenerate_spectrum(n, rng), rng);
    if (is_scalar(a, tol)) continue;
    const auto w = scalar_witness(a, derive_seed(opts.seed, 1000 + static_cast<std::uint64_t>(t)), tol);
    r.check(w.has_value() && !rel_q(w->b - a, w->b, tol), "nonscalar sample " + str(t) + " has a witness");
    r.check(commutant(a, tol).real_dimension() < n * n, "nonscalar sample " + str(t) + " has A^c != everything");
  }
  const double scalars[] = {0.0, 1.0, -2.5, 3.0};
  for (int n : opts.dims) {
    for (double value : scalars) {
      const HermitianMatrix a = HermitianMatrix::scalar(n, value);
      const std::string tag = str(value) + "I at dim " + str(n);
      r.check(!scalar_witness(a, opts.seed, tol).has_value(), tag + " reports no witness");
      const QuasiCommutant q = quasi_commutant(a, tol);
      r.check(q.commutant_part.real_dimension() == n * n, tag + " has A^c = everything");
      const int expected_anti = value == 0.0 ? n * n : 0;
      r.check(q.anticommutant_part.real_dimension() == expected_anti, tag + " anticommutant dimension");
    }
  }
  return r;
}

SuiteResult suite_lemma4(const SuiteOptions& opts) {
  SuiteResult r = named("lemma-4");
  const int candidates = trials_or(opts, 1000);
  const double lambdas[] = {2.0, -1.0, 0.5, 3.0, -2.5};
  int config = 0;
  for (int n : opts.dims) {
    for (int k = 0; k < 20; ++k, ++config) {
      Rng rng = trial_rng(opts, 20, config);
      std::uniform_int_distribution<int> rank(1, n);
      const HermitianMatrix p = random_projection(n, rank(rng), rng);
      const double lambda = lambdas[k % 5];
      const Lemma4Result res =
          lemma4_check(lambda, p, candidates, derive_seed(opts.seed, 2000 + config), opts.tol);
      r.check(res.premises_hold_at_a, "premises at B = A, config " + str(config));
      r.check(!res.counterexample, "no distinct B satisfies both premises, config " + str(config));
      if (res.counterexample) {
        add_counterexample(r, {{"lambda", lambda}, {"p", io::matrix_to_json(p, "P")},
                               {"b", io::matrix_to_json(*res.counterexample, "B")}});
      }
    }
  }
  return r;
}

SuiteResult suite_lemma_aef(const SuiteOptions& opts) {
  SuiteResult r = named("lemma-aef");
  std::vector<double> params = {0.25, 0.5, 1.0, 2.0, 4.0};
  if (opts.aef_a) params = {*opts.aef_a};
  const std::vector<double> grid = {-2.0, -0.5, 0.5, 1.0, 2.0};
  for (int n : opts.dims) {
    for (double a : params) {
      const AefFixture fx = build_aef(a, n);
      const AefReport rep = check_aef(fx, grid, 1e-10, opts.tol);
      const std::string tag = "a=" + str(a) + " dim=" + str(n);
      r.check(rep.spectra_ok, tag + " spectra (error " + str(rep.spectrum_error) + ")");
      r.check(rep.commute_mismatches == 0, tag + " commutation iff equal scales");
      r.check(rep.jordan_zero_hits == 0, tag + " Jordan products nonzero");
      r.check(in_K(fx.a, opts.tol) && in_K(fx.e, opts.tol) && in_K(fx.f, opts.tol),
              tag + " A, E, F in K");
    }
  }
  return r;
}

// Shared driver for the two minimality suites.
SuiteResult suite_minimality(const SuiteOptions& opts, bool quasi_side) {
  SuiteResult r = named(quasi_side ? "lemma-1.81" : "lemma-1.8");
  const Tolerance& tol = opts.tol;
  const int samples = trials_or(opts, 500);
  int failing_cases = 0;
  for (int t = 0; t < samples; ++t) {
    Rng rng = trial_rng(opts, quasi_side ? 31 : 30, t);
    const int n = dim_at(opts, t);
    std::uniform_int_distribution<int> k_pick(2, std::min(5, n));
    const int k = k_pick(rng);
    const HermitianMatrix a = random_with_spectrum(controlled_spectrum(n, k, quasi_side, rng), rng);
    const std::string tag = "sample " + str(t) + " (dim " + str(n) + ", " + str(k) + " points)";
    const bool predicate = quasi_side ? lemma181_condition(a, tol) : has_two_point_spectrum(a, tol);
    const MinimalityVerdict oracle =
        quasi_side ? lemma181_partition_oracle(a, tol) : lemma18_minimality(a, tol);
    r.check(predicate == oracle.holds, tag + " predicate agrees with partition oracle");
    if (!oracle.holds) {
      ++failing_cases;
      const bool ok = oracle.witness && !is_scalar(*oracle.witness, tol) &&
                      is_projection(*oracle.witness, tol) && rel_c(*oracle.witness, a, tol) &&
                      subspace_proper_lt(bicommutant(*oracle.witness, tol), bicommutant(a, tol), tol);
      r.check(ok, tag + " spectral projection witness");
    }
  }
  r.notes.push_back("samples: " + str(samples) + ", failing condition (witness emitted): " +
                    str(failing_cases));
  return r;
}

SuiteResult suite_lemma7(const SuiteOptions& opts) {
  SuiteResult r = named("lemma-7");
  const Tolerance& tol = opts.tol;
  const int operators = trials_or(opts, 200);
  int quasi_equal = 0;
  for (int t = 0; t < operators; ++t) {
    Rng rng = trial_rng(opts, 40, t);
    const int n = dim_at(opts, t);
    HermitianMatrix a;
    switch (t % 3) {
      case 0:
        a = random_hermitian(n, rng);
        break;
      case 1:
        a = random_with_spectrum(opposite_pair_spectrum(n, rng), rng);
        break;
      default:
        a = random_with_spectrum(degenerate_spectrum(n, rng), rng);
        break;
    }
    const QuasiCommutant q = quasi_commutant(a, tol);
    const MatrixSubspace a_cc = bicommutant(a, tol);
    int refuted = 0;
    int outside = 0;
    for (int x_index = 0; outside < 50 && x_index < 200; ++x_index) {
      const HermitianMatrix x = random_hermitian(n, rng);
      if (a_cc.contains(x, tol)) continue;
      ++outside;
      const BiquasiVerdict v =
          refute_biquasi_membership(x, q, 10, derive_seed(opts.seed, 4000 + 50 * t + x_index), tol);
      if (v.refuted) ++refuted;
    }
    r.check(outside == 50 && refuted == outside,
            "operator " + str(t) + ": refuted " + str(refuted) + " of " + str(outside) + " outside A^cc");
    if (subspace_leq(q.anticommutant_part, q.commutant_part, tol)) {
      ++quasi_equal;
      bool any_refuted = false;
      for (const auto& x : a_cc.basis()) {
        any_refuted = any_refuted || refute_biquasi_membership(x, q, 10, opts.seed + t, tol).refuted;
      }
      for (int k = 0; k < 5; ++k) {
        any_refuted =
            any_refuted || refute_biquasi_membership(random_element(a_cc, rng), q, 10, opts.seed + t, tol).refuted;
      }
      r.check(!any_refuted, "operator " + str(t) + " with A^# = A^c: A^cc elements unrefuted");
    }
  }
  r.notes.push_back("operators: " + str(operators) + ", with A^# = A^c: " + str(quasi_equal));
  return r;
}

SuiteResult suite_primitive(const SuiteOptions& opts, bool quasi_side) {
  SuiteResult r = named(quasi_side ? "lemma-primitive1" : "lemma-primitive");
  const std::pair<double, double> params[] = {{1.0, 0.0}, {2.0, 1.0}, {-0.5, 3.0}};
  int config = 0;
  for (int n : opts.dims) {
    for (int rank = 2; rank <= n - 2; ++rank) {
      for (auto [alpha, beta] : params) {
        Rng rng = trial_rng(opts, quasi_side ? 51 : 50, config++);
        const HermitianMatrix p = random_projection(n, rank, rng);
        const PrimitiveWitnesses w = lemma_primitive_witnesses(p, alpha, beta, opts.tol);
        const PrimitiveChainReport rep = check_primitive_chain(w, opts.tol);
        const std::string tag = "dim " + str(n) + " rank " + str(rank) + " alpha " + str(alpha) +
                                " beta " + str(beta);
        r.check(rep.chain_holds(), tag + " containment chain (" + str(rep.dim_a_cc) + ", " +
                                       str(rep.dim_c_cc) + ", " + str(rep.dim_a_minus_b_cc) + ")");
        r.check(rep.dim_a_cc == 2 && rep.dim_c_cc == 3 && rep.dim_a_minus_b_cc == 4,
                tag + " bicommutant dimensions (2, 3, 4)");
        if (quasi_side) r.check(rep.quasi_chain_holds(), tag + " quasi-side hypotheses");
      }
    }
    // Rank or corank one: the construction must refuse.
    Rng rng = trial_rng(opts, 52, n);
    bool refused = false;
    try {
      lemma_primitive_witnesses(random_projection(n, 1, rng), 1.0, 0.0, opts.tol);
    } catch (const std::invalid_argument&) {
      refused = true;
    }
    r.check(refused, "dim " + str(n) + " rank one projection is rejected");
  }
  return r;
}

struct MapConfig {
  double scale;
  bool antiunitary;
  int shift_kind;  // 0 zero, 1 constant, 2 trace_based / compliant
};

std::vector<MapConfig> theorem_configs() {
  const double scales[] = {0.5, -0.5, 1.0, -1.0, 3.0, -3.0};
  std::vector<MapConfig> configs;
  for (int i = 0; i < 10; ++i) configs.push_back({scales[i % 6], i % 2 == 1, i % 3});
  return configs;
}

ShiftPolicy theorem4_shift(int kind, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 2.0);
  switch (kind) {
    case 0:
      return ShiftPolicy::zero();
    case 1:
      return ShiftPolicy::constant(normal(rng));
    default:
      return ShiftPolicy::trace_based();
  }
}

void record_violations(SuiteResult& r, const TrialReport& rep, const MapFactory& factory,
                       const Tolerance& tol) {
  for (const auto& v : rep.violations) {
    const int n = v.a.dim();
    try {
      add_counterexample(r, io::counterexample_to_json(factory(n), v, tol));
    } catch (const std::invalid_argument&) {
      add_counterexample(r, io::violation_to_json(v));
    }
  }
}

SuiteResult suite_theorem(const SuiteOptions& opts, RelationKind relation) {
  const bool quasi = relation == RelationKind::quasi;
  SuiteResult r = named(quasi ? "theorem-5" : "theorem-4");
  const int trials = trials_or(opts, 2000);
  const auto configs = theorem_configs();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const MapConfig cfg = configs[i];
    const std::uint64_t config_seed = derive_seed(opts.seed, (quasi ? 6000 : 5000) + i);
    MapFactory factory = [cfg, config_seed, relation, quasi](int n) {
      Rng rng(derive_seed(config_seed, static_cast<std::uint64_t>(n)));
      const ComplexMatrix u = random_unitary(n, rng);
      ShiftPolicy shift = quasi ? (cfg.shift_kind == 0 ? ShiftPolicy::zero()
                                                       : ShiftPolicy::theorem_compliant_quasi(ShiftPolicy::zero()))
                                : theorem4_shift(cfg.shift_kind, rng);
      return PreserverMap(cfg.scale, u, cfg.antiunitary, std::move(shift), relation);
    };
    const TrialReport rep = property_run(factory, opts.dims, trials, config_seed, opts.tol, {}, r.name);
    const std::string tag = "config " + str(i) + " (c=" + str(cfg.scale) +
                            (cfg.antiunitary ? ", antiunitary" : ", unitary") + ", shift " +
                            factory(opts.dims.front()).shift().describe() + ")";
    r.check(rep.violations.empty(), tag + ": " + str(rep.violations.size()) + " violations");
    r.notes.push_back(tag + ": trials " + str(rep.trials) + ", both hold " + str(rep.both_hold) +
                      ", both fail " + str(rep.both_fail) + ", violations " + str(rep.violations.size()));
    record_violations(r, rep, factory, opts.tol);
  }
  if (quasi) {
    // Exploratory, not asserted: a compliant but nonzero f.
    const std::uint64_t explore_seed = derive_seed(opts.seed, 6999);
    MapFactory factory = [explore_seed](int n) {
      Rng rng(derive_seed(explore_seed, static_cast<std::uint64_t>(n)));
      return PreserverMap(1.0, random_unitary(n, rng), false,
                          ShiftPolicy::theorem_compliant_quasi(ShiftPolicy::trace_based()),
                          RelationKind::quasi);
    };
    const TrialReport rep = property_run(factory, opts.dims, trials, explore_seed, opts.tol, {}, r.name);
    r.notes.push_back("exploratory (not asserted) f = theorem_compliant_quasi(trace_based): " +
                      str(rep.violations.size()) + " violations in " + str(rep.trials) + " trials");
  }
  return r;
}

using SuiteFn = std::function<SuiteResult(const SuiteOptions&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"brooke", suite_brooke},
      {"lemma-scalar", suite_lemma_scalar},
      {"lemma-4", suite_lemma4},
      {"lemma-aef", suite_lemma_aef},
      {"lemma-1.8", [](const SuiteOptions& o) { return suite_minimality(o, false); }},
      {"lemma-7", suite_lemma7},
      {"lemma-1.81", [](const SuiteOptions& o) { return suite_minimality(o, true); }},
      {"lemma-primitive", [](const SuiteOptions& o) { return suite_primitive(o, false); }},
      {"lemma-primitive1", [](const SuiteOptions& o) { return suite_primitive(o, true); }},
      {"theorem-4", [](const SuiteOptions& o) { return suite_theorem(o, RelationKind::commutative); }},
      {"theorem-5", [](const SuiteOptions& o) { return suite_theorem(o, RelationKind::quasi); }},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "brooke",    "lemma-scalar", "lemma-4",         "lemma-aef",        "lemma-1.8", "lemma-7",
      "lemma-1.81", "lemma-primitive", "lemma-primitive1", "theorem-4", "theorem-5"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  const auto& suites = registry();
  const auto it = suites.find(name);
  if (it == suites.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  if (opts.dims.empty()) throw std::invalid_argument("at least one dimension is required");
  opts.tol.validate();
  for (int n : opts.dims) {
    if (n < 3) throw std::invalid_argument("dimension " + str(n) + " is below 3");
    if (n < 4 && name.rfind("lemma-primitive", 0) == 0) {
      throw std::invalid_argument("lemma-primitive suites need dimensions >= 4");
    }
  }
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r = it->second(opts);
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<SuiteResult> run_suites(const std::string& name, const SuiteOptions& opts) {
  if (name != "all") return {run_suite(name, opts)};
  std::vector<SuiteResult> results;
  for (const auto& n : suite_names()) {
    SuiteOptions o = opts;
    if (n.rfind("lemma-primitive", 0) == 0) {
      o.dims.erase(std::remove_if(o.dims.begin(), o.dims.end(), [](int d) { return d < 4; }), o.dims.end());
      if (o.dims.empty()) o.dims = {4};
    }
    results.push_back(run_suite(n, o));
  }
  return results;
}

SuiteResult replay_counterexample(const io::Json& j) {
  SuiteResult r = named("replay");
  const PreserverMap map = io::map_from_json(j.at("map"));
  const Tolerance tol = j.contains("tolerance") ? io::tolerance_from_json(j["tolerance"]) : Tolerance{};
  const HermitianMatrix a = io::matrix_from_json(j.at("a")).matrix;
  const HermitianMatrix b = io::matrix_from_json(j.at("b")).matrix;
  const HermitianMatrix c = io::matrix_from_json(j.at("c")).matrix;
  const TriadicVerdict recorded = triadic_verdict_from_string(j.at("direction").get<std::string>());
  const TriadicVerdict observed = check_triadic(map, a, b, c, tol);
  r.notes.push_back(std::string("recorded ") + to_string(recorded) + ", observed " + to_string(observed));
  r.check(observed == recorded, "recorded verdict reproduces");
  return r;
}

bool RunReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

io::Json report_to_json(const RunReport& r, bool include_timing) {
  io::Json suites = io::Json::array();
  for (const auto& s : r.suites) {
    io::Json j = {{"name", s.name},         {"passed", s.passed}, {"checks", s.checks},
                  {"failures", s.failures}, {"notes", s.notes},   {"counterexamples", s.counterexamples}};
    if (include_timing) j["elapsed_seconds"] = s.elapsed_seconds;
    suites.push_back(std::move(j));
  }
  io::Json j = {{"command", r.command},
                {"seed", r.seed},
                {"tolerance", io::tolerance_to_json(r.tol)},
                {"passed", r.passed()},
                {"suites", suites}};
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

RunReport report_from_json(const io::Json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.tol = io::tolerance_from_json(j.at("tolerance"));
  r.wall_seconds = j.value("wall_seconds", 0.0);
  for (const auto& s : j.at("suites")) {
    SuiteResult sr;
    sr.name = s.at("name").get<std::string>();
    sr.passed = s.at("passed").get<bool>();
    sr.checks = s.at("checks").get<int>();
    sr.failures = s.at("failures").get<int>();
    sr.notes = s.at("notes").get<std::vector<std::string>>();
    sr.counterexamples = s.value("counterexamples", io::Json::array());
    sr.elapsed_seconds = s.value("elapsed_seconds", 0.0);
    r.suites.push_back(std::move(sr));
  }
  return r;
}

std::string report_to_text(const RunReport& r, bool include_timing) {
  std::ostringstream out;
  out << "command: " << r.command << '\n';
  out << "seed: " << r.seed << '\n';
  out << "tolerance: rel_zero=" << r.tol.rel_zero << " rank_cut=" << r.tol.rank_cut
      << " cluster_gap=" << r.tol.cluster_gap << '\n';
  for (const auto& s : r.suites) {
    out << (s.passed ? "[PASS] " : "[FAIL] ") << s.name << "  checks=" << s.checks
        << " failures=" << s.failures;
    if (include_timing) out << " time=" << s.elapsed_seconds << "s";
    out << '\n';
    for (const auto& note : s.notes) out << "    " << note << '\n';
    if (!s.counterexamples.empty()) {
      out << "    counterexamples: " << s.counterexamples.size() << " (see JSON report)\n";
    }
  }
  out << "result: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  if (include_timing) out << "wall time: " << r.wall_seconds << "s\n";
  return out.str();
}

}  // namespace commutant_lab
