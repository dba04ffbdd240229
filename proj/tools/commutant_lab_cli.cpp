// commutant_lab: suites, commutant structure and counterexample searches.
//
// Exit codes: 0 pass, 1 assertion failure or mandatory search exhausted,
// 2 usage or input error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commutant_lab/commutant.hpp"
#include "commutant_lab/io.hpp"
#include "commutant_lab/preserver.hpp"
#include "commutant_lab/suites.hpp"

namespace cl = commutant_lab;
using cl::io::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_zero;
  std::optional<double> tol_rank;
  std::optional<double> tol_cluster;
  std::string out;
  std::string format = "text";
  bool no_timing = false;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "Base seed (default: $COMMUTANT_LAB_SEED, else 1)");
    app->add_option("--tol-zero", tol_zero, "Relative zero threshold");
    app->add_option("--tol-rank", tol_rank, "Relative singular value cut");
    app->add_option("--tol-cluster", tol_cluster, "Relative eigenvalue cluster gap");
    app->add_option("--out", out, "Also write the JSON report to this path");
    app->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    app->add_flag("--no-timing", no_timing, "Omit wall-clock fields");
  }

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("COMMUTANT_LAB_SEED")) {
      try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(env, &used);
        if (used == std::string(env).size()) return v;
      } catch (const std::exception&) {
      }
      throw UsageError("COMMUTANT_LAB_SEED is not an unsigned integer");
    }
    return 1;
  }

  cl::Tolerance tolerance() const {
    cl::Tolerance tol;
    if (tol_zero) tol.rel_zero = *tol_zero;
    if (tol_rank) tol.rank_cut = *tol_rank;
    if (tol_cluster) tol.cluster_gap = *tol_cluster;
    tol.validate();
    return tol;
  }
};

std::string command_echo(int argc, char** argv) {
  std::string echo = "commutant_lab";
  for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];
  return echo;
}

void emit(const CommonFlags& flags, const Json& j, const std::string& text) {
  if (!flags.out.empty()) cl::io::write_json_file(flags.out, j);
  if (flags.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

std::string matrix_line(const cl::HermitianMatrix& m, const std::string& label) {
  return cl::io::matrix_to_json(m, label).dump();
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::vector<int> dims;
  std::optional<int> dim;
  int trials = 0;
  std::optional<double> a;
  std::string input;
};

int run_verify(const VerifyArgs& args, const CommonFlags& flags, const std::string& echo) {
  cl::RunReport report;
  report.command = echo;
  report.seed = flags.resolved_seed();
  report.tol = flags.tolerance();
  const auto start = std::chrono::steady_clock::now();

  if (args.suite == "replay") {
    if (args.input.empty()) throw UsageError("verify replay requires --input");
    report.suites.push_back(cl::replay_counterexample(cl::io::read_json_file(args.input)));
  } else {
    cl::SuiteOptions opts;
    if (args.dim && !args.dims.empty()) throw UsageError("use either --dim or --dims");
    if (args.dim) opts.dims = {*args.dim};
    if (!args.dims.empty()) opts.dims = args.dims;
    if (!args.dim && args.dims.empty() && args.suite.rfind("lemma-primitive", 0) == 0) opts.dims = {4, 5, 8};
    if (args.trials < 0) throw UsageError("--trials must be nonnegative");
    opts.trials = args.trials;
    opts.seed = report.seed;
    opts.tol = report.tol;
    opts.aef_a = args.a;
    if (args.suite == "all") {
      for (int n : opts.dims) {
        if (n < 3) throw std::invalid_argument("dimension " + std::to_string(n) + " is below 3");
      }
    }
    report.suites = cl::run_suites(args.suite, opts);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool timing = !flags.no_timing;
  emit(flags, cl::report_to_json(report, timing), cl::report_to_text(report, timing));
  return report.passed() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------

struct CommutantArgs {
  std::string input;
  std::string which = "c";
};

Json subspace_json(const cl::MatrixSubspace& s, const std::string& label) {
  Json basis = Json::array();
  for (const auto& m : s.basis()) basis.push_back(cl::io::matrix_to_json(m, label));
  return {{"dimension", s.real_dimension()}, {"basis", basis}};
}

void subspace_text(std::ostringstream& out, const std::string& title, const cl::MatrixSubspace& s) {
  out << title << " real dimension: " << s.real_dimension() << '\n';
  int k = 0;
  for (const auto& m : s.basis()) out << "  " << matrix_line(m, title + "[" + std::to_string(k++) + "]") << '\n';
}

int run_commutant(const CommutantArgs& args, const CommonFlags& flags, const std::string& echo) {
  const cl::Tolerance tol = flags.tolerance();
  const cl::io::MatrixFile file = cl::io::read_matrix_file(args.input);
  const cl::HermitianMatrix& a = file.matrix;
  Json j = {{"command", echo}, {"tolerance", cl::io::tolerance_to_json(tol)}, {"which", args.which},
            {"dim", a.dim()}};
  std::ostringstream text;
  text << "command: " << echo << '\n' << "input dim: " << a.dim() << '\n';
  if (args.which == "quasi") {
    const cl::QuasiCommutant q = cl::quasi_commutant(a, tol);
    j["commutant"] = subspace_json(q.commutant_part, "commutant");
    j["anticommutant"] = subspace_json(q.anticommutant_part, "anticommutant");
    subspace_text(text, "commutant", q.commutant_part);
    subspace_text(text, "anticommutant", q.anticommutant_part);
  } else {
    cl::MatrixSubspace s = args.which == "c"      ? cl::commutant(a, tol)
                           : args.which == "anti" ? cl::anticommutant(a, tol)
                                                  : cl::bicommutant(a, tol);
    const std::string title = args.which == "c" ? "commutant" : args.which == "anti" ? "anticommutant" : "bicommutant";
    j[title] = subspace_json(s, title);
    subspace_text(text, title, s);
  }
  emit(flags, j, text.str());
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct SearchArgs {
  std::string kind;
  int dim = 3;
  int budget = 100;
  std::string input;
  std::string x;
  double scale = 1.0;
  bool antiunitary = false;
};

int run_search(const SearchArgs& args, const CommonFlags& flags, const std::string& echo) {
  const cl::Tolerance tol = flags.tolerance();
  const std::uint64_t seed = flags.resolved_seed();
  Json j = {{"command", echo}, {"seed", seed}, {"tolerance", cl::io::tolerance_to_json(tol)},
            {"kind", args.kind}};
  std::ostringstream text;
  text << "command: " << echo << '\n' << "seed: " << seed << '\n';
  int code = kExitPass;

  if (args.kind == "necessity-f") {
    if (args.dim < 3) throw UsageError("--dim must be >= 3");
    if (args.budget < 1) throw UsageError("--budget must be positive");
    cl::NecessityOptions opts;
    opts.dim = args.dim;
    opts.budget = args.budget;
    opts.seed = seed;
    opts.scale = args.scale;
    opts.antiunitary = args.antiunitary;
    opts.tol = tol;
    try {
      const cl::NecessityResult res = cl::necessity_search(opts);
      const cl::Violation& v = res.report.violations.front();
      // The counterexample is the replayable body; --out writes exactly it.
      j = cl::io::counterexample_to_json(res.map, v, tol);
      j["trials"] = res.report.trials;
      text << "violation found after " << res.report.trials << " trials, direction "
           << cl::to_string(v.direction) << '\n'
           << "A " << matrix_line(v.a, "A") << '\n'
           << "B " << matrix_line(v.b, "B") << '\n'
           << "C " << matrix_line(v.c, "C") << '\n'
           << "map " << cl::io::map_to_json(res.map).dump() << '\n';
    } catch (const cl::SearchExhausted& e) {
      j["found"] = false;
      j["error"] = e.what();
      text << "search exhausted: " << e.what() << '\n';
      code = kExitFail;
    }
  } else if (args.kind == "scalar-witness") {
    if (args.input.empty()) throw UsageError("scalar-witness requires --input");
    const cl::HermitianMatrix a = cl::io::read_matrix_file(args.input).matrix;
    try {
      const auto w = cl::scalar_witness(a, seed, tol);
      if (!w) {
        j["found"] = false;
        j["message"] = "scalar input, no witness exists";
        text << "scalar input, no witness exists\n";
      } else {
        j["found"] = true;
        j["b"] = cl::io::matrix_to_json(w->b, "B");
        j["t"] = cl::io::matrix_to_json(w->t, "T");
        j["scale"] = w->scale;
        text << "witness found (B = " << w->scale << " T, (B - A) and B neither commute nor anticommute)\n"
             << "B " << matrix_line(w->b, "B") << '\n';
      }
    } catch (const std::runtime_error& e) {
      j["found"] = false;
      j["error"] = e.what();
      text << "search exhausted: " << e.what() << '\n';
      code = kExitFail;
    }
  } else {
    if (args.input.empty() || args.x.empty()) throw UsageError("lemma7-refute requires --input and --x");
    const cl::HermitianMatrix a = cl::io::read_matrix_file(args.input).matrix;
    const cl::HermitianMatrix x = cl::io::read_matrix_file(args.x).matrix;
    cl::require_same_dim(a, x);
    const cl::BiquasiVerdict v = cl::refute_biquasi_membership(x, a, args.budget, seed, tol);
    j["refuted"] = v.refuted;
    j["candidates_tried"] = v.candidates_tried;
    text << (v.refuted ? "refuted: X is not in A^##" : "not refuted within budget") << " ("
         << v.candidates_tried << " candidates)\n";
    if (v.witness) {
      j["witness"] = cl::io::matrix_to_json(*v.witness, "M");
      text << "M " << matrix_line(*v.witness, "M") << '\n';
    }
  }
  emit(flags, j, text.str());
  return code;
}

// ---------------------------------------------------------------------------

int run_report(const std::string& input, const std::string& format) {
  const Json j = cl::io::read_json_file(input);
  const cl::RunReport report = cl::report_from_json(j);
  if (format == "json") {
    std::cout << cl::report_to_json(report, j.contains("wall_seconds")).dump(2) << '\n';
  } else {
    std::cout << cl::report_to_text(report, j.contains("wall_seconds"));
  }
  return report.passed() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commutant structure and preserver-map verification harness"};
  app.require_subcommand(1);

  std::vector<std::string> suites = cl::suite_names();
  suites.push_back("all");
  suites.push_back("replay");

  VerifyArgs verify;
  CommonFlags verify_flags;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a named suite, or replay a counterexample");
  verify_cmd->add_option("suite", verify.suite, "Suite name")->required()->check(CLI::IsMember(suites));
  auto* dim_opt = verify_cmd->add_option("--dim", verify.dim, "Single dimension");
  verify_cmd->add_option("--dims", verify.dims, "Comma-separated dimensions")->delimiter(',')->excludes(dim_opt);
  verify_cmd->add_option("--trials", verify.trials, "Trials per suite unit (0 = suite default)");
  verify_cmd->add_option("--a", verify.a, "lemma-aef parameter");
  verify_cmd->add_option("--input", verify.input, "Counterexample file for replay");
  verify_flags.attach(verify_cmd);

  CommutantArgs commutant;
  CommonFlags commutant_flags;
  CLI::App* commutant_cmd = app.add_subcommand("commutant", "Compute a commutant structure of a matrix file");
  commutant_cmd->add_option("--input", commutant.input, "Matrix file")->required();
  commutant_cmd->add_option("--which", commutant.which, "c, anti, quasi or cc")
      ->check(CLI::IsMember({"c", "anti", "quasi", "cc"}));
  commutant_flags.attach(commutant_cmd);

  SearchArgs search;
  CommonFlags search_flags;
  CLI::App* search_cmd = app.add_subcommand("search", "Run a witness or counterexample search");
  search_cmd->add_option("kind", search.kind, "necessity-f, scalar-witness or lemma7-refute")
      ->required()
      ->check(CLI::IsMember({"necessity-f", "scalar-witness", "lemma7-refute"}));
  search_cmd->add_option("--dim", search.dim, "Dimension for necessity-f");
  search_cmd->add_option("--budget", search.budget, "Trial or candidate budget");
  search_cmd->add_option("--input", search.input, "Matrix file A");
  search_cmd->add_option("--x", search.x, "Matrix file X for lemma7-refute");
  search_cmd->add_option("--scale", search.scale, "Map scale c for necessity-f");
  search_cmd->add_flag("--antiunitary", search.antiunitary, "Antiunitary map for necessity-f");
  search_flags.attach(search_cmd);

  std::string report_input;
  std::string report_format = "text";
  CLI::App* report_cmd = app.add_subcommand("report", "Pretty-print a saved report");
  report_cmd->add_option("--input", report_input, "Report JSON file")->required();
  report_cmd->add_option("--format", report_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string echo = command_echo(argc, argv);
  try {
    if (verify_cmd->parsed()) return run_verify(verify, verify_flags, echo);
    if (commutant_cmd->parsed()) return run_commutant(commutant, commutant_flags, echo);
    if (search_cmd->parsed()) return run_search(search, search_flags, echo);
    if (report_cmd->parsed()) return run_report(report_input, report_format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
