#include "commutant_lab/preserver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "commutant_lab/commutant.hpp"
#include "commutant_lab/sampling.hpp"
#include "commutant_lab/spectral.hpp"
#include "commutant_lab/structure.hpp"

namespace commutant_lab {

// ---------------------------------------------------------------------------
// Shift policies

ShiftPolicy ShiftPolicy::zero() { return ShiftPolicy(); }

ShiftPolicy ShiftPolicy::constant(double t) {
  ShiftPolicy p;
  p.kind_ = Kind::constant;
  p.value_ = t;
  return p;
}

ShiftPolicy ShiftPolicy::trace_based() {
  ShiftPolicy p;
  p.kind_ = Kind::trace_based;
  return p;
}

ShiftPolicy ShiftPolicy::theorem_compliant_quasi(ShiftPolicy inner, const Tolerance& tol) {
  ShiftPolicy p;
  p.kind_ = Kind::theorem_compliant_quasi;
  p.inner_ = std::make_shared<const ShiftPolicy>(std::move(inner));
  p.tol_ = tol;
  return p;
}

ShiftPolicy ShiftPolicy::pointwise(std::vector<std::pair<HermitianMatrix, double>> points,
                                   ShiftPolicy fallback) {
  ShiftPolicy p;
  p.kind_ = Kind::pointwise;
  p.points_ = std::move(points);
  p.inner_ = std::make_shared<const ShiftPolicy>(std::move(fallback));
  return p;
}

ShiftPolicy ShiftPolicy::custom(std::function<double(const HermitianMatrix&)> rule,
                                std::string name) {
  ShiftPolicy p;
  p.kind_ = Kind::custom;
  p.rule_ = std::move(rule);
  p.name_ = std::move(name);
  return p;
}

double ShiftPolicy::operator()(const HermitianMatrix& a) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::constant:
      return value_;
    case Kind::trace_based:
      return a.trace() / a.dim();
    case Kind::theorem_compliant_quasi:
      if (noncommuting_anticommuting_partner(a, tol_)) return 0.0;
      return (*inner_)(a);
    case Kind::pointwise:
      for (const auto& [point, value] : points_) {
        if (point == a) return value;
      }
      return (*inner_)(a);
    case Kind::custom:
      return rule_(a);
  }
  return 0.0;
}

std::string ShiftPolicy::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::zero:
      out << "zero";
      break;
    case Kind::constant:
      out << "constant(" << value_ << ")";
      break;
    case Kind::trace_based:
      out << "trace_based";
      break;
    case Kind::theorem_compliant_quasi:
      out << "theorem_compliant_quasi(" << inner_->describe() << ")";
      break;
    case Kind::pointwise:
      out << "pointwise(" << points_.size() << " points, else " << inner_->describe() << ")";
      break;
    case Kind::custom:
      out << name_;
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Maps

PreserverMap::PreserverMap(double scale, ComplexMatrix conjugator, bool antiunitary,
                           ShiftPolicy shift, RelationKind relation)
    : scale_(scale),
      conjugator_(std::move(conjugator)),
      antiunitary_(antiunitary),
      shift_(std::move(shift)),
      relation_(relation) {
  if (!(std::abs(scale_) > 0.0) || !std::isfinite(scale_)) {
    throw std::invalid_argument("map scale must be finite and nonzero");
  }
  if (unitarity_defect(conjugator_) > 1e-12) {
    throw std::invalid_argument("conjugator is not unitary within 1e-12");
  }
}

PreserverMap PreserverMap::identity(int dim, RelationKind relation) {
  return PreserverMap(1.0, ComplexMatrix::Identity(dim, dim), false, ShiftPolicy::zero(), relation);
}

HermitianMatrix apply_map(const PreserverMap& m, const HermitianMatrix& a) {
  if (a.dim() != m.dim()) throw std::invalid_argument("map and operand dimensions differ");
  const ComplexMatrix& u = m.conjugator();
  const ComplexMatrix& src = m.antiunitary() ? ComplexMatrix(a.matrix().conjugate()) : a.matrix();
  ComplexMatrix image = m.scale() * (u * src * u.adjoint());
  image.diagonal().array() += m.shift()(a);
  return HermitianMatrix::symmetrized(image);
}

PreserverMap compose(const PreserverMap& outer, const PreserverMap& inner) {
  if (outer.dim() != inner.dim()) throw std::invalid_argument("composed maps differ in dimension");
  if (outer.relation() != inner.relation()) throw std::invalid_argument("composed maps differ in relation kind");
  // conj(U X U*) = conj(U) conj(X) conj(U)*, so an antiunitary outer map
  // conjugates the inner unitary.
  const ComplexMatrix inner_u =
      outer.antiunitary() ? ComplexMatrix(inner.conjugator().conjugate()) : inner.conjugator();
  ComplexMatrix u = outer.conjugator() * inner_u;
  const double outer_scale = outer.scale();
  auto shift = [outer, inner, outer_scale](const HermitianMatrix& a) {
    return outer_scale * inner.shift()(a) + outer.shift()(apply_map(inner, a));
  };
  return PreserverMap(
      outer.scale() * inner.scale(), std::move(u), outer.antiunitary() != inner.antiunitary(),
      ShiftPolicy::custom(shift, "composed(" + outer.shift().describe() + ", " +
                                     inner.shift().describe() + ")"),
      outer.relation());
}

const char* to_string(TriadicVerdict v) {
  switch (v) {
    case TriadicVerdict::both_hold:
      return "both_hold";
    case TriadicVerdict::both_fail:
      return "both_fail";
    case TriadicVerdict::violation_forward:
      return "forward";
    case TriadicVerdict::violation_backward:
      return "backward";
  }
  return "unknown";
}

TriadicVerdict triadic_verdict_from_string(const std::string& s) {
  if (s == "both_hold") return TriadicVerdict::both_hold;
  if (s == "both_fail") return TriadicVerdict::both_fail;
  if (s == "forward") return TriadicVerdict::violation_forward;
  if (s == "backward") return TriadicVerdict::violation_backward;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

TriadicVerdict check_triadic(const PreserverMap& m, const HermitianMatrix& a,
                             const HermitianMatrix& b, const HermitianMatrix& c,
                             const Tolerance& tol) {
  const bool source = triadic_relation(a, b, c, m.relation(), tol);
  const bool image =
      triadic_relation(apply_map(m, a), apply_map(m, b), apply_map(m, c), m.relation(), tol);
  if (source == image) return source ? TriadicVerdict::both_hold : TriadicVerdict::both_fail;
  return source ? TriadicVerdict::violation_forward : TriadicVerdict::violation_backward;
}

// ---------------------------------------------------------------------------
// Triple generation

namespace {

HermitianMatrix conjugate_by(const ComplexMatrix& u, const HermitianMatrix& h) {
  return HermitianMatrix::symmetrized(u * h.matrix() * u.adjoint());
}

}  // namespace

Triple sample_triple(int dim, std::uint64_t seed, int index, const GeneratorMix& mix,
                     const Tolerance& tol) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  if (unit(rng) < mix.random_fraction) {
    HermitianMatrix a = random_hermitian(dim, rng);
    HermitianMatrix b = random_hermitian(dim, rng);
    HermitianMatrix c = random_hermitian(dim, rng);
    return {std::move(a), std::move(b), std::move(c)};
  }
  const HermitianMatrix id = HermitianMatrix::identity(dim);
  std::uniform_int_distribution<int> family(0, 6);
  switch (family(rng)) {
    case 0: {  // scalar difference
      HermitianMatrix a = random_hermitian(dim, rng);
      HermitianMatrix b = a + normal(rng) * id;
      return {std::move(a), std::move(b), random_hermitian(dim, rng)};
    }
    case 1: {  // generic difference, C in its commutant
      HermitianMatrix a = random_hermitian(dim, rng);
      HermitianMatrix b = random_hermitian(dim, rng);
      HermitianMatrix c = random_element(commutant(a - b, tol), rng);
      return {std::move(a), std::move(b), std::move(c)};
    }
    case 2: {  // degenerate difference, C in its commutant
      const HermitianMatrix d = random_with_spectrum(degenerate_spectrum(dim, rng), rng);
      HermitianMatrix b = random_hermitian(dim, rng);
      HermitianMatrix a = b + d;
      HermitianMatrix c = random_element(commutant(d, tol), rng);
      return {std::move(a), std::move(b), std::move(c)};
    }
    case 3: {  // difference with a +-pair, C in its anticommutant
      const HermitianMatrix d = random_with_spectrum(opposite_pair_spectrum(dim, rng), rng);
      HermitianMatrix b = random_hermitian(dim, rng);
      HermitianMatrix a = b + d;
      HermitianMatrix c = random_element(anticommutant(d, tol), rng);
      return {std::move(a), std::move(b), std::move(c)};
    }
    case 4: {  // AEF fixtures under a random unitary
      const double grid[] = {-2.0, -0.5, 0.5, 1.0, 2.0};
      std::uniform_int_distribution<int> g(0, 4);
      const double a_param = grid[g(rng)];
      const AefFixture fx = build_aef(a_param, dim);
      const ComplexMatrix u = random_unitary(dim, rng);
      const double alpha = grid[g(rng)];
      const double eps = unit(rng) < 0.5 ? alpha : grid[g(rng)];
      if (unit(rng) < 0.5) {
        return {conjugate_by(u, alpha * fx.a), conjugate_by(u, eps * fx.e), conjugate_by(u, fx.f)};
      }
      return {conjugate_by(u, alpha * fx.a), conjugate_by(u, eps * fx.f), conjugate_by(u, fx.e)};
    }
    case 5: {  // projections from one frame
      const ComplexMatrix u = random_unitary(dim, rng);
      std::uniform_int_distribution<int> cut(1, dim - 1);
      auto frame_projection = [&](int lo, int hi) {
        const ComplexMatrix cols = u.middleCols(lo, hi - lo);
        return HermitianMatrix::symmetrized(cols * cols.adjoint());
      };
      const int r1 = cut(rng);
      const int r2 = cut(rng);
      HermitianMatrix a = normal(rng) * frame_projection(0, r1) + normal(rng) * id;
      HermitianMatrix b = normal(rng) * frame_projection(0, r2) + normal(rng) * id;
      const int lo = std::min(r1, r2) - 1;
      HermitianMatrix c = frame_projection(std::max(lo, 0), dim);
      return {std::move(a), std::move(b), std::move(c)};
    }
    default: {  // C a function of the difference
      HermitianMatrix a = random_hermitian(dim, rng);
      HermitianMatrix b = random_hermitian(dim, rng);
      const SpectralData s = spectral_decompose(a - b, tol);
      std::vector<double> values(static_cast<std::size_t>(s.count()));
      for (auto& v : values) v = normal(rng);
      HermitianMatrix c = apply_function(s, values);
      return {std::move(a), std::move(b), std::move(c)};
    }
  }
}

TrialReport property_run(const MapFactory& factory, const std::vector<int>& dims, int trials,
                         std::uint64_t seed, const Tolerance& tol, const GeneratorMix& mix,
                         const std::string& suite) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (dims.empty()) throw std::invalid_argument("at least one dimension is required");
  std::vector<PreserverMap> maps;
  for (int d : dims) {
    maps.push_back(factory(d));
    if (maps.back().dim() != d) throw std::invalid_argument("map factory returned the wrong dimension");
  }
  const auto start = std::chrono::steady_clock::now();
  TrialReport report;
  report.suite = suite;
  report.seed = seed;
  report.dims = dims;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::size_t slot = static_cast<std::size_t>(t) % dims.size();
    Triple tr = sample_triple(dims[slot], seed, t, mix, tol);
    const TriadicVerdict v = check_triadic(maps[slot], tr.a, tr.b, tr.c, tol);
    switch (v) {
      case TriadicVerdict::both_hold:
        ++report.both_hold;
        break;
      case TriadicVerdict::both_fail:
        ++report.both_fail;
        break;
      default:
        report.violations.push_back({t, std::move(tr.a), std::move(tr.b), std::move(tr.c), v});
    }
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

TrialReport property_run(const PreserverMap& m, int trials, std::uint64_t seed,
                         const Tolerance& tol, const GeneratorMix& mix, const std::string& suite) {
  return property_run([&m](int) { return m; }, {m.dim()}, trials, seed, tol, mix, suite);
}

// ---------------------------------------------------------------------------
// Necessity of the vanishing condition

HermitianMatrix necessity_base_operator(int dim) {
  if (dim < 2) throw std::invalid_argument("necessity search needs dim >= 2");
  std::vector<double> values(static_cast<std::size_t>(dim), 0.0);
  values[0] = 1.0;
  values[1] = -1.0;
  return HermitianMatrix::diagonal(values);
}

NecessityResult necessity_search(const NecessityOptions& opts) {
  if (opts.budget < 1) throw std::invalid_argument("budget must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const int n = opts.dim;
  const HermitianMatrix a0 = necessity_base_operator(n);
  Rng rng(opts.seed);
  const ComplexMatrix u = random_unitary(n, rng);
  ShiftPolicy shift = opts.shift ? *opts.shift
                                 : ShiftPolicy::pointwise({{a0, 1.0}}, ShiftPolicy::zero());
  PreserverMap map(opts.scale, u, opts.antiunitary, std::move(shift), RelationKind::quasi);

  const MatrixSubspace anti = anticommutant(a0, opts.tol);
  const HermitianMatrix id = HermitianMatrix::identity(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 2);

  TrialReport report;
  report.suite = "necessity-f";
  report.seed = opts.seed;
  report.dims = {n};
  for (int t = 0; t < opts.budget; ++t) {
    report.trials = t + 1;
    HermitianMatrix c = random_element(anti, rng);
    if (rel_c(a0, c, opts.tol)) {
      ++report.both_fail;
      continue;
    }
    c = c * (1.0 / c.frobenius_norm());
    double shift_t = 0.0;
    if (t > 0) {
      const int choice = pick(rng);
      shift_t = choice == 0 ? 0.0 : choice == 1 ? 1.0 / opts.scale : normal(rng);
    }
    const HermitianMatrix b = shift_t * id;
    const TriadicVerdict v = check_triadic(map, a0, b, c, opts.tol);
    if (v == TriadicVerdict::violation_forward || v == TriadicVerdict::violation_backward) {
      report.violations.push_back({t, a0, b, c, v});
      break;
    }
    if (v == TriadicVerdict::both_hold) ++report.both_hold;
    else ++report.both_fail;
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (report.violations.empty()) {
    throw SearchExhausted("necessity search found no violation within " +
                          std::to_string(opts.budget) + " trials");
  }
  return NecessityResult{std::move(map), std::move(report)};
}

// ---------------------------------------------------------------------------
// Rigidity for A = lambda P

Lemma4Result lemma4_check(double lambda, const HermitianMatrix& p, int candidates,
                          std::uint64_t seed, const Tolerance& tol) {
  if (lambda == 0.0) throw std::invalid_argument("lambda must be nonzero");
  const int n = p.dim();
  if ((p.matrix() * p.matrix() - p.matrix()).norm() > tol.rel_zero * std::max(1.0, p.frobenius_norm())) {
    throw std::invalid_argument("P must be a projection");
  }
  const HermitianMatrix id = HermitianMatrix::identity(n);
  const HermitianMatrix a = lambda * p;
  const HermitianMatrix shifted_a = a - lambda * id;
  auto premises = [&](const HermitianMatrix& b) {
    return rel_j(shifted_a, b, tol) && rel_j(b - lambda * id, a, tol);
  };

  Lemma4Result result;
  result.premises_hold_at_a = premises(a);
  auto try_candidate = [&](const HermitianMatrix& b) {
    ++result.candidates_tried;
    if ((b - a).frobenius_norm() > 1e-6 && premises(b)) {
      result.counterexample = b;
      return true;
    }
    return false;
  };

  const HermitianMatrix specials[] = {2.0 * a, -a, HermitianMatrix::zero(n), lambda * id,
                                      lambda * (id - p), a + lambda * id, 0.5 * a};
  for (const auto& b : specials) {
    if (try_candidate(b)) return result;
  }

  // Candidates satisfying the first premise exactly stress the second one.
  const MatrixSubspace first_premise = anticommutant(shifted_a, tol);
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double perturbations[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  for (int k = 0; k < candidates; ++k) {
    HermitianMatrix b;
    switch (k % 4) {
      case 0:
        b = random_hermitian(n, rng);
        break;
      case 1:
        b = a + perturbations[(k / 4) % 5] * random_hermitian(n, rng);
        break;
      case 2:
        b = random_element(first_premise, rng);
        break;
      default:
        b = a + normal(rng) * random_element(first_premise, rng);
        break;
    }
    if (try_candidate(b)) return result;
  }
  return result;
}

}  // namespace commutant_lab
