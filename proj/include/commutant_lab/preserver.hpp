#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "commutant_lab/hermitian.hpp"

namespace commutant_lab {

/// The scalar shift g (or f) of a theorem-form map: a deterministic rule
/// assigning a real number to every input matrix.
class ShiftPolicy {
 public:
  enum class Kind { zero, constant, trace_based, theorem_compliant_quasi, pointwise, custom };

  static ShiftPolicy zero();
  static ShiftPolicy constant(double t);
  /// trace(A) / dim.
  static ShiftPolicy trace_based();
  /// 0 whenever A has a noncommuting anticommuting partner, else inner(A).
  static ShiftPolicy theorem_compliant_quasi(ShiftPolicy inner, const Tolerance& tol = {});
  /// value_k on inputs byte-equal to point_k, fallback elsewhere.
  static ShiftPolicy pointwise(std::vector<std::pair<HermitianMatrix, double>> points,
                               ShiftPolicy fallback);
  static ShiftPolicy custom(std::function<double(const HermitianMatrix&)> rule, std::string name);

  double operator()(const HermitianMatrix& a) const;

  Kind kind() const { return kind_; }
  double constant_value() const { return value_; }
  /// Inner policy for theorem_compliant_quasi, fallback for pointwise.
  const ShiftPolicy* inner() const { return inner_.get(); }
  const std::vector<std::pair<HermitianMatrix, double>>& points() const { return points_; }
  const Tolerance& tolerance() const { return tol_; }
  std::string describe() const;

 private:
  ShiftPolicy() = default;

  Kind kind_ = Kind::zero;
  double value_ = 0.0;
  std::shared_ptr<const ShiftPolicy> inner_;
  std::vector<std::pair<HermitianMatrix, double>> points_;
  std::function<double(const HermitianMatrix&)> rule_;
  std::string name_;
  Tolerance tol_;
};

/// A -> c U A U* + shift(A) I, or c U conj(A) U* + shift(A) I when
/// antiunitary (conjugation followed by the unitary).
class PreserverMap {
 public:
  PreserverMap(double scale, ComplexMatrix conjugator, bool antiunitary, ShiftPolicy shift,
               RelationKind relation);

  static PreserverMap identity(int dim, RelationKind relation = RelationKind::commutative);

  double scale() const { return scale_; }
  const ComplexMatrix& conjugator() const { return conjugator_; }
  bool antiunitary() const { return antiunitary_; }
  const ShiftPolicy& shift() const { return shift_; }
  RelationKind relation() const { return relation_; }
  int dim() const { return static_cast<int>(conjugator_.rows()); }

 private:
  double scale_;
  ComplexMatrix conjugator_;
  bool antiunitary_;
  ShiftPolicy shift_;
  RelationKind relation_;
};

HermitianMatrix apply_map(const PreserverMap& m, const HermitianMatrix& a);

/// The single theorem-form map equal to outer(inner(.)).
PreserverMap compose(const PreserverMap& outer, const PreserverMap& inner);

enum class TriadicVerdict { both_hold, both_fail, violation_forward, violation_backward };

const char* to_string(TriadicVerdict v);
TriadicVerdict triadic_verdict_from_string(const std::string& s);

/// Compares the triadic relation on (A, B, C) with the one on their images.
TriadicVerdict check_triadic(const PreserverMap& m, const HermitianMatrix& a,
                             const HermitianMatrix& b, const HermitianMatrix& c,
                             const Tolerance& tol = {});

struct Violation {
  int trial = 0;
  HermitianMatrix a;
  HermitianMatrix b;
  HermitianMatrix c;
  TriadicVerdict direction = TriadicVerdict::violation_forward;
};

struct TrialReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  int trials = 0;
  int both_hold = 0;
  int both_fail = 0;
  std::vector<Violation> violations;
  double elapsed_seconds = 0.0;
};

struct GeneratorMix {
  /// Fraction of plain random triples; the rest are structured triples
  /// built so the source relation holds.
  double random_fraction = 0.3;
};

/// Draws one triple for trial `index`; deterministic per (seed, index, dim).
struct Triple {
  HermitianMatrix a;
  HermitianMatrix b;
  HermitianMatrix c;
};
Triple sample_triple(int dim, std::uint64_t seed, int index, const GeneratorMix& mix = {},
                     const Tolerance& tol = {});

/// Builds the map used at a given dimension (the conjugator is dim-specific).
using MapFactory = std::function<PreserverMap(int dim)>;

/// Runs check_triadic over `trials` sampled triples, cycling through dims;
/// trial t uses dims[t % dims.size()] and the per-trial seed (seed, t).
TrialReport property_run(const MapFactory& factory, const std::vector<int>& dims, int trials,
                         std::uint64_t seed, const Tolerance& tol = {},
                         const GeneratorMix& mix = {}, const std::string& suite = "property");
/// Single-dimension run with a fixed map.
TrialReport property_run(const PreserverMap& m, int trials, std::uint64_t seed,
                         const Tolerance& tol = {}, const GeneratorMix& mix = {},
                         const std::string& suite = "property");

class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NecessityOptions {
  int dim = 3;
  int budget = 100;
  std::uint64_t seed = 1;
  double scale = 1.0;
  bool antiunitary = false;
  /// Overrides the default shift (1 on diag(1, -1, 0, ...), 0 elsewhere).
  std::optional<ShiftPolicy> shift;
  Tolerance tol;
};

struct NecessityResult {
  PreserverMap map;
  TrialReport report;
};

/// diag(1, -1, 0, ..., 0).
HermitianMatrix necessity_base_operator(int dim);

/// Searches triples (A0, tI, C), C anticommuting with but not commuting with
/// A0, for a violation of the quasi triadic relation by a map whose shift is
/// nonzero at A0. Stops at the first violation; throws SearchExhausted if
/// none is found within the budget.
NecessityResult necessity_search(const NecessityOptions& opts);

struct Lemma4Result {
  bool premises_hold_at_a = false;
  std::optional<HermitianMatrix> counterexample;
  int candidates_tried = 0;

  bool passed() const { return premises_hold_at_a && !counterexample; }
};

/// With A = lambda P, checks that B = A satisfies both premises
/// (A - lambda I) o B = 0 and (B - lambda I) o A = 0, and that no candidate B
/// with ||B - A||_F > 1e-6 does.
Lemma4Result lemma4_check(double lambda, const HermitianMatrix& p, int candidates,
                          std::uint64_t seed, const Tolerance& tol = {});

}  // namespace commutant_lab
