#pragma once

#include <optional>
#include <vector>

#include "commutant_lab/hermitian.hpp"
#include "commutant_lab/subspace.hpp"

namespace commutant_lab {

/// Outcome of the partition oracle for the minimality conditions.
struct MinimalityVerdict {
  /// True iff every B = f(A) with B^cc strictly inside A^cc is scalar.
  bool holds = true;
  /// When the condition fails: the spectral projection onto the two lowest
  /// spectral points, which is nonscalar with strictly smaller bicommutant.
  std::optional<HermitianMatrix> witness;
  int partitions_checked = 0;
};

/// Decides "B^cc strictly inside A^cc implies B scalar" for nonscalar A.
/// In finite dimensions such B are f(A) for non-injective f on sigma(A), so
/// the check runs over proper set partitions of the spectral points.
/// Throws std::invalid_argument for scalar A.
MinimalityVerdict lemma18_minimality(const HermitianMatrix& a, const Tolerance& tol = {});

/// Two spectral points summing to zero: alpha (I - 2P), P nontrivial.
bool in_K(const HermitianMatrix& a, const Tolerance& tol = {});

/// Two spectral points that do not sum to zero. Requires nonscalar A with
/// A^# = A^c (throws otherwise).
bool lemma181_condition(const HermitianMatrix& a, const Tolerance& tol = {});

/// Partition oracle for the quasi variant: only B with B^# = B^c take part,
/// and the order is taken on ## (equal to cc under that hypothesis).
MinimalityVerdict lemma181_partition_oracle(const HermitianMatrix& a, const Tolerance& tol = {});

/// alpha P + beta I with P rank one, alpha != 0.
bool is_primitive(const HermitianMatrix& a, const Tolerance& tol = {});

/// True iff P is an orthogonal projection within tolerance.
bool is_projection(const HermitianMatrix& p, const Tolerance& tol = {});
/// trace(P) rounded; P must be a projection.
int projection_rank(const HermitianMatrix& p, const Tolerance& tol = {});

struct PrimitiveWitnesses {
  HermitianMatrix a;   // alpha P + beta I
  HermitianMatrix b;   // in A^c, two spectral points
  HermitianMatrix c;   // A^cc < C^cc < (A - B)^cc
  HermitianMatrix q1;  // rank one, Q1 <= P
  HermitianMatrix q2;  // rank one, Q2 <= I - P
};

/// Constructs the witnesses for A = alpha P + beta I with rank P >= 2 and
/// corank P >= 2 (dim >= 4). Q1, Q2 are the first eigenvectors of P on its
/// 1- and 0-eigenspaces, then
///   B = -2|alpha| (Q1 + Q2) - 2I,   C = Q1 + 2(P - Q1) + 3(I - P),
/// so that A - B takes four distinct values on Q1, P - Q1, Q2, I - P - Q2.
PrimitiveWitnesses lemma_primitive_witnesses(const HermitianMatrix& p, double alpha, double beta,
                                             const Tolerance& tol = {});

struct PrimitiveChainReport {
  int dim_a_cc = 0;
  int dim_c_cc = 0;
  int dim_a_minus_b_cc = 0;
  bool b_two_points = false;
  bool b_commutes_with_a = false;
  bool b_commutant_differs = false;
  bool a_cc_lt_c_cc = false;
  bool c_cc_lt_a_minus_b_cc = false;
  // Quasi-side hypotheses.
  bool a_quasi_equals = false;
  bool b_quasi_equals = false;
  bool c_quasi_equals = false;
  bool a_minus_b_quasi_equals = false;

  bool chain_holds() const {
    return b_two_points && b_commutes_with_a && b_commutant_differs && a_cc_lt_c_cc &&
           c_cc_lt_a_minus_b_cc;
  }
  bool quasi_chain_holds() const {
    return chain_holds() && a_quasi_equals && b_quasi_equals && c_quasi_equals &&
           a_minus_b_quasi_equals;
  }
};

PrimitiveChainReport check_primitive_chain(const PrimitiveWitnesses& w, const Tolerance& tol = {});

/// The three operators built on the first two coordinates plus the rest:
///   A = [[-a, 1], [1, a]] + lambda I,  E = [[-a, 0], [0, a]] + a I,
///   F = [[0, 1], [1, 0]] + I,          lambda = sqrt(1 + a^2).
struct AefFixture {
  HermitianMatrix a;
  HermitianMatrix e;
  HermitianMatrix f;
  double lambda = 0;
};

AefFixture build_aef(double a, int dim);

struct AefReport {
  bool spectra_ok = false;      // sigma(A) = {+-lambda}, sigma(E) = {+-a}, sigma(F) = {+-1}
  double spectrum_error = 0;    // worst |computed - expected| over the three spectra
  int commute_mismatches = 0;   // grid points where "commutes" disagrees with alpha = scale
  int jordan_zero_hits = 0;     // grid points where a Jordan product vanished
  int grid_points = 0;

  bool passed() const { return spectra_ok && commute_mismatches == 0 && jordan_zero_hits == 0; }
};

/// Checks the fixture's spectra and, over all (alpha, eps) in grid x grid,
/// alpha A - eps E <-> F iff alpha = eps, alpha A - eps F <-> E iff
/// alpha = eps, and that (alpha A - eps E) o F and (alpha A - eps F) o E are
/// nonzero.
AefReport check_aef(const AefFixture& fx, const std::vector<double>& grid,
                    double spectrum_tol = 1e-10, const Tolerance& tol = {});

}  // namespace commutant_lab
