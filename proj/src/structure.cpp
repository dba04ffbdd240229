#include "commutant_lab/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "commutant_lab/commutant.hpp"
#include "commutant_lab/spectral.hpp"

namespace commutant_lab {

namespace {

// Calls visit(labels, block_count) for every set partition of {0..k-1},
// encoded as a restricted growth string. Stops when visit returns false.
template <typename Visit>
void for_each_partition(int k, Visit&& visit) {
  std::vector<int> labels(static_cast<std::size_t>(k), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(k), 0);
  while (true) {
    const int blocks = k == 0 ? 0 : prefix_max.back() + 1;
    if (!visit(labels, blocks)) return;
    int i = k - 1;
    while (i > 0 && labels[i] == prefix_max[i - 1] + 1) --i;
    if (i <= 0) return;
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
    for (int j = i + 1; j < k; ++j) {
      labels[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

HermitianMatrix lower_spectral_projection(const SpectralData& s) {
  return s.projections[0] + s.projections[1];
}

MinimalityVerdict partition_oracle(const HermitianMatrix& a, bool quasi_side, const Tolerance& tol) {
  const SpectralData s = spectral_decompose(a, tol);
  const int k = s.count();
  const MatrixSubspace a_cc = bicommutant(a, tol);
  MinimalityVerdict verdict;
  for_each_partition(k, [&](const std::vector<int>& labels, int blocks) {
    if (blocks >= k) return true;  // injective relabelling, B^cc = A^cc
    ++verdict.partitions_checked;
    // Positive distinct block values keep B^# = B^c.
    std::vector<double> values(labels.begin(), labels.end());
    for (double& v : values) v += 1.0;
    const HermitianMatrix b = apply_function(s, values);
    if (is_scalar(b, tol)) return true;
    if (quasi_side && !quasi_equals_commutant(b, tol)) return true;
    if (subspace_proper_lt(bicommutant(b, tol), a_cc, tol)) {
      verdict.holds = false;
      return false;
    }
    return true;
  });
  if (!verdict.holds) verdict.witness = lower_spectral_projection(s);
  return verdict;
}

void require_nonscalar(const HermitianMatrix& a, const Tolerance& tol) {
  if (is_scalar(a, tol)) throw std::invalid_argument("operation requires a nonscalar operator");
}

}  // namespace

MinimalityVerdict lemma18_minimality(const HermitianMatrix& a, const Tolerance& tol) {
  require_nonscalar(a, tol);
  return partition_oracle(a, false, tol);
}

bool in_K(const HermitianMatrix& a, const Tolerance& tol) {
  const SpectralData s = spectral_decompose(a, tol);
  if (s.count() != 2) return false;
  const double sum = s.distinct_values[0] + s.distinct_values[1];
  return std::abs(sum) <= tol.rel_zero * std::max(1.0, a.frobenius_norm());
}

bool lemma181_condition(const HermitianMatrix& a, const Tolerance& tol) {
  require_nonscalar(a, tol);
  if (!quasi_equals_commutant(a, tol)) {
    throw std::invalid_argument("operation requires A^# = A^c");
  }
  return has_two_point_spectrum(a, tol) && !in_K(a, tol);
}

MinimalityVerdict lemma181_partition_oracle(const HermitianMatrix& a, const Tolerance& tol) {
  require_nonscalar(a, tol);
  if (!quasi_equals_commutant(a, tol)) {
    throw std::invalid_argument("operation requires A^# = A^c");
  }
  return partition_oracle(a, true, tol);
}

bool is_primitive(const HermitianMatrix& a, const Tolerance& tol) {
  const SpectralData s = spectral_decompose(a, tol);
  return s.count() == 2 && std::min(s.multiplicities[0], s.multiplicities[1]) == 1;
}

bool is_projection(const HermitianMatrix& p, const Tolerance& tol) {
  const ComplexMatrix sq = p.matrix() * p.matrix();
  return (sq - p.matrix()).norm() <= tol.rel_zero * std::max(1.0, p.frobenius_norm());
}

int projection_rank(const HermitianMatrix& p, const Tolerance& tol) {
  if (!is_projection(p, tol)) throw std::invalid_argument("matrix is not a projection");
  return static_cast<int>(std::lround(p.trace()));
}

PrimitiveWitnesses lemma_primitive_witnesses(const HermitianMatrix& p, double alpha, double beta,
                                             const Tolerance& tol) {
  const int n = p.dim();
  if (n < 4) throw std::invalid_argument("primitive witnesses need dim >= 4");
  if (alpha == 0.0) throw std::invalid_argument("alpha must be nonzero");
  const int rank = projection_rank(p, tol);
  if (rank < 2 || n - rank < 2) {
    throw std::invalid_argument("primitive witnesses need rank P >= 2 and corank P >= 2");
  }
  const SpectralData s = spectral_decompose(p, tol);
  // Clusters are sorted: index 0 is the kernel, index 1 the range.
  const Eigen::VectorXcd v2 = s.eigenvectors[0].col(0);
  const Eigen::VectorXcd v1 = s.eigenvectors[1].col(0);
  const HermitianMatrix q1 = HermitianMatrix::symmetrized(v1 * v1.adjoint());
  const HermitianMatrix q2 = HermitianMatrix::symmetrized(v2 * v2.adjoint());
  const HermitianMatrix id = HermitianMatrix::identity(n);

  PrimitiveWitnesses w;
  w.a = alpha * p + beta * id;
  w.q1 = q1;
  w.q2 = q2;
  w.b = (-2.0 * std::abs(alpha)) * (q1 + q2) - 2.0 * id;
  w.c = q1 + 2.0 * (p - q1) + 3.0 * (id - p);
  return w;
}

PrimitiveChainReport check_primitive_chain(const PrimitiveWitnesses& w, const Tolerance& tol) {
  PrimitiveChainReport r;
  const HermitianMatrix a_minus_b = w.a - w.b;
  const MatrixSubspace a_cc = bicommutant(w.a, tol);
  const MatrixSubspace c_cc = bicommutant(w.c, tol);
  const MatrixSubspace amb_cc = bicommutant(a_minus_b, tol);
  r.dim_a_cc = a_cc.real_dimension();
  r.dim_c_cc = c_cc.real_dimension();
  r.dim_a_minus_b_cc = amb_cc.real_dimension();
  r.b_two_points = has_two_point_spectrum(w.b, tol);
  r.b_commutes_with_a = rel_c(w.a, w.b, tol);
  r.b_commutant_differs = !subspace_eq(commutant(w.b, tol), commutant(w.a, tol), tol);
  r.a_cc_lt_c_cc = subspace_proper_lt(a_cc, c_cc, tol);
  r.c_cc_lt_a_minus_b_cc = subspace_proper_lt(c_cc, amb_cc, tol);
  r.a_quasi_equals = quasi_equals_commutant(w.a, tol);
  r.b_quasi_equals = quasi_equals_commutant(w.b, tol);
  r.c_quasi_equals = quasi_equals_commutant(w.c, tol);
  r.a_minus_b_quasi_equals = quasi_equals_commutant(a_minus_b, tol);
  return r;
}

AefFixture build_aef(double a, int dim) {
  if (a == 0.0 || !std::isfinite(a)) throw std::invalid_argument("parameter a must be finite and nonzero");
  if (dim < 3) throw std::invalid_argument("AEF fixtures need dim >= 3");
  const double lambda = std::sqrt(1.0 + a * a);
  ComplexMatrix ma = ComplexMatrix::Identity(dim, dim) * lambda;
  ComplexMatrix me = ComplexMatrix::Identity(dim, dim) * a;
  ComplexMatrix mf = ComplexMatrix::Identity(dim, dim);
  ma(0, 0) = -a;
  ma(0, 1) = 1.0;
  ma(1, 0) = 1.0;
  ma(1, 1) = a;
  me(0, 0) = -a;
  me(1, 1) = a;
  mf(0, 0) = 0.0;
  mf(0, 1) = 1.0;
  mf(1, 0) = 1.0;
  mf(1, 1) = 0.0;
  return AefFixture{HermitianMatrix(ma), HermitianMatrix(me), HermitianMatrix(mf), lambda};
}

namespace {

double two_point_error(const HermitianMatrix& m, double value, const Tolerance& tol) {
  const SpectralData s = spectral_decompose(m, tol);
  if (s.count() != 2) return std::numeric_limits<double>::infinity();
  const double lo = -std::abs(value);
  const double hi = std::abs(value);
  return std::max(std::abs(s.distinct_values[0] - lo), std::abs(s.distinct_values[1] - hi));
}

}  // namespace

AefReport check_aef(const AefFixture& fx, const std::vector<double>& grid, double spectrum_tol,
                    const Tolerance& tol) {
  AefReport r;
  const double a = fx.e.matrix()(1, 1).real();
  r.spectrum_error = std::max({two_point_error(fx.a, fx.lambda, tol), two_point_error(fx.e, a, tol),
                               two_point_error(fx.f, 1.0, tol)});
  r.spectra_ok = r.spectrum_error <= spectrum_tol;
  for (double alpha : grid) {
    for (double eps : grid) {
      ++r.grid_points;
      const bool equal = alpha == eps;
      const HermitianMatrix ae = alpha * fx.a - eps * fx.e;
      const HermitianMatrix af = alpha * fx.a - eps * fx.f;
      if (rel_c(ae, fx.f, tol) != equal) ++r.commute_mismatches;
      if (rel_c(af, fx.e, tol) != equal) ++r.commute_mismatches;
      if (rel_j(ae, fx.f, tol)) ++r.jordan_zero_hits;
      if (rel_j(af, fx.e, tol)) ++r.jordan_zero_hits;
    }
  }
  return r;
}

}  // namespace commutant_lab
