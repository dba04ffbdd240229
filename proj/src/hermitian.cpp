#include "commutant_lab/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace commutant_lab {

namespace {

double zero_threshold(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol) {
  return tol.rel_zero * std::max(1.0, a.frobenius_norm() * b.frobenius_norm());
}

}  // namespace

void Tolerance::validate() const {
  for (double v : {rel_zero, rank_cut, cluster_gap}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("tolerance fields must be finite and nonnegative");
    }
  }
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("Hermitian matrix must be square with dim >= 1");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("Hermitian matrix has non-finite entries");
  }
  const double defect = (m - m.adjoint()).norm();
  if (defect > rel_tol * std::max(1.0, m.norm())) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: ||H - H*||_F = " << defect;
    throw std::invalid_argument(msg.str());
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("Hermitian matrix must be square with dim >= 1");
  }
  HermitianMatrix h;
  h.m_ = (m + m.adjoint()) * 0.5;
  return h;
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return symmetrized(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return symmetrized(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return symmetrized(m);
}

HermitianMatrix HermitianMatrix::scalar(int dim, double value) {
  return symmetrized(ComplexMatrix::Identity(dim, dim) * value);
}

HermitianMatrix HermitianMatrix::conjugate() const { return symmetrized(m_.conjugate()); }

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require_same_dim(*this, o);
  return symmetrized(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require_same_dim(*this, o);
  return symmetrized(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator-() const { return symmetrized(-m_); }

HermitianMatrix HermitianMatrix::operator*(double s) const { return symmetrized(m_ * s); }

bool HermitianMatrix::operator==(const HermitianMatrix& o) const {
  return m_.rows() == o.m_.rows() && m_.cols() == o.m_.cols() && m_ == o.m_;
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw std::invalid_argument(msg.str());
  }
}

HermitianMatrix jordan_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b);
  const ComplexMatrix ab = a.matrix() * b.matrix();
  return HermitianMatrix::symmetrized(ab + ab.adjoint());
}

ComplexMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b);
  const ComplexMatrix ab = a.matrix() * b.matrix();
  // (AB)* = BA for Hermitian A, B.
  return ab - ab.adjoint();
}

bool rel_c(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol) {
  return commutator(a, b).norm() <= zero_threshold(a, b, tol);
}

bool rel_j(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol) {
  return jordan_product(a, b).frobenius_norm() <= zero_threshold(a, b, tol);
}

bool rel_q(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol) {
  return rel_c(a, b, tol) || rel_j(a, b, tol);
}

bool triadic_relation(const HermitianMatrix& a, const HermitianMatrix& b,
                      const HermitianMatrix& c, RelationKind kind, const Tolerance& tol) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  const HermitianMatrix diff = a - b;
  return kind == RelationKind::commutative ? rel_c(diff, c, tol) : rel_q(diff, c, tol);
}

bool is_scalar(const HermitianMatrix& a, const Tolerance& tol) {
  const double mean = a.trace() / a.dim();
  const double off = (a.matrix() - ComplexMatrix::Identity(a.dim(), a.dim()) * mean).norm();
  return off <= tol.rel_zero * std::max(1.0, a.frobenius_norm());
}

std::optional<Complex> quasi_commutation_factor(const HermitianMatrix& a,
                                                const HermitianMatrix& b,
                                                const Tolerance& tol) {
  require_same_dim(a, b);
  const ComplexMatrix ab = a.matrix() * b.matrix();
  const ComplexMatrix ba = b.matrix() * a.matrix();
  const double threshold = zero_threshold(a, b, tol);
  const double ba_norm = ba.norm();
  if (ba_norm <= threshold) return std::nullopt;
  // tr(X* Y) is the Frobenius inner product <X, Y>.
  const Complex lambda = (ba.adjoint() * ab).trace() / (ba_norm * ba_norm);
  if ((ab - lambda * ba).norm() > threshold) return std::nullopt;
  return lambda;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

}  // namespace commutant_lab
