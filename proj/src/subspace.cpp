#include "commutant_lab/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace commutant_lab {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_same_ambient(const MatrixSubspace& s, const MatrixSubspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) {
    throw std::invalid_argument("subspaces live in different ambient dimensions");
  }
}

}  // namespace

Eigen::VectorXd hermitian_coordinates(const HermitianMatrix& h) {
  const int n = h.dim();
  Eigen::VectorXd v(n * n);
  int k = 0;
  for (int i = 0; i < n; ++i) v(k++) = h(i, i).real();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // <(E_ij + E_ji)/sqrt2, H> = sqrt2 Re H_ij, <i(E_ij - E_ji)/sqrt2, H> = sqrt2 Im H_ij
      v(k++) = std::sqrt(2.0) * h(i, j).real();
      v(k++) = std::sqrt(2.0) * h(i, j).imag();
    }
  }
  return v;
}

HermitianMatrix from_hermitian_coordinates(const Eigen::VectorXd& coords, int dim) {
  if (coords.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw std::invalid_argument("coordinate vector length must be dim^2");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  int k = 0;
  for (int i = 0; i < dim; ++i) m(i, i) = coords(k++);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double re = coords(k++) * kInvSqrt2;
      const double im = coords(k++) * kInvSqrt2;
      m(i, j) = Complex(re, im);
      m(j, i) = Complex(re, -im);
    }
  }
  return HermitianMatrix::symmetrized(m);
}

HermitianMatrix hermitian_basis_element(int dim, int index) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim) * dim);
  e(index) = 1.0;
  return from_hermitian_coordinates(e, dim);
}

double real_pairing(const HermitianMatrix& x, const HermitianMatrix& y) {
  require_same_dim(x, y);
  return (x.matrix().adjoint() * y.matrix()).trace().real();
}

MatrixSubspace::MatrixSubspace(int ambient_dim, std::vector<HermitianMatrix> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (ambient_dim_ < 1) throw std::invalid_argument("ambient dimension must be >= 1");
  if (static_cast<int>(basis_.size()) > ambient_dim_ * ambient_dim_) {
    throw std::invalid_argument("basis larger than the Hermitian space");
  }
  for (const auto& b : basis_) {
    if (b.dim() != ambient_dim_) throw std::invalid_argument("basis element has wrong dimension");
  }
}

MatrixSubspace MatrixSubspace::everything(int ambient_dim) {
  std::vector<HermitianMatrix> basis;
  for (int k = 0; k < ambient_dim * ambient_dim; ++k) {
    basis.push_back(hermitian_basis_element(ambient_dim, k));
  }
  return MatrixSubspace(ambient_dim, std::move(basis));
}

MatrixSubspace MatrixSubspace::nothing(int ambient_dim) { return MatrixSubspace(ambient_dim, {}); }

MatrixSubspace MatrixSubspace::span(int ambient_dim, const std::vector<HermitianMatrix>& spanning,
                                    const Tolerance& tol) {
  const int n2 = ambient_dim * ambient_dim;
  if (spanning.empty()) return nothing(ambient_dim);
  Eigen::MatrixXd cols(n2, static_cast<Eigen::Index>(spanning.size()));
  for (std::size_t k = 0; k < spanning.size(); ++k) {
    if (spanning[k].dim() != ambient_dim) throw std::invalid_argument("spanning element has wrong dimension");
    cols.col(static_cast<Eigen::Index>(k)) = hermitian_coordinates(spanning[k]);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  std::vector<HermitianMatrix> basis;
  if (sv.size() > 0 && sv(0) > 0.0) {
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) > tol.rank_cut * sv(0)) {
        basis.push_back(from_hermitian_coordinates(svd.matrixU().col(k), ambient_dim));
      }
    }
  }
  return MatrixSubspace(ambient_dim, std::move(basis));
}

HermitianMatrix MatrixSubspace::project(const HermitianMatrix& x) const {
  if (x.dim() != ambient_dim_) throw std::invalid_argument("dimension mismatch in projection");
  ComplexMatrix acc = ComplexMatrix::Zero(ambient_dim_, ambient_dim_);
  for (const auto& b : basis_) acc += real_pairing(b, x) * b.matrix();
  return HermitianMatrix::symmetrized(acc);
}

double MatrixSubspace::residual(const HermitianMatrix& x) const {
  return (x.matrix() - project(x).matrix()).norm();
}

bool MatrixSubspace::contains(const HermitianMatrix& x, const Tolerance& tol) const {
  return residual(x) <= tol.rel_zero * std::max(1.0, x.frobenius_norm());
}

double MatrixSubspace::gram_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(real_pairing(basis_[i], basis_[j]) - target));
    }
  }
  return worst;
}

bool subspace_leq(const MatrixSubspace& s, const MatrixSubspace& t, const Tolerance& tol) {
  require_same_ambient(s, t);
  return std::all_of(s.basis().begin(), s.basis().end(),
                     [&](const HermitianMatrix& b) { return t.residual(b) <= tol.rel_zero; });
}

bool subspace_eq(const MatrixSubspace& s, const MatrixSubspace& t, const Tolerance& tol) {
  return subspace_leq(s, t, tol) && subspace_leq(t, s, tol);
}

bool subspace_proper_lt(const MatrixSubspace& s, const MatrixSubspace& t, const Tolerance& tol) {
  return subspace_leq(s, t, tol) && s.real_dimension() < t.real_dimension();
}

}  // namespace commutant_lab
