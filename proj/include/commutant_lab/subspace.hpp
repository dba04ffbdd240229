#pragma once

#include <vector>

#include "commutant_lab/hermitian.hpp"

namespace commutant_lab {

/// Coordinates of a Hermitian matrix in the orthonormal basis
///   E_ii,  (E_ij + E_ji)/sqrt2,  i(E_ij - E_ji)/sqrt2   (i < j)
/// of the n^2-dimensional real space of n x n Hermitian matrices under the
/// pairing <X, Y> = Re tr(X* Y).
Eigen::VectorXd hermitian_coordinates(const HermitianMatrix& h);
HermitianMatrix from_hermitian_coordinates(const Eigen::VectorXd& coords, int dim);
HermitianMatrix hermitian_basis_element(int dim, int index);

/// Re tr(X* Y).
double real_pairing(const HermitianMatrix& x, const HermitianMatrix& y);

/// A real-linear subspace of Hermitian matrices with an orthonormal basis.
class MatrixSubspace {
 public:
  MatrixSubspace(int ambient_dim, std::vector<HermitianMatrix> basis);

  static MatrixSubspace everything(int ambient_dim);
  static MatrixSubspace nothing(int ambient_dim);
  /// Orthonormalizes the real span of `spanning` (rank decided by tol.rank_cut).
  static MatrixSubspace span(int ambient_dim, const std::vector<HermitianMatrix>& spanning,
                             const Tolerance& tol = {});

  int ambient_dim() const { return ambient_dim_; }
  int real_dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<HermitianMatrix>& basis() const { return basis_; }

  /// Orthogonal projection onto the subspace.
  HermitianMatrix project(const HermitianMatrix& x) const;
  /// ||X - proj(X)||_F.
  double residual(const HermitianMatrix& x) const;
  /// residual(X) <= rel_zero * max(1, ||X||_F).
  bool contains(const HermitianMatrix& x, const Tolerance& tol = {}) const;

  /// Max deviation of the basis Gram matrix from the identity.
  double gram_defect() const;

 private:
  int ambient_dim_;
  std::vector<HermitianMatrix> basis_;
};

bool subspace_leq(const MatrixSubspace& s, const MatrixSubspace& t, const Tolerance& tol = {});
bool subspace_eq(const MatrixSubspace& s, const MatrixSubspace& t, const Tolerance& tol = {});
bool subspace_proper_lt(const MatrixSubspace& s, const MatrixSubspace& t,
                        const Tolerance& tol = {});

/// A^# as the union of the commutant and the anticommutant. Never flattened
/// into a span: the union is not a vector space.
struct QuasiCommutant {
  MatrixSubspace commutant_part;
  MatrixSubspace anticommutant_part;

  bool contains(const HermitianMatrix& x, const Tolerance& tol = {}) const {
    return commutant_part.contains(x, tol) || anticommutant_part.contains(x, tol);
  }
};

}  // namespace commutant_lab
