#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace commutant_lab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Zero tests and rank decisions used throughout the library.
///
/// The underlying relations are exact equalities; these thresholds decide
/// when a floating-point residual counts as zero.
struct Tolerance {
  /// Relative threshold for "X = 0" tests, scaled by max(1, norm product).
  double rel_zero = 1e-9;
  /// Singular values below rank_cut * sigma_max are treated as zero.
  double rank_cut = 1e-10;
  /// Eigenvalues closer than cluster_gap * max(1, spread) are merged.
  double cluster_gap = 1e-8;

  /// Throws std::invalid_argument when a field is negative or not finite.
  void validate() const;
};

/// A complex self-adjoint matrix.
///
/// Construction validates the Hermitian property and then replaces the
/// stored entries with (H + H*)/2, so equal inputs produce byte-identical
/// storage.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Validates ||H - H*||_F <= rel_tol * max(1, ||H||_F), then symmetrizes.
  explicit HermitianMatrix(const ComplexMatrix& m, double rel_tol = 1e-12);

  /// Symmetrizes without validation. Use only for matrices that are
  /// Hermitian by construction (sums, conjugations, Jordan products).
  static HermitianMatrix symmetrized(const ComplexMatrix& m);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix diagonal(const std::vector<double>& values);
  static HermitianMatrix scalar(int dim, double value);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double frobenius_norm() const { return m_.norm(); }
  double trace() const { return m_.trace().real(); }

  /// Entrywise complex conjugate, equal to the transpose for Hermitian input.
  HermitianMatrix conjugate() const;

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator-() const;
  HermitianMatrix operator*(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& h) { return h * s; }

  /// Byte-exact equality of the stored entries.
  bool operator==(const HermitianMatrix& o) const;

 private:
  ComplexMatrix m_;
};

/// A o B = AB + BA.
HermitianMatrix jordan_product(const HermitianMatrix& a, const HermitianMatrix& b);

/// AB - BA (skew-Hermitian, so returned as a plain complex matrix).
ComplexMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b);

/// True iff ||AB - BA||_F <= rel_zero * max(1, ||A||_F ||B||_F).
bool rel_c(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol = {});

/// True iff ||A o B||_F <= rel_zero * max(1, ||A||_F ||B||_F).
bool rel_j(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol = {});

/// Commute or anticommute.
bool rel_q(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol = {});

enum class RelationKind { commutative, quasi };

/// rel_c(A - B, C) or rel_q(A - B, C) depending on kind.
bool triadic_relation(const HermitianMatrix& a, const HermitianMatrix& b,
                      const HermitianMatrix& c, RelationKind kind,
                      const Tolerance& tol = {});

/// Real multiple of the identity, within rel_zero. The zero matrix is scalar.
bool is_scalar(const HermitianMatrix& a, const Tolerance& tol = {});

/// Least-squares factor lambda = tr((BA)* AB) / ||BA||_F^2 when AB = lambda BA
/// holds within tolerance and BA != 0; nullopt otherwise.
std::optional<Complex> quasi_commutation_factor(const HermitianMatrix& a,
                                                const HermitianMatrix& b,
                                                const Tolerance& tol = {});

/// Frobenius-norm deviation from unitarity, ||U*U - I||_F.
double unitarity_defect(const ComplexMatrix& u);

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace commutant_lab
