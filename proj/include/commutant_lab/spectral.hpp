#pragma once

#include <map>
#include <utility>
#include <vector>

#include "commutant_lab/hermitian.hpp"

namespace commutant_lab {

/// Clustered eigen-decomposition of a Hermitian matrix.
struct SpectralData {
  /// Sorted ascending cluster representatives (multiplicity-weighted means).
  std::vector<double> distinct_values;
  std::vector<int> multiplicities;
  /// Orthogonal projection onto each cluster's eigenspace.
  std::vector<HermitianMatrix> projections;
  /// Orthonormal eigenvectors spanning each cluster (dim x multiplicity).
  std::vector<ComplexMatrix> eigenvectors;

  int count() const { return static_cast<int>(distinct_values.size()); }
};

/// Eigenvalues are grouped greedily left to right: a new cluster starts when
/// the gap to the previous eigenvalue exceeds cluster_gap * max(1, spread).
SpectralData spectral_decompose(const HermitianMatrix& a, const Tolerance& tol = {});

int distinct_count(const HermitianMatrix& a, const Tolerance& tol = {});
bool has_two_point_spectrum(const HermitianMatrix& a, const Tolerance& tol = {});

/// sum_i f(lambda_i) P_i. `values[i]` is the value on the i-th cluster of
/// spectral_decompose(a); throws if the size does not match.
HermitianMatrix apply_function(const SpectralData& spectrum, const std::vector<double>& values);
HermitianMatrix apply_function(const HermitianMatrix& a, const std::vector<double>& values,
                               const Tolerance& tol = {});
/// Keyed by cluster representative; every cluster needs an entry (matched
/// within the clustering gap).
HermitianMatrix apply_function(const HermitianMatrix& a, const std::map<double, double>& values,
                               const Tolerance& tol = {});

/// Spectral terms (value, projection) with zero coefficients dropped.
std::vector<std::pair<double, HermitianMatrix>> projection_decomposition(
    const HermitianMatrix& a, const Tolerance& tol = {});

/// Cluster index pairs (i, j), i < j, whose values sum to zero, i.e.
/// lambda_i = -lambda_j != 0.
std::vector<std::pair<int, int>> opposite_pairs(const SpectralData& spectrum,
                                                const Tolerance& tol = {});
/// Index of the cluster at 0, or -1.
int zero_cluster(const SpectralData& spectrum, const Tolerance& tol = {});

/// Spectral test for A^# = A^c: sigma(A) and -sigma(A) meet only in {0}.
bool spectrum_avoids_opposite_pairs(const HermitianMatrix& a, const Tolerance& tol = {});

/// Real dimension of A^c from multiplicities: sum m_i^2.
int commutant_dimension_formula(const SpectralData& spectrum);
/// Real dimension of the anticommutant: sum over opposite pairs of 2 m_i m_j
/// plus m_0^2 for the zero cluster.
int anticommutant_dimension_formula(const SpectralData& spectrum, const Tolerance& tol = {});

}  // namespace commutant_lab
