#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "commutant_lab/hermitian.hpp"
#include "commutant_lab/subspace.hpp"

namespace commutant_lab {

enum class Bracket { commutator, anticommutator };

/// {X Hermitian : G X - s X G = 0 for every generator G}, s = +1 for the
/// commutator and -1 for the anticommutator. Computed as the kernel of the
/// realified linear map via SVD; singular values <= rank_cut * sigma_max
/// count as zero.
MatrixSubspace kernel_of_brackets(int dim, const std::vector<HermitianMatrix>& generators,
                                  Bracket bracket, const Tolerance& tol = {});

/// A^c.
MatrixSubspace commutant(const HermitianMatrix& a, const Tolerance& tol = {});
/// Solutions of A o X = 0.
MatrixSubspace anticommutant(const HermitianMatrix& a, const Tolerance& tol = {});
/// A^# as (A^c, anticommutant).
QuasiCommutant quasi_commutant(const HermitianMatrix& a, const Tolerance& tol = {});
/// A^cc: commutant of the basis of A^c.
MatrixSubspace bicommutant(const HermitianMatrix& a, const Tolerance& tol = {});
/// Span of the spectral projections of A. In finite dimensions this equals
/// A^cc; kept separate as an independent route for cross-checks.
MatrixSubspace spectral_bicommutant(const HermitianMatrix& a, const Tolerance& tol = {});

/// A^# = A^c, decided as anticommutant(A) <= commutant(A).
bool quasi_equals_commutant(const HermitianMatrix& a, const Tolerance& tol = {});

struct BiquasiVerdict {
  bool refuted = false;
  /// M in A^# with NOT rel_q(X, M), when refuted.
  std::optional<HermitianMatrix> witness;
  int candidates_tried = 0;
};

/// Searches A^# for an element that neither commutes nor anticommutes with X.
/// Candidates: basis elements of both parts, `budget` random combinations in
/// each part, and shifts lambda I + M of commutant elements. A refutation
/// proves X is not in A^##; an unrefuted X is not thereby a member.
BiquasiVerdict refute_biquasi_membership(const HermitianMatrix& x, const HermitianMatrix& a,
                                         int budget, std::uint64_t seed,
                                         const Tolerance& tol = {});
BiquasiVerdict refute_biquasi_membership(const HermitianMatrix& x, const QuasiCommutant& quasi,
                                         int budget, std::uint64_t seed,
                                         const Tolerance& tol = {});

/// Nonzero B with A o B = 0 and AB != BA, ||B||_F = 1, built from a
/// (lambda, -lambda) eigenvector pair with lambda != 0. Exists iff
/// A^# != A^c.
std::optional<HermitianMatrix> noncommuting_anticommuting_partner(const HermitianMatrix& a,
                                                                  const Tolerance& tol = {});

struct ScalarWitness {
  HermitianMatrix b;  // B with NOT rel_q(B - A, B)
  HermitianMatrix t;  // operator not commuting with A
  double scale = 0;   // B = scale * T
};

/// For nonscalar A, finds B = tT with T not commuting with A such that B - A
/// neither commutes nor anticommutes with B. Returns nullopt for scalar A.
std::optional<ScalarWitness> scalar_witness(const HermitianMatrix& a, std::uint64_t seed,
                                            const Tolerance& tol = {});

}  // namespace commutant_lab
