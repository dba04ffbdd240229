#pragma once

#include <cstdint>
#include <random>
#include <variant>

#include "commutant_lab/hermitian.hpp"
#include "commutant_lab/subspace.hpp"

namespace commutant_lab {

using Rng = std::mt19937_64;

/// Mixes a suite seed with a trial index (splitmix64 finalizer), so trials
/// can run in any order and still reproduce.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Entries with i.i.d. standard normal real and imaginary parts, symmetrized.
HermitianMatrix random_hermitian(int dim, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// diagonal of R made real positive.
ComplexMatrix random_unitary(int dim, Rng& rng);

/// Orthogonal projection onto the span of the first `rank` columns of a
/// Haar unitary.
HermitianMatrix random_projection(int dim, int rank, Rng& rng);

/// U diag(values) U* for a Haar unitary U.
HermitianMatrix random_with_spectrum(const std::vector<double>& values, Rng& rng);

/// Gaussian real coefficients on the subspace basis.
HermitianMatrix random_element(const MatrixSubspace& s, Rng& rng);

/// Small-integer spectrum in [-3, 3] with at least one repeated value.
std::vector<double> degenerate_spectrum(int dim, Rng& rng);

/// Spectrum in [-3, 3] containing a (lambda, -lambda) pair, lambda != 0.
std::vector<double> opposite_pair_spectrum(int dim, Rng& rng);

/// Exactly `distinct` different integer values from [-6, 6], each used at
/// least once, in random order. With avoid_opposite_pairs no nonzero value
/// appears together with its negative.
std::vector<double> controlled_spectrum(int dim, int distinct, bool avoid_opposite_pairs, Rng& rng);

struct HermitianKind {};
struct ProjectionKind {
  int rank = 1;
};
struct UnitaryKind {};
struct ScalarKind {};
using SampleKind = std::variant<HermitianKind, ProjectionKind, UnitaryKind, ScalarKind>;

/// Deterministic per (kind, dim, seed). Hermitian kinds are returned through
/// their underlying matrix so one signature covers unitaries too.
ComplexMatrix sample(const SampleKind& kind, int dim, std::uint64_t seed);

}  // namespace commutant_lab
