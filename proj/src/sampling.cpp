#include "commutant_lab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace commutant_lab {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

ComplexMatrix gaussian_matrix(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

void require_positive_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

}  // namespace

HermitianMatrix random_hermitian(int dim, Rng& rng) {
  require_positive_dim(dim);
  return HermitianMatrix::symmetrized(gaussian_matrix(dim, rng));
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  require_positive_dim(dim);
  const ComplexMatrix g = gaussian_matrix(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  // Fix the phase ambiguity of QR so the law is left-invariant.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

HermitianMatrix random_projection(int dim, int rank, Rng& rng) {
  require_positive_dim(dim);
  if (rank < 1 || rank > dim) throw std::invalid_argument("projection rank must lie in [1, dim]");
  const ComplexMatrix u = random_unitary(dim, rng);
  const ComplexMatrix frame = u.leftCols(rank);
  return HermitianMatrix::symmetrized(frame * frame.adjoint());
}

HermitianMatrix random_with_spectrum(const std::vector<double>& values, Rng& rng) {
  const int dim = static_cast<int>(values.size());
  require_positive_dim(dim);
  const ComplexMatrix u = random_unitary(dim, rng);
  Eigen::VectorXcd d(dim);
  for (int i = 0; i < dim; ++i) d(i) = values[static_cast<std::size_t>(i)];
  return HermitianMatrix::symmetrized(u * d.asDiagonal() * u.adjoint());
}

HermitianMatrix random_element(const MatrixSubspace& s, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = s.ambient_dim();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (const auto& b : s.basis()) acc += normal(rng) * b.matrix();
  return HermitianMatrix::symmetrized(acc);
}

std::vector<double> degenerate_spectrum(int dim, Rng& rng) {
  require_positive_dim(dim);
  std::uniform_int_distribution<int> pick(-3, 3);
  std::vector<double> values(static_cast<std::size_t>(dim));
  for (auto& v : values) v = pick(rng);
  values[0] = values.back();
  return values;
}

std::vector<double> opposite_pair_spectrum(int dim, Rng& rng) {
  if (dim < 2) throw std::invalid_argument("an opposite pair needs dim >= 2");
  std::uniform_int_distribution<int> pick(1, 3);
  std::uniform_int_distribution<int> other(-3, 3);
  std::vector<double> values(static_cast<std::size_t>(dim));
  const double lambda = pick(rng);
  values[0] = lambda;
  values[1] = -lambda;
  for (int i = 2; i < dim; ++i) values[static_cast<std::size_t>(i)] = other(rng);
  return values;
}

std::vector<double> controlled_spectrum(int dim, int distinct, bool avoid_opposite_pairs, Rng& rng) {
  if (distinct < 1 || distinct > dim) throw std::invalid_argument("need 1 <= distinct <= dim");
  if (avoid_opposite_pairs && distinct > 7) {
    throw std::invalid_argument("at most 7 values in [-6, 6] avoid opposite pairs");
  }
  std::vector<int> pool;
  for (int v = -6; v <= 6; ++v) pool.push_back(v);
  std::vector<int> chosen;
  while (static_cast<int>(chosen.size()) < distinct) {
    std::shuffle(pool.begin(), pool.end(), rng);
    chosen.assign(pool.begin(), pool.begin() + distinct);
    if (!avoid_opposite_pairs) break;
    const bool clash = std::any_of(chosen.begin(), chosen.end(), [&](int v) {
      return v != 0 && std::find(chosen.begin(), chosen.end(), -v) != chosen.end();
    });
    if (clash) chosen.clear();
  }
  std::vector<double> values(chosen.begin(), chosen.end());
  std::uniform_int_distribution<int> pick(0, distinct - 1);
  while (static_cast<int>(values.size()) < dim) values.push_back(chosen[static_cast<std::size_t>(pick(rng))]);
  std::shuffle(values.begin(), values.end(), rng);
  return values;
}

ComplexMatrix sample(const SampleKind& kind, int dim, std::uint64_t seed) {
  Rng rng(seed);
  if (std::holds_alternative<HermitianKind>(kind)) return random_hermitian(dim, rng).matrix();
  if (const auto* p = std::get_if<ProjectionKind>(&kind)) {
    return random_projection(dim, p->rank, rng).matrix();
  }
  if (std::holds_alternative<UnitaryKind>(kind)) return random_unitary(dim, rng);
  require_positive_dim(dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  return HermitianMatrix::scalar(dim, normal(rng)).matrix();
}

}  // namespace commutant_lab
