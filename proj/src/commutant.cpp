#include "commutant_lab/commutant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "commutant_lab/sampling.hpp"
#include "commutant_lab/spectral.hpp"

namespace commutant_lab {

namespace {

// Real and imaginary parts of every entry, column-major.
void realify_into(const ComplexMatrix& m, Eigen::Ref<Eigen::VectorXd> out) {
  const Eigen::Index n2 = m.size();
  for (Eigen::Index k = 0; k < n2; ++k) {
    out(k) = m.data()[k].real();
    out(n2 + k) = m.data()[k].imag();
  }
}

Eigen::MatrixXd bracket_block(const HermitianMatrix& g, const std::vector<HermitianMatrix>& basis,
                              Bracket bracket) {
  const int n = g.dim();
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  const double sign = bracket == Bracket::commutator ? -1.0 : 1.0;
  Eigen::MatrixXd block(2 * n2, n2);
  for (Eigen::Index k = 0; k < n2; ++k) {
    const ComplexMatrix& e = basis[static_cast<std::size_t>(k)].matrix();
    const ComplexMatrix image = g.matrix() * e + sign * (e * g.matrix());
    realify_into(image, block.col(k));
  }
  return block;
}

// Replaces a tall stack by its R factor; the singular values and right
// singular vectors are unchanged.
Eigen::MatrixXd compress(const Eigen::MatrixXd& stack) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(stack);
  const Eigen::Index cols = stack.cols();
  Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  return r;
}

}  // namespace

MatrixSubspace kernel_of_brackets(int dim, const std::vector<HermitianMatrix>& generators,
                                  Bracket bracket, const Tolerance& tol) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (generators.empty()) return MatrixSubspace::everything(dim);
  const Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;

  std::vector<HermitianMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n2));
  for (int k = 0; k < n2; ++k) basis.push_back(hermitian_basis_element(dim, k));

  Eigen::MatrixXd stack(0, n2);
  double generator_scale = 0.0;
  for (const auto& g : generators) {
    generator_scale = std::max(generator_scale, g.frobenius_norm());
    if (g.dim() != dim) throw std::invalid_argument("generator has wrong dimension");
    const Eigen::MatrixXd block = bracket_block(g, basis, bracket);
    Eigen::MatrixXd grown(stack.rows() + block.rows(), n2);
    grown << stack, block;
    stack = grown.rows() > 3 * n2 ? compress(grown) : std::move(grown);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  // A map that is numerically zero for its scale has no rank at all; the
  // relative cut alone would keep rounding noise.
  const double cut = std::max(tol.rank_cut * (sv.size() > 0 ? sv(0) : 0.0),
                              tol.rel_zero * std::max(1.0, generator_scale));
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  std::vector<HermitianMatrix> kernel;
  for (Eigen::Index k = rank; k < n2; ++k) {
    kernel.push_back(from_hermitian_coordinates(svd.matrixV().col(k), dim));
  }
  return MatrixSubspace(dim, std::move(kernel));
}

MatrixSubspace commutant(const HermitianMatrix& a, const Tolerance& tol) {
  return kernel_of_brackets(a.dim(), {a}, Bracket::commutator, tol);
}

MatrixSubspace anticommutant(const HermitianMatrix& a, const Tolerance& tol) {
  return kernel_of_brackets(a.dim(), {a}, Bracket::anticommutator, tol);
}

QuasiCommutant quasi_commutant(const HermitianMatrix& a, const Tolerance& tol) {
  return QuasiCommutant{commutant(a, tol), anticommutant(a, tol)};
}

MatrixSubspace bicommutant(const HermitianMatrix& a, const Tolerance& tol) {
  return kernel_of_brackets(a.dim(), commutant(a, tol).basis(), Bracket::commutator, tol);
}

MatrixSubspace spectral_bicommutant(const HermitianMatrix& a, const Tolerance& tol) {
  return MatrixSubspace::span(a.dim(), spectral_decompose(a, tol).projections, tol);
}

bool quasi_equals_commutant(const HermitianMatrix& a, const Tolerance& tol) {
  const QuasiCommutant q = quasi_commutant(a, tol);
  return subspace_leq(q.anticommutant_part, q.commutant_part, tol);
}

BiquasiVerdict refute_biquasi_membership(const HermitianMatrix& x, const HermitianMatrix& a,
                                         int budget, std::uint64_t seed, const Tolerance& tol) {
  require_same_dim(x, a);
  return refute_biquasi_membership(x, quasi_commutant(a, tol), budget, seed, tol);
}

BiquasiVerdict refute_biquasi_membership(const HermitianMatrix& x, const QuasiCommutant& quasi,
                                         int budget, std::uint64_t seed, const Tolerance& tol) {
  const int n = x.dim();
  if (quasi.commutant_part.ambient_dim() != n) throw std::invalid_argument("dimension mismatch");
  BiquasiVerdict verdict;
  auto try_candidate = [&](const HermitianMatrix& m) {
    ++verdict.candidates_tried;
    if (!rel_q(x, m, tol)) {
      verdict.refuted = true;
      verdict.witness = m;
      return true;
    }
    return false;
  };
  const HermitianMatrix id = HermitianMatrix::identity(n);
  const double shifts[] = {1.0, -1.0, 2.5};

  for (const auto& m : quasi.commutant_part.basis()) {
    if (try_candidate(m)) return verdict;
  }
  for (const auto& m : quasi.anticommutant_part.basis()) {
    if (try_candidate(m)) return verdict;
  }
  // lambda I + M stays in A^c; if X anticommutes with M it cannot also
  // anticommute with lambda I + M unless X = 0.
  for (const auto& m : quasi.commutant_part.basis()) {
    for (double s : shifts) {
      if (try_candidate(m + s * id)) return verdict;
    }
  }

  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_element = [&](const MatrixSubspace& part) {
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (const auto& b : part.basis()) acc += normal(rng) * b.matrix();
    return HermitianMatrix::symmetrized(acc);
  };
  for (int trial = 0; trial < budget; ++trial) {
    if (quasi.commutant_part.real_dimension() > 0) {
      const HermitianMatrix m = random_element(quasi.commutant_part);
      if (try_candidate(m)) return verdict;
      if (try_candidate(m + normal(rng) * id)) return verdict;
    }
    if (quasi.anticommutant_part.real_dimension() > 0) {
      if (try_candidate(random_element(quasi.anticommutant_part))) return verdict;
    }
  }
  return verdict;
}

std::optional<HermitianMatrix> noncommuting_anticommuting_partner(const HermitianMatrix& a,
                                                                  const Tolerance& tol) {
  const SpectralData s = spectral_decompose(a, tol);
  const auto pairs = opposite_pairs(s, tol);
  if (pairs.empty()) return std::nullopt;
  const auto [i, j] = pairs.front();
  const Eigen::VectorXcd u = s.eigenvectors[static_cast<std::size_t>(i)].col(0);
  const Eigen::VectorXcd v = s.eigenvectors[static_cast<std::size_t>(j)].col(0);
  const ComplexMatrix b = (u * v.adjoint() + v * u.adjoint()) / std::sqrt(2.0);
  return HermitianMatrix::symmetrized(b);
}

std::optional<ScalarWitness> scalar_witness(const HermitianMatrix& a, std::uint64_t seed,
                                            const Tolerance& tol) {
  if (is_scalar(a, tol)) return std::nullopt;
  Rng rng(seed);
  const double scales[] = {1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, 0.25};
  for (int attempt = 0; attempt < 64; ++attempt) {
    const HermitianMatrix t = random_hermitian(a.dim(), rng);
    if (rel_c(a, t, tol)) continue;
    // (tT - A) o tT = 0 pins t to at most one value, so the grid must hit.
    for (double s : scales) {
      const HermitianMatrix b = s * t;
      if (!rel_q(b - a, b, tol)) return ScalarWitness{b, t, s};
    }
  }
  throw std::runtime_error("scalar witness search exhausted for a nonscalar input");
}

}  // namespace commutant_lab
