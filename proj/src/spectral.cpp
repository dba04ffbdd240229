#include "commutant_lab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace commutant_lab {

namespace {

double gap_threshold(const std::vector<double>& sorted, const Tolerance& tol) {
  const double spread = sorted.empty() ? 0.0 : sorted.back() - sorted.front();
  return tol.cluster_gap * std::max(1.0, spread);
}

}  // namespace

SpectralData spectral_decompose(const HermitianMatrix& a, const Tolerance& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const ComplexMatrix& evecs = solver.eigenvectors();
  const int n = a.dim();

  std::vector<double> sorted(evals.data(), evals.data() + n);
  const double threshold = gap_threshold(sorted, tol);

  SpectralData out;
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i < n && sorted[i] - sorted[i - 1] <= threshold) continue;
    const int m = i - start;
    double mean = 0.0;
    for (int k = start; k < i; ++k) mean += sorted[k];
    mean /= m;
    ComplexMatrix vecs = evecs.middleCols(start, m);
    out.distinct_values.push_back(mean);
    out.multiplicities.push_back(m);
    out.projections.push_back(HermitianMatrix::symmetrized(vecs * vecs.adjoint()));
    out.eigenvectors.push_back(std::move(vecs));
    start = i;
  }
  return out;
}

int distinct_count(const HermitianMatrix& a, const Tolerance& tol) {
  return spectral_decompose(a, tol).count();
}

bool has_two_point_spectrum(const HermitianMatrix& a, const Tolerance& tol) {
  return distinct_count(a, tol) == 2;
}

HermitianMatrix apply_function(const SpectralData& spectrum, const std::vector<double>& values) {
  if (values.size() != spectrum.distinct_values.size()) {
    throw std::invalid_argument("function must assign a value to every spectral cluster");
  }
  if (spectrum.projections.empty()) throw std::invalid_argument("empty spectral data");
  const int n = spectrum.projections.front().dim();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < values.size(); ++i) acc += values[i] * spectrum.projections[i].matrix();
  return HermitianMatrix::symmetrized(acc);
}

HermitianMatrix apply_function(const HermitianMatrix& a, const std::vector<double>& values,
                               const Tolerance& tol) {
  return apply_function(spectral_decompose(a, tol), values);
}

HermitianMatrix apply_function(const HermitianMatrix& a, const std::map<double, double>& values,
                               const Tolerance& tol) {
  const SpectralData s = spectral_decompose(a, tol);
  const double match = tol.cluster_gap * std::max(1.0, s.distinct_values.back() - s.distinct_values.front());
  std::vector<double> assigned;
  for (double lambda : s.distinct_values) {
    auto best = values.end();
    for (auto it = values.begin(); it != values.end(); ++it) {
      if (std::abs(it->first - lambda) <= std::max(match, 1e-12 * std::abs(lambda)) &&
          (best == values.end() || std::abs(it->first - lambda) < std::abs(best->first - lambda))) {
        best = it;
      }
    }
    if (best == values.end()) {
      throw std::invalid_argument("function has no value for spectral point " + std::to_string(lambda));
    }
    assigned.push_back(best->second);
  }
  return apply_function(s, assigned);
}

std::vector<std::pair<double, HermitianMatrix>> projection_decomposition(const HermitianMatrix& a,
                                                                         const Tolerance& tol) {
  const SpectralData s = spectral_decompose(a, tol);
  const double cut = tol.rel_zero * std::max(1.0, a.frobenius_norm());
  std::vector<std::pair<double, HermitianMatrix>> terms;
  for (int i = 0; i < s.count(); ++i) {
    if (std::abs(s.distinct_values[i]) <= cut) continue;
    terms.emplace_back(s.distinct_values[i], s.projections[i]);
  }
  return terms;
}

std::vector<std::pair<int, int>> opposite_pairs(const SpectralData& s, const Tolerance& tol) {
  const double threshold = gap_threshold(s.distinct_values, tol);
  const int zero = zero_cluster(s, tol);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < s.count(); ++i) {
    for (int j = i + 1; j < s.count(); ++j) {
      if (i == zero || j == zero) continue;
      if (std::abs(s.distinct_values[i] + s.distinct_values[j]) <= threshold) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

int zero_cluster(const SpectralData& s, const Tolerance& tol) {
  const double threshold = gap_threshold(s.distinct_values, tol);
  for (int i = 0; i < s.count(); ++i) {
    if (std::abs(s.distinct_values[i]) <= threshold) return i;
  }
  return -1;
}

bool spectrum_avoids_opposite_pairs(const HermitianMatrix& a, const Tolerance& tol) {
  return opposite_pairs(spectral_decompose(a, tol), tol).empty();
}

int commutant_dimension_formula(const SpectralData& s) {
  int total = 0;
  for (int m : s.multiplicities) total += m * m;
  return total;
}

int anticommutant_dimension_formula(const SpectralData& s, const Tolerance& tol) {
  int total = 0;
  for (auto [i, j] : opposite_pairs(s, tol)) total += 2 * s.multiplicities[i] * s.multiplicities[j];
  const int zero = zero_cluster(s, tol);
  if (zero >= 0) total += s.multiplicities[zero] * s.multiplicities[zero];
  return total;
}

}  // namespace commutant_lab
