#include <cmath>

#include "commutant_lab/commutant.hpp"
#include "commutant_lab/sampling.hpp"
#include "commutant_lab/spectral.hpp"
#include "commutant_lab/structure.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace commutant_lab;

namespace {

HermitianMatrix diag(std::vector<double> v) { return HermitianMatrix::diagonal(v); }

HermitianMatrix e(int n, int i) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  v[static_cast<std::size_t>(i)] = 1.0;
  return diag(v);
}

}  // namespace

TEST_CASE("spectral_decompose examples") {
  const SpectralData id = spectral_decompose(HermitianMatrix::identity(4));
  REQUIRE(id.count() == 1);
  CHECK(id.distinct_values[0] == doctest::Approx(1.0));
  CHECK(id.multiplicities[0] == 4);
  CHECK((id.projections[0] - HermitianMatrix::identity(4)).frobenius_norm() < 1e-12);

  const SpectralData d = spectral_decompose(diag({1, 1, 2}));
  REQUIRE(d.count() == 2);
  CHECK(d.distinct_values[0] == doctest::Approx(1.0));
  CHECK(d.distinct_values[1] == doctest::Approx(2.0));
  CHECK(d.multiplicities == std::vector<int>{2, 1});

  const AefFixture fx = build_aef(1.0, 3);
  const SpectralData s = spectral_decompose(fx.a);
  REQUIRE(s.count() == 2);
  CHECK(std::abs(s.distinct_values[0] + std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(s.distinct_values[1] - std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("distinct_count examples") {
  CHECK(distinct_count(HermitianMatrix::scalar(3, 4.0)) == 1);
  Rng rng(2);
  CHECK(distinct_count(random_projection(5, 2, rng)) == 2);
  CHECK(distinct_count(diag({1, 2, 3})) == 3);
  CHECK(has_two_point_spectrum(diag({1, 1, 2})));
  CHECK_FALSE(has_two_point_spectrum(diag({1, 2, 3})));
}

TEST_CASE("lemma18_minimality examples") {
  CHECK(lemma18_minimality(diag({1, 1, 2})).holds);
  const MinimalityVerdict v = lemma18_minimality(diag({1, 2, 3}));
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK((*v.witness - diag({1, 1, 0})).frobenius_norm() < 1e-10);
  Rng rng(4);
  CHECK(lemma18_minimality(random_projection(4, 2, rng)).holds);
  CHECK_THROWS_AS(lemma18_minimality(HermitianMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("in_K examples") {
  CHECK(in_K(HermitianMatrix::identity(3) - 2.0 * e(3, 0)));
  CHECK(in_K(diag({3, -3, 3})));
  Rng rng(6);
  CHECK_FALSE(in_K(random_projection(4, 2, rng)));
  CHECK_FALSE(in_K(diag({1, -1, 2})));
}

TEST_CASE("lemma181_condition examples") {
  Rng rng(8);
  CHECK(lemma181_condition(random_projection(4, 1, rng)));
  CHECK(lemma181_condition(diag({1, 1, 2})));
  CHECK_FALSE(lemma181_condition(diag({1, 2, 3})));
  CHECK_THROWS_AS(lemma181_condition(diag({1, -1, 2})), std::invalid_argument);
}

TEST_CASE("is_primitive examples") {
  CHECK(is_primitive(diag({5, 2, 2})));
  CHECK_FALSE(is_primitive(diag({5, 5, 2, 2})));
  Rng rng(10);
  CHECK(is_primitive(random_projection(3, 1, rng)));
  CHECK_FALSE(is_primitive(diag({1, 2, 3})));
}

TEST_CASE("property: is_primitive is affine invariant") {
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    Rng rng(derive_seed(600, t));
    const int n = 3 + t % 4;
    const HermitianMatrix a = t % 2 ? random_with_spectrum(degenerate_spectrum(n, rng), rng)
                                    : 2.0 * random_projection(n, 1, rng);
    double c = normal(rng);
    if (std::abs(c) < 0.1) c = 1.0;
    CHECK(is_primitive(a) == is_primitive(c * a + HermitianMatrix::scalar(n, normal(rng))));
  }
}

TEST_CASE("primitive witnesses at dim 4") {
  const HermitianMatrix p = diag({1, 1, 0, 0});
  const PrimitiveWitnesses w = lemma_primitive_witnesses(p, 1.0, 0.0);
  const SpectralData sb = spectral_decompose(w.b);
  REQUIRE(sb.count() == 2);
  CHECK(sb.distinct_values[0] == doctest::Approx(-4.0));
  CHECK(sb.distinct_values[1] == doctest::Approx(-2.0));
  CHECK(distinct_count(w.a - w.b) == 4);
  const PrimitiveChainReport r = check_primitive_chain(w);
  CHECK(r.dim_a_cc == 2);
  CHECK(r.dim_c_cc == 3);
  CHECK(r.dim_a_minus_b_cc == 4);
  CHECK(r.quasi_chain_holds());
  CHECK(projection_rank(w.q1) == 1);
  CHECK((w.q1.matrix() * p.matrix() - w.q1.matrix()).norm() < 1e-12);
  CHECK((w.q2.matrix() * p.matrix()).norm() < 1e-12);
}

TEST_CASE("primitive witnesses preconditions") {
  CHECK_THROWS_AS(lemma_primitive_witnesses(diag({1, 0, 0, 0}), 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lemma_primitive_witnesses(diag({1, 1, 1, 0}), 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lemma_primitive_witnesses(diag({1, 1, 0}), 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lemma_primitive_witnesses(diag({1, 1, 0, 0}), 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lemma_primitive_witnesses(diag({1, 2, 0, 0}), 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("primitive witnesses at dims 5 and 6") {
  for (int n : {5, 6}) {
    for (int rank = 2; rank <= n - 2; ++rank) {
      Rng rng(derive_seed(700, n * 10 + rank));
      const PrimitiveChainReport r =
          check_primitive_chain(lemma_primitive_witnesses(random_projection(n, rank, rng), -0.5, 3.0));
      CHECK(r.chain_holds());
      CHECK(r.quasi_chain_holds());
    }
  }
}

TEST_CASE("apply_function examples") {
  Rng rng(12);
  const HermitianMatrix a = random_hermitian(4, rng);
  const SpectralData s = spectral_decompose(a);
  CHECK((apply_function(s, s.distinct_values) - a).frobenius_norm() < 1e-8);
  std::vector<double> constant(static_cast<std::size_t>(s.count()), 2.5);
  CHECK((apply_function(s, constant) - HermitianMatrix::scalar(4, 2.5)).frobenius_norm() < 1e-10);
  const HermitianMatrix p = apply_function(diag({1, 2, 3}), std::map<double, double>{{1, 0}, {2, 0}, {3, 1}});
  CHECK((p - e(3, 2)).frobenius_norm() < 1e-12);
  CHECK_THROWS_AS(apply_function(s, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("projection_decomposition examples") {
  const HermitianMatrix p = diag({1, 0, 1});
  const auto dp = projection_decomposition(p);
  REQUIRE(dp.size() == 1);
  CHECK(dp[0].first == doctest::Approx(1.0));
  CHECK((dp[0].second - p).frobenius_norm() < 1e-12);
  CHECK(projection_decomposition(diag({1, 2, 3})).size() == 3);
  const auto ds = projection_decomposition(HermitianMatrix::scalar(3, -2.0));
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].first == doctest::Approx(-2.0));
  CHECK((ds[0].second - HermitianMatrix::identity(3)).frobenius_norm() < 1e-12);
}

TEST_CASE("aef fixtures match their closed forms") {
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (int n : {3, 4, 7}) {
      const AefFixture fx = build_aef(a, n);
      const AefReport r = check_aef(fx, {-2.0, -0.5, 0.5, 1.0, 2.0}, 1e-10);
      CHECK(r.passed());
      CHECK(r.grid_points == 25);
      CHECK(fx.lambda == doctest::Approx(std::sqrt(1 + a * a)));
      // A = E + F on the leading 2x2 block.
      const ComplexMatrix block = fx.a.matrix().topLeftCorner(2, 2) -
                                  fx.e.matrix().topLeftCorner(2, 2) - fx.f.matrix().topLeftCorner(2, 2);
      CHECK(block.norm() < 1e-14);
    }
  }
  CHECK_THROWS_AS(build_aef(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_aef(1.0, 2), std::invalid_argument);
}

TEST_CASE("property: SpectralData invariants") {
  for (int t = 0; t < 500; ++t) {
    Rng rng(derive_seed(800, t));
    const int n = 3 + t % 14;
    const HermitianMatrix a = t % 3 == 0 ? random_with_spectrum(degenerate_spectrum(n, rng), rng)
                                         : random_hermitian(n, rng);
    const SpectralData s = spectral_decompose(a);
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    ComplexMatrix recon = ComplexMatrix::Zero(n, n);
    int mult = 0;
    for (int i = 0; i < s.count(); ++i) {
      const ComplexMatrix& p = s.projections[static_cast<std::size_t>(i)].matrix();
      CHECK((p * p - p).norm() <= 1e-10);
      for (int j = i + 1; j < s.count(); ++j) {
        CHECK((p * s.projections[static_cast<std::size_t>(j)].matrix()).norm() <= 1e-10);
      }
      if (i > 0) {
        const double spread = s.distinct_values.back() - s.distinct_values.front();
        CHECK(s.distinct_values[i] - s.distinct_values[i - 1] > 1e-8 * std::max(1.0, spread));
      }
      sum += p;
      recon += s.distinct_values[static_cast<std::size_t>(i)] * p;
      mult += s.multiplicities[static_cast<std::size_t>(i)];
    }
    CHECK(mult == n);
    CHECK((sum - ComplexMatrix::Identity(n, n)).norm() <= 1e-10);
    CHECK((recon - a.matrix()).norm() <= 1e-8 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST_CASE("property: minimality predicates against brute-force partitions") {
  for (int k = 1; k <= 6; ++k) CHECK(oracle::minimal_by_brute_force(k) == (k <= 2));
  for (int t = 0; t < 60; ++t) {
    Rng rng(derive_seed(900, t));
    const int n = 3 + t % 4;
    std::uniform_int_distribution<int> pick(2, std::min(5, n));
    const int k = pick(rng);
    const HermitianMatrix a = random_with_spectrum(controlled_spectrum(n, k, true, rng), rng);
    CAPTURE(t);
    const MinimalityVerdict v = lemma18_minimality(a);
    CHECK(v.holds == oracle::minimal_by_brute_force(k));
    CHECK(v.partitions_checked <= oracle::bell(k));
    // Without opposite pairs the sum of two points is never zero.
    CHECK(lemma181_condition(a) == (k == 2));
    CHECK(lemma181_partition_oracle(a).holds == (k == 2));
  }
}

TEST_CASE("controlled spectra") {
  Rng rng(13);
  for (int k = 1; k <= 5; ++k) {
    const auto v = controlled_spectrum(6, k, true, rng);
    CHECK(oracle::bicommutant_dim(v) == k);
    CHECK(oracle::anticommutant_dim(v) == (std::count(v.begin(), v.end(), 0.0) *
                                           std::count(v.begin(), v.end(), 0.0)));
  }
  CHECK_THROWS_AS(controlled_spectrum(3, 4, false, rng), std::invalid_argument);
  CHECK_THROWS_AS(controlled_spectrum(9, 8, true, rng), std::invalid_argument);
}
