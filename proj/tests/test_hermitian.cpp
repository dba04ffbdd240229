#include <cmath>

#include "commutant_lab/hermitian.hpp"
#include "commutant_lab/sampling.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace commutant_lab;

namespace {

HermitianMatrix swap2() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return HermitianMatrix(m);
}

}  // namespace

TEST_CASE("construction rejects non-Hermitian and malformed input") {
  ComplexMatrix bad(2, 2);
  bad << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(HermitianMatrix{bad}, std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix{ComplexMatrix(2, 3)}, std::invalid_argument);
  ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(HermitianMatrix{nan}, std::invalid_argument);
}

TEST_CASE("construction symmetrizes small defects") {
  ComplexMatrix m(2, 2);
  m << 1.0, Complex(2.0, 1e-14), Complex(2.0, 0.0), 3.0;
  const HermitianMatrix h(m);
  CHECK(h.matrix() == h.matrix().adjoint());
}

TEST_CASE("jordan_product examples") {
  const HermitianMatrix d = HermitianMatrix::diagonal({1.0, -1.0});
  CHECK(jordan_product(d, swap2()).frobenius_norm() == 0.0);
  Rng rng(3);
  const HermitianMatrix b = random_hermitian(3, rng);
  CHECK((jordan_product(HermitianMatrix::identity(3), b) - 2.0 * b).frobenius_norm() < 1e-14);
  CHECK(jordan_product(b, HermitianMatrix::zero(3)).frobenius_norm() == 0.0);
}

TEST_CASE("relation examples") {
  const HermitianMatrix d12 = HermitianMatrix::diagonal({1.0, 2.0});
  const HermitianMatrix dpm = HermitianMatrix::diagonal({1.0, -1.0});
  Rng rng(5);
  const HermitianMatrix a = random_hermitian(4, rng);
  CHECK(rel_c(a, a));
  CHECK_FALSE(rel_c(d12, swap2()));
  CHECK_FALSE(rel_c(dpm, swap2()));
  CHECK(rel_j(a, HermitianMatrix::zero(4)));
  CHECK(rel_j(dpm, swap2()));
  CHECK_FALSE(rel_j(HermitianMatrix::identity(2), HermitianMatrix::identity(2)));
  CHECK(rel_q(dpm, swap2()));
  CHECK(rel_q(d12, HermitianMatrix::diagonal({3.0, 4.0})));
  CHECK_FALSE(rel_q(d12, swap2()));
  CHECK_THROWS_AS(rel_c(a, d12), std::invalid_argument);
}

TEST_CASE("triadic_relation examples") {
  Rng rng(7);
  const HermitianMatrix a = random_hermitian(3, rng);
  const HermitianMatrix c = random_hermitian(3, rng);
  CHECK(triadic_relation(a, a, c, RelationKind::commutative));
  const HermitianMatrix d20 = HermitianMatrix::diagonal({2.0, 0.0});
  CHECK(triadic_relation(d20, HermitianMatrix::diagonal({1.0, 1.0}), swap2(), RelationKind::quasi));
  CHECK_FALSE(triadic_relation(d20, HermitianMatrix::diagonal({0.0, 1.0}), swap2(), RelationKind::commutative));
}

TEST_CASE("scalar classification includes zero") {
  CHECK(is_scalar(HermitianMatrix::zero(3)));
  CHECK(is_scalar(HermitianMatrix::scalar(3, -2.5)));
  CHECK_FALSE(is_scalar(HermitianMatrix::diagonal({1.0, 1.0, 1.0 + 1e-6})));
}

TEST_CASE("tolerance validation") {
  Tolerance t;
  CHECK_NOTHROW(t.validate());
  t.rel_zero = -1.0;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t.rel_zero = std::nan("");
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("sample contracts") {
  const ComplexMatrix full = sample(ProjectionKind{4}, 4, 9);
  CHECK((full - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
  const ComplexMatrix p = sample(ProjectionKind{1}, 3, 9);
  CHECK((p * p - p).norm() < 1e-12);
  CHECK((p - p.adjoint()).norm() < 1e-12);
  CHECK(std::abs(p.trace() - 1.0) < 1e-12);
  const ComplexMatrix u = sample(UnitaryKind{}, 4, 11);
  CHECK(unitarity_defect(u) <= 1e-12);
  CHECK(sample(HermitianKind{}, 5, 42) == sample(HermitianKind{}, 5, 42));
  CHECK_FALSE(sample(HermitianKind{}, 5, 42) == sample(HermitianKind{}, 5, 43));
  const ComplexMatrix s = sample(ScalarKind{}, 3, 1);
  CHECK((s - s(0, 0) * ComplexMatrix::Identity(3, 3)).norm() == 0.0);
  CHECK_THROWS(sample(ProjectionKind{5}, 4, 1));
}

TEST_CASE("property: products against naive multiplication") {
  for (int t = 0; t < 200; ++t) {
    Rng rng(derive_seed(100, t));
    const int n = 3 + t % 6;
    const HermitianMatrix a = random_hermitian(n, rng);
    const HermitianMatrix b = random_hermitian(n, rng);
    const ComplexMatrix ab = oracle::naive_product(a.matrix(), b.matrix());
    const ComplexMatrix ba = oracle::naive_product(b.matrix(), a.matrix());
    const HermitianMatrix j = jordan_product(a, b);
    CHECK(oracle::frobenius(j.matrix() - (ab + ba)) < 1e-12);
    CHECK(oracle::frobenius(j.matrix() - j.matrix().adjoint()) <= 1e-12);
    CHECK(oracle::frobenius(commutator(a, b) - (ab - ba)) < 1e-12);
  }
}

TEST_CASE("property: symmetry, scalar absorption and rel_q implication") {
  std::normal_distribution<double> normal(0.0, 3.0);
  for (int t = 0; t < 300; ++t) {
    Rng rng(derive_seed(200, t));
    const int n = 3 + t % 4;
    HermitianMatrix a = random_hermitian(n, rng);
    HermitianMatrix b;
    switch (t % 3) {
      case 0:
        b = random_hermitian(n, rng);
        break;
      case 1:
        b = HermitianMatrix::symmetrized(a.matrix() * a.matrix()) + 2.0 * a;  // commutes
        break;
      default:
        a = HermitianMatrix::diagonal(opposite_pair_spectrum(n, rng));
        b = HermitianMatrix::zero(n);
        {
          ComplexMatrix m = ComplexMatrix::Zero(n, n);
          // opposite_pair_spectrum places a +-pair; pick any slot pair summing to 0.
          for (int i = 0; i < n; ++i) {
            for (int k = i + 1; k < n; ++k) {
              if (a(i, i).real() + a(k, k).real() == 0.0 && a(i, i).real() != 0.0) {
                m(i, k) = 1.0;
                m(k, i) = 1.0;
              }
            }
          }
          b = HermitianMatrix(m);
        }
        break;
    }
    CHECK(rel_c(a, b) == rel_c(b, a));
    CHECK(rel_j(a, b) == rel_j(b, a));
    const double shift = normal(rng);
    CHECK(rel_c(a + HermitianMatrix::scalar(n, shift), b) == rel_c(a, b));
    if (rel_c(a, b) || rel_j(a, b)) CHECK(rel_q(a, b));
  }
}

TEST_CASE("quasi_commutation_factor on constructed pairs") {
  const auto lambda = quasi_commutation_factor(HermitianMatrix::diagonal({1.0, -1.0}), swap2());
  REQUIRE(lambda.has_value());
  CHECK(std::abs(*lambda + 1.0) < 1e-12);
  const HermitianMatrix d = HermitianMatrix::diagonal({1.0, 2.0, 3.0});
  const auto one = quasi_commutation_factor(d, HermitianMatrix::diagonal({4.0, 5.0, 6.0}));
  REQUIRE(one.has_value());
  CHECK(std::abs(*one - 1.0) < 1e-12);
  CHECK_FALSE(quasi_commutation_factor(d, HermitianMatrix::zero(3)).has_value());
}
