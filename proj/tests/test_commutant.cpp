#include <cmath>

#include "commutant_lab/commutant.hpp"
#include "commutant_lab/sampling.hpp"
#include "commutant_lab/spectral.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace commutant_lab;

namespace {

HermitianMatrix diag(std::vector<double> v) { return HermitianMatrix::diagonal(v); }

}  // namespace

TEST_CASE("hermitian coordinates round-trip and are isometric") {
  for (int t = 0; t < 50; ++t) {
    Rng rng(derive_seed(300, t));
    const int n = 2 + t % 5;
    const HermitianMatrix x = random_hermitian(n, rng);
    const HermitianMatrix y = random_hermitian(n, rng);
    CHECK((from_hermitian_coordinates(hermitian_coordinates(x), n) - x).frobenius_norm() < 1e-12);
    const double pairing = (x.matrix().adjoint() * y.matrix()).trace().real();
    CHECK(std::abs(hermitian_coordinates(x).dot(hermitian_coordinates(y)) - pairing) < 1e-10);
    CHECK(std::abs(real_pairing(x, y) - pairing) < 1e-10);
  }
}

TEST_CASE("commutant examples") {
  CHECK(commutant(HermitianMatrix::identity(3)).real_dimension() == 9);
  CHECK(commutant(diag({1, 2, 3})).real_dimension() == 3);
  CHECK(commutant(diag({1, 1, 2})).real_dimension() == 5);
}

TEST_CASE("anticommutant examples") {
  CHECK(anticommutant(diag({1, -1})).real_dimension() == 2);
  CHECK(anticommutant(HermitianMatrix::identity(3)).real_dimension() == 0);
  CHECK(anticommutant(diag({1, -1, 2})).real_dimension() == 2);
}

TEST_CASE("quasi_commutant examples") {
  auto dims = [](const QuasiCommutant& q) {
    return std::pair{q.commutant_part.real_dimension(), q.anticommutant_part.real_dimension()};
  };
  CHECK(dims(quasi_commutant(HermitianMatrix::identity(4))) == std::pair{16, 0});
  CHECK(dims(quasi_commutant(diag({1, 2, 3}))) == std::pair{3, 0});
  CHECK(dims(quasi_commutant(diag({1, -1}))) == std::pair{2, 2});
}

TEST_CASE("bicommutant examples") {
  CHECK(bicommutant(diag({1, 2, 3})).real_dimension() == 3);
  CHECK(bicommutant(diag({1, 1, 2})).real_dimension() == 2);
  CHECK(bicommutant(HermitianMatrix::scalar(4, 2.5)).real_dimension() == 1);
}

TEST_CASE("subspace comparisons") {
  const MatrixSubspace s = commutant(diag({1, 1, 2}));
  CHECK(subspace_leq(s, s));
  CHECK_FALSE(subspace_proper_lt(s, s));
  const MatrixSubspace small = bicommutant(diag({1, 1, 2}));
  const MatrixSubspace big = bicommutant(diag({1, 2, 3}));
  CHECK(subspace_leq(small, big));
  CHECK(subspace_proper_lt(small, big));
  const MatrixSubspace ri = MatrixSubspace::span(2, {HermitianMatrix::identity(2)});
  CHECK_FALSE(subspace_leq(commutant(diag({1, 2})), ri));
  CHECK(subspace_leq(ri, commutant(diag({1, 2}))));
}

TEST_CASE("quasi_equals_commutant examples") {
  CHECK(quasi_equals_commutant(diag({1, 2, 3})));
  CHECK_FALSE(quasi_equals_commutant(diag({1, -1, 2})));
  CHECK(quasi_equals_commutant(diag({0, 0, 2})));
}

TEST_CASE("zero operator: everything commutes and anticommutes") {
  const QuasiCommutant q = quasi_commutant(HermitianMatrix::zero(3));
  CHECK(q.commutant_part.real_dimension() == 9);
  CHECK(q.anticommutant_part.real_dimension() == 9);
  CHECK(quasi_equals_commutant(HermitianMatrix::zero(3)));
}

TEST_CASE("refute_biquasi_membership examples") {
  Rng rng(17);
  const HermitianMatrix a = random_hermitian(3, rng);
  CHECK_FALSE(refute_biquasi_membership(a, a, 20, 1).refuted);
  CHECK_FALSE(refute_biquasi_membership(HermitianMatrix::identity(3), a, 20, 1).refuted);
  const BiquasiVerdict v = refute_biquasi_membership(diag({1, 2, 3}), diag({1, 1, 2}), 20, 1);
  REQUIRE(v.refuted);
  REQUIRE(v.witness.has_value());
  CHECK(rel_c(*v.witness, diag({1, 1, 2})));
  CHECK_FALSE(rel_q(diag({1, 2, 3}), *v.witness));
  CHECK_THROWS_AS(refute_biquasi_membership(a, diag({1, 2}), 5, 1), std::invalid_argument);
}

TEST_CASE("noncommuting_anticommuting_partner examples") {
  const HermitianMatrix a = diag({1, -1, 0});
  const auto b = noncommuting_anticommuting_partner(a);
  REQUIRE(b.has_value());
  CHECK(rel_j(a, *b));
  CHECK_FALSE(rel_c(a, *b));
  CHECK(std::abs(b->frobenius_norm() - 1.0) < 1e-12);
  CHECK_FALSE(noncommuting_anticommuting_partner(diag({1, 2, 3})).has_value());
  CHECK_FALSE(noncommuting_anticommuting_partner(HermitianMatrix::identity(3)).has_value());
}

TEST_CASE("scalar_witness") {
  CHECK_FALSE(scalar_witness(HermitianMatrix::identity(3), 1).has_value());
  CHECK_FALSE(scalar_witness(HermitianMatrix::zero(3), 1).has_value());
  const HermitianMatrix a = diag({1, 2, 3});
  const auto w = scalar_witness(a, 1);
  REQUIRE(w.has_value());
  CHECK_FALSE(rel_q(w->b - a, w->b));
  CHECK((w->b - w->scale * w->t).frobenius_norm() < 1e-12);
}

TEST_CASE("property: kernel solver agrees with multiplicity formulas") {
  for (int t = 0; t < 150; ++t) {
    Rng rng(derive_seed(400, t));
    const int n = 3 + t % 6;
    std::vector<double> values = t % 2 ? degenerate_spectrum(n, rng) : opposite_pair_spectrum(n, rng);
    const HermitianMatrix a = random_with_spectrum(values, rng);
    CAPTURE(t);
    CHECK(commutant(a).real_dimension() == oracle::commutant_dim(values));
    CHECK(bicommutant(a).real_dimension() == oracle::bicommutant_dim(values));
    CHECK(anticommutant(a).real_dimension() == oracle::anticommutant_dim(values));
  }
}

TEST_CASE("property: subspace invariants") {
  for (int t = 0; t < 60; ++t) {
    Rng rng(derive_seed(500, t));
    const int n = 3 + t % 5;
    const HermitianMatrix a = t % 2 ? random_hermitian(n, rng)
                                    : random_with_spectrum(degenerate_spectrum(n, rng), rng);
    const QuasiCommutant q = quasi_commutant(a);
    const MatrixSubspace cc = bicommutant(a);
    for (const MatrixSubspace* s : {&q.commutant_part, &q.anticommutant_part, &cc}) {
      CHECK(s->gram_defect() <= 1e-10);
      CHECK(s->real_dimension() <= n * n);
      for (const auto& b : s->basis()) CHECK((b.matrix() - b.matrix().adjoint()).norm() <= 1e-12);
    }
    CHECK(q.commutant_part.residual(HermitianMatrix::identity(n)) <= 1e-10);
    CHECK(q.commutant_part.residual(a) <= 1e-10 * std::max(1.0, a.frobenius_norm()));
    CHECK(cc.contains(a));
    CHECK(subspace_leq(cc, q.commutant_part));
    CHECK(subspace_eq(cc, spectral_bicommutant(a)));
    for (const auto& b : q.commutant_part.basis()) CHECK(rel_c(a, b));
    for (const auto& b : q.anticommutant_part.basis()) CHECK(rel_j(a, b));
  }
}
