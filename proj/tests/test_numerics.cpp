#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ncg/numerics.hpp"
#include "oracles.hpp"

using namespace ncg;

TEST_CASE("eig_hermitian: identity and diagonal") {
  CHECK(eig_hermitian(CMatrix::identity(2)) == std::vector<double>{1.0, 1.0});

  CMatrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  const auto vals = eig_hermitian(d);
  CHECK(vals[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(vals[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("eig_hermitian: random 8x8 against characteristic-polynomial roots") {
  GaussianStream rng(42);
  const CMatrix m = oracle::random_hermitian(rng, 8);
  const auto vals = eig_hermitian(m);

  auto roots = oracle::eigenvalues_via_roots(m);
  std::vector<double> expected;
  for (const auto& r : roots) {
    CHECK(std::abs(r.imag()) < 1e-9);
    expected.push_back(r.real());
  }
  std::sort(expected.begin(), expected.end());
  REQUIRE(expected.size() == vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    CHECK(vals[i] == doctest::Approx(expected[i]).epsilon(0).scale(1).epsilon(1e-9));
}

TEST_CASE("eig_hermitian: reconstruction and errors") {
  GaussianStream rng(7);
  const CMatrix m = oracle::random_hermitian(rng, 12);
  const EigResult eig = eig_hermitian_full(m);

  CMatrix lambda(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) lambda(i, i) = eig.values[i];
  CHECK(max_abs_diff(m, eig.vectors * lambda * eig.vectors.adjoint()) <= 1e-9);
  CHECK(unitarity_residual(eig.vectors) <= 1e-12);

  CHECK_THROWS_AS(eig_hermitian(CMatrix(2, 3)), Error);
  const CMatrix not_herm = oracle::random_matrix(rng, 4);
  CHECK_THROWS_AS(eig_hermitian(not_herm), Error);
  try {
    eig_hermitian(not_herm);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("eig_hermitian: invariance under unitary conjugation") {
  GaussianStream rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const CMatrix m = oracle::random_hermitian(rng, 6);
    const CMatrix q = oracle::random_unitary(rng, 6);
    const auto v1 = eig_hermitian(m);
    const auto v2 = eig_hermitian(q * m * q.adjoint(), Tolerance{1e-9, 1e-8});
    for (std::size_t i = 0; i < v1.size(); ++i)
      CHECK(std::abs(v1[i] - v2[i]) <= 1e-9 * std::max(1.0, std::abs(v1[i])));
  }
}

TEST_CASE("determinant: closed forms and eigenvalue product") {
  CHECK(determinant(CMatrix::identity(5)) == Complex(1.0, 0.0));

  CMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(determinant(d) == Complex(6.0, 0.0));

  GaussianStream rng(13);
  const CMatrix m = oracle::random_matrix(rng, 6);
  Complex prod = 1.0;
  for (const auto& r : oracle::eigenvalues_via_roots(m)) prod *= r;
  const Complex det = determinant(m);
  CHECK(std::abs(det - prod) <= 1e-9 * std::abs(det));

  CHECK_THROWS_AS(determinant(CMatrix(2, 3)), Error);
}

TEST_CASE("determinant: stable at 256x256 on a well-conditioned input") {
  // |det Q| = 1 for unitary Q; checks pivoted-LU stability at the
  // largest supported working size.
  GaussianStream rng(131);
  const CMatrix q = oracle::random_unitary(rng, 256);
  CHECK(std::abs(std::abs(determinant(q)) - 1.0) <= 1e-10);
}

TEST_CASE("determinant: multiplicativity on random 8x8 pairs") {
  GaussianStream rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    const CMatrix a = oracle::random_matrix(rng, 8);
    const CMatrix b = oracle::random_matrix(rng, 8);
    const Complex lhs = determinant(a * b);
    const Complex rhs = determinant(a) * determinant(b);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("pfaffian_skew: base cases") {
  CMatrix two(2, 2);
  two(0, 1) = Complex(1.5, -0.25);
  two(1, 0) = -two(0, 1);
  CHECK(pfaffian_skew(two) == two(0, 1));

  CHECK(pfaffian_skew(CMatrix(4, 4)) == Complex(0.0, 0.0));

  CHECK_THROWS_AS(pfaffian_skew(CMatrix(3, 3)), Error);
  try {
    pfaffian_skew(CMatrix(3, 3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddDimension);
  }
  GaussianStream rng(3);
  CHECK_THROWS_AS(pfaffian_skew(oracle::random_matrix(rng, 4)), Error);
}

TEST_CASE("pfaffian_skew: random 8x8 against the matching expansion") {
  GaussianStream rng(19);
  for (int rep = 0; rep < 4; ++rep) {
    const CMatrix m = oracle::random_skew(rng, 8);
    const Complex direct = oracle::pfaffian_expansion(m);
    const Complex pf = pfaffian_skew(m);
    CHECK(std::abs(pf - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("pfaffian_skew: Pf^2 = det") {
  GaussianStream rng(23);
  for (std::size_t n : {4u, 6u, 10u, 12u}) {
    const CMatrix m = oracle::random_skew(rng, n);
    const Complex pf = pfaffian_skew(m);
    const Complex det = determinant(m);
    CHECK(std::abs(pf * pf - det) <= 1e-8 * std::max(1.0, std::abs(det)));
  }
}

TEST_CASE("pfaffian_skew: transformation law under unitary congruence") {
  GaussianStream rng(29);
  for (int rep = 0; rep < 4; ++rep) {
    const CMatrix m = oracle::random_skew(rng, 6);
    const CMatrix q = oracle::random_unitary(rng, 6);
    const CMatrix congruent = q.transpose() * m * q;
    const Complex lhs = pfaffian_skew(congruent, Tolerance{1e-9, 1e-8});
    const Complex rhs = determinant(q) * pfaffian_skew(m);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("unitary_exp: closed forms") {
  CHECK(max_abs_diff(unitary_exp(CMatrix(3, 3)), CMatrix::identity(3)) == 0.0);

  const double t = 0.7;
  CMatrix rot(2, 2);
  rot(0, 1) = t;
  rot(1, 0) = -t;
  const CMatrix e = unitary_exp(rot);
  CHECK(e(0, 0).real() == doctest::Approx(std::cos(t)).epsilon(1e-12));
  CHECK(e(0, 1).real() == doctest::Approx(std::sin(t)).epsilon(1e-12));
  CHECK(unitarity_residual(e) <= 1e-10);
}

TEST_CASE("unitary_exp: random 4x4 against Taylor scaling-and-squaring") {
  GaussianStream rng(31);
  for (int rep = 0; rep < 4; ++rep) {
    const CMatrix a = oracle::random_anti_hermitian(rng, 4);
    CHECK(max_abs_diff(unitary_exp(a), oracle::exp_taylor(a)) <= 1e-10);
  }
  CHECK_THROWS_AS(unitary_exp(oracle::random_matrix(rng, 4)), Error);
}
