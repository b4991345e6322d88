#include <doctest.h>

#include <cmath>

#include "ncg/clifford.hpp"
#include "ncg/product.hpp"

using namespace ncg;

namespace {

// Levi-Civita sign of a permutation of (1,2,3,4) given as four indices.
int levi_civita(int a, int b, int c, int d) {
  int perm[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (perm[i] == perm[j]) return 0;
      if (perm[i] > perm[j]) sign = -sign;
    }
  return sign;
}

}  // namespace

TEST_CASE("ko_sign_table: values pinned by the construction") {
  CHECK(ko_sign_table(4).eps_prime == 1);
  CHECK(ko_sign_table(4).eps == -1);
  CHECK(ko_sign_table(4).eps_dprime == 1);

  CHECK(ko_sign_table(2).eps_prime == 1);
  CHECK(ko_sign_table(2).eps == -1);
  CHECK(ko_sign_table(2).eps_dprime == -1);

  CHECK(ko_sign_table(6).eps == 1);
  CHECK(ko_sign_table(6).eps_dprime == -1);

  CHECK(ko_sign_table(0).eps == 1);
  CHECK(ko_sign_table(0).eps_prime == 1);
  CHECK(ko_sign_table(1).eps_prime == -1);
  CHECK(ko_sign_table(5).eps == -1);
  CHECK(ko_sign_table(5).eps_prime == -1);
}

TEST_CASE("ko_sign_table s=6 matches the internal triple structure maps") {
  const KOSigns signs = ko_sign_table(6);
  const InternalTriple f = internal_u1_triple();
  // J_F^2 = eps, J_F Gamma_F = eps'' Gamma_F J_F via the unitary part.
  CHECK(max_abs_diff(f.k_f * f.k_f.conjugate(), double(signs.eps) * CMatrix::identity(2)) == 0.0);
  CHECK(max_abs_diff(f.k_f * f.gamma_f.conjugate(),
                     double(signs.eps_dprime) * (f.gamma_f * f.k_f)) == 0.0);
}

TEST_CASE("build_clifford_module (0,4)") {
  const CliffordModule mod = build_clifford_module(0, 4);
  CHECK(mod.dim == 4);
  CHECK(mod.s == 4);
  REQUIRE(mod.gammas.size() == 4);

  const CMatrix id = CMatrix::identity(4);
  for (int j = 0; j < 4; ++j) {
    CHECK(anti_hermiticity_residual(mod.gammas[j]) == 0.0);
    CHECK(max_abs_diff(mod.gammas[j] * mod.gammas[j], -id) <= 1e-12);
    for (int k = j + 1; k < 4; ++k)
      CHECK(anticommutator(mod.gammas[j], mod.gammas[k]).max_abs() <= 1e-12);
  }

  CHECK(max_abs_diff(mod.gamma5 * mod.gamma5, id) <= 1e-12);
  CHECK(hermiticity_residual(mod.gamma5) <= 1e-12);
  for (int j = 0; j < 4; ++j)
    CHECK(anticommutator(mod.gamma5, mod.gammas[j]).max_abs() <= 1e-12);

  // C = K conj(.): C^2 = eps and C gamma^j C^{-1} = gamma^j for s = 4.
  CHECK(max_abs_diff(mod.conj_k * mod.conj_k.conjugate(), double(mod.signs.eps) * id) <= 1e-12);
  for (int j = 0; j < 4; ++j)
    CHECK(max_abs_diff(mod.conj_k * mod.gammas[j].conjugate() * mod.conj_k.adjoint(),
                       mod.gammas[j]) <= 1e-12);
  CHECK(unitarity_residual(mod.conj_k) <= 1e-12);
}

TEST_CASE("build_clifford_module (1,1)") {
  const CliffordModule mod = build_clifford_module(1, 1);
  CHECK(mod.s == 0);
  CHECK(mod.dim == 2);
  REQUIRE(mod.gammas.size() == 2);
  const CMatrix id = CMatrix::identity(2);
  CHECK(hermiticity_residual(mod.gammas[0]) == 0.0);
  CHECK(max_abs_diff(mod.gammas[0] * mod.gammas[0], id) <= 1e-12);
  CHECK(anti_hermiticity_residual(mod.gammas[1]) == 0.0);
  CHECK(max_abs_diff(mod.gammas[1] * mod.gammas[1], -id) <= 1e-12);
  CHECK(anticommutator(mod.gammas[0], mod.gammas[1]).max_abs() <= 1e-12);
}

TEST_CASE("build_clifford_module: every signature with p + q <= 5") {
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; p + q <= 5; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      const CliffordModule mod = build_clifford_module(p, q);
      const CMatrix id = CMatrix::identity(mod.dim);
      CHECK(mod.s == ((q - p) % 8 + 8) % 8);

      for (int a = 0; a < p + q; ++a) {
        const double sq = (a < p) ? 1.0 : -1.0;
        CHECK(max_abs_diff(mod.gammas[a] * mod.gammas[a], sq * id) <= 1e-12);
        if (a < p)
          CHECK(hermiticity_residual(mod.gammas[a]) <= 1e-12);
        else
          CHECK(anti_hermiticity_residual(mod.gammas[a]) <= 1e-12);
        for (int b = a + 1; b < p + q; ++b)
          CHECK(anticommutator(mod.gammas[a], mod.gammas[b]).max_abs() <= 1e-12);
      }

      CHECK(max_abs_diff(mod.conj_k * mod.conj_k.conjugate(), double(mod.signs.eps) * id) <=
            1e-12);
      for (int a = 0; a < p + q; ++a)
        CHECK(max_abs_diff(mod.conj_k * mod.gammas[a].conjugate() * mod.conj_k.adjoint(),
                           double(mod.signs.eps_prime) * mod.gammas[a]) <= 1e-12);
      if (mod.has_chirality())
        CHECK(max_abs_diff(mod.conj_k * mod.gamma5.conjugate() * mod.conj_k.adjoint(),
                           double(mod.signs.eps_dprime) * mod.gamma5) <= 1e-12);
    }
  CHECK_THROWS_AS(build_clifford_module(3, 3), Error);
  try {
    build_clifford_module(6, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedSignature);
  }
}

TEST_CASE("trigamma_products (0,4)") {
  const CliffordModule mod = build_clifford_module(0, 4);
  const TrigammaBasis basis = trigamma_products(mod);

  CHECK(basis.triples[0] == std::array<int, 3>{1, 2, 3});
  CHECK(basis.triples[1] == std::array<int, 3>{1, 2, 4});
  CHECK(basis.triples[2] == std::array<int, 3>{1, 3, 4});
  CHECK(basis.triples[3] == std::array<int, 3>{2, 3, 4});
  CHECK(basis.dual_index == std::array<int, 4>{4, 3, 2, 1});

  const CMatrix id = CMatrix::identity(4);
  for (int t = 0; t < 4; ++t) {
    CHECK(hermiticity_residual(basis.products[t]) <= 1e-12);
    CHECK(max_abs_diff(basis.products[t] * basis.products[t], id) <= 1e-12);
    for (int u = t + 1; u < 4; ++u)
      CHECK(anticommutator(basis.products[t], basis.products[u]).max_abs() <= 1e-12);

    // gamma^j gamma^k gamma^l = eta gamma5 gamma^m, eta = epsilon^{lkjm}.
    const auto [j, k, l] = basis.triples[t];
    const int m = basis.dual_index[t];
    CHECK(max_abs_diff(basis.products[t],
                       double(basis.eta[t]) * (mod.gamma5 * mod.gammas[m - 1])) == 0.0);
    CHECK(basis.eta[t] == levi_civita(l, k, j, m));
  }

  CHECK_THROWS_AS(trigamma_products(build_clifford_module(1, 1)), Error);
  try {
    trigamma_products(build_clifford_module(1, 1));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongSignature);
  }
}
