#pragma once

#include <array>
#include <vector>

#include "ncg/cmatrix.hpp"

namespace ncg {

/// The (epsilon, epsilon', epsilon'') sign triple of a real spectral triple
/// in KO-dimension s. epsilon_dprime is only meaningful for even s and is
/// reported as +1 for odd s.
struct KOSigns {
  int eps;
  int eps_prime;
  int eps_dprime;
};

/// Standard KO-dimension sign table, total on s in {0,...,7}.
KOSigns ko_sign_table(int s);

/// Irreducible complex module for the real Clifford algebra of type (p,q):
/// p generators square to +1 (Hermitian), q square to -1 (anti-Hermitian).
/// The antilinear real structure C acts as v -> conj_k * conj(v).
struct CliffordModule {
  int p = 0;
  int q = 0;
  int s = 0;  // KO-dimension, q - p mod 8
  std::size_t dim = 0;
  std::vector<CMatrix> gammas;
  CMatrix gamma5;  // chirality; present iff p+q even
  CMatrix conj_k;  // unitary part of C
  KOSigns signs{};

  bool has_chirality() const { return (p + q) % 2 == 0; }
};

/// Builds the Pauli-chain representation for p + q <= 5. The q-type
/// generators are the Hermitian chain elements multiplied by i; the
/// chirality phase is fixed so gamma5 is Hermitian with gamma5^2 = I,
/// and C is the first generator-subset product matching the sign table.
CliffordModule build_clifford_module(int p, int q);

/// All products gamma^j gamma^k gamma^l (j<k<l, 1-based) for p+q = 4,
/// in lexicographic triple order, with the complementary index m and the
/// sign eta defined by gamma^j gamma^k gamma^l = eta * gamma5 * gamma^m.
struct TrigammaBasis {
  std::array<std::array<int, 3>, 4> triples;  // 1-based indices
  std::vector<CMatrix> products;
  std::array<int, 4> dual_index;  // 1-based complementary index
  std::array<int, 4> eta;
};

TrigammaBasis trigamma_products(const CliffordModule& mod);

}  // namespace ncg
