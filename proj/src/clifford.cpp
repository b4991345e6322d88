#include "ncg/clifford.hpp"

#include <cmath>
#include <string>

namespace ncg {

namespace {

CMatrix pauli(int which) {
  CMatrix m(2, 2);
  switch (which) {
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = Complex(0.0, -1.0);
      m(1, 0) = Complex(0.0, 1.0);
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      raise(ErrorCode::StructureError, "bad Pauli index");
  }
  return m;
}

// Hermitian anticommuting chain e_1..e_count on (C^2)^{tensor levels}:
//   e_{2r+1} = s3^r (x) s1 (x) 1^(levels-r-1)
//   e_{2r+2} = s3^r (x) s2 (x) 1^(levels-r-1)
//   e_{2m+1} = s3^m            (odd tail)
std::vector<CMatrix> hermitian_chain(int count, int levels) {
  std::vector<CMatrix> es;
  for (int g = 0; g < count; ++g) {
    CMatrix m(1, 1);
    m(0, 0) = 1.0;
    const int r = g / 2;  // r == levels for the odd tail generator
    for (int lev = 0; lev < levels; ++lev) {
      CMatrix factor;
      if (lev < r) {
        factor = pauli(3);
      } else if (lev == r) {
        factor = pauli(g % 2 == 0 ? 1 : 2);
      } else {
        factor = CMatrix::identity(2);
      }
      m = kron(m, factor);
    }
    es.push_back(m);
  }
  return es;
}

const double kCliffordEps = 1e-12;

}  // namespace

KOSigns ko_sign_table(int s) {
  const int m = ((s % 8) + 8) % 8;
  static const int eps[8] = {+1, +1, -1, -1, -1, -1, +1, +1};
  static const int eps_prime[8] = {+1, -1, +1, +1, +1, -1, +1, +1};
  static const int eps_dprime[8] = {+1, +1, -1, +1, +1, +1, -1, +1};
  return KOSigns{eps[m], eps_prime[m], eps_dprime[m]};
}

CliffordModule build_clifford_module(int p, int q) {
  if (p < 0 || q < 0) raise(ErrorCode::UnsupportedSignature, "negative signature entry");
  const int n = p + q;
  if (n > 5) raise(ErrorCode::UnsupportedSignature, "p + q > 5 not supported");

  CliffordModule mod;
  mod.p = p;
  mod.q = q;
  mod.s = ((q - p) % 8 + 8) % 8;
  mod.signs = ko_sign_table(mod.s);

  const int levels = n / 2;
  mod.dim = std::size_t(1) << levels;

  const std::vector<CMatrix> es = hermitian_chain(n, levels);
  for (int g = 0; g < n; ++g) {
    if (g < p) {
      mod.gammas.push_back(es[g]);
    } else {
      mod.gammas.push_back(Complex(0.0, 1.0) * es[g]);
    }
  }

  if (mod.has_chirality()) {
    CMatrix prod = CMatrix::identity(mod.dim);
    for (const auto& g : mod.gammas) prod = prod * g;
    // prod^2 = +-I; pick the phase making the chirality Hermitian unitary.
    const Complex c = (prod * prod)(0, 0);
    mod.gamma5 = (std::abs(c - 1.0) < 0.5) ? prod : Complex(0.0, 1.0) * prod;
    if (max_abs_diff(mod.gamma5 * mod.gamma5, CMatrix::identity(mod.dim)) > kCliffordEps ||
        hermiticity_residual(mod.gamma5) > kCliffordEps)
      raise(ErrorCode::StructureError, "chirality normalization failed");
  }

  // Charge conjugation: scan generator-subset products for the unitary K with
  //   K conj(gamma^j) K^{-1} = eps' gamma^j   and   K conj(K) = eps I.
  const double want_eps = mod.signs.eps;
  const double want_eps_prime = mod.signs.eps_prime;
  bool found = false;
  for (unsigned mask = 0; mask < (1u << n) && !found; ++mask) {
    CMatrix k = CMatrix::identity(mod.dim);
    for (int g = 0; g < n; ++g)
      if (mask & (1u << g)) k = k * es[g];

    const CMatrix kinv = k.adjoint();
    bool ok = max_abs_diff(k * k.conjugate(), want_eps * CMatrix::identity(mod.dim)) <= kCliffordEps;
    for (int g = 0; g < n && ok; ++g) {
      ok = max_abs_diff(k * mod.gammas[g].conjugate() * kinv, want_eps_prime * mod.gammas[g]) <=
           kCliffordEps;
    }
    if (ok) {
      mod.conj_k = k;
      found = true;
    }
  }
  if (!found)
    raise(ErrorCode::UnsupportedSignature,
          "no charge conjugation realizes the sign table for (" + std::to_string(p) + "," +
              std::to_string(q) + ")");

  if (mod.has_chirality()) {
    // The grading sign eps'' is determined by the construction; cross-check it.
    const CMatrix lhs = mod.conj_k * mod.gamma5.conjugate() * mod.conj_k.adjoint();
    if (max_abs_diff(lhs, double(mod.signs.eps_dprime) * mod.gamma5) > kCliffordEps)
      raise(ErrorCode::StructureError, "chirality sign mismatch with KO table");
  }
  return mod;
}

TrigammaBasis trigamma_products(const CliffordModule& mod) {
  if (mod.p + mod.q != 4) raise(ErrorCode::WrongSignature, "trigamma basis needs p + q = 4");

  TrigammaBasis basis;
  int t = 0;
  for (int j = 1; j <= 4; ++j)
    for (int k = j + 1; k <= 4; ++k)
      for (int l = k + 1; l <= 4; ++l) {
        basis.triples[t] = {j, k, l};
        basis.dual_index[t] = 10 - j - k - l;  // complement in {1,2,3,4}
        basis.products.push_back(mod.gammas[j - 1] * mod.gammas[k - 1] * mod.gammas[l - 1]);
        ++t;
      }

  for (int i = 0; i < 4; ++i) {
    const CMatrix ref = mod.gamma5 * mod.gammas[basis.dual_index[i] - 1];
    if (max_abs_diff(basis.products[i], ref) <= kCliffordEps) {
      basis.eta[i] = +1;
    } else if (max_abs_diff(basis.products[i], -ref) <= kCliffordEps) {
      basis.eta[i] = -1;
    } else {
      raise(ErrorCode::StructureError, "trigamma duality sign not +-1");
    }
  }
  return basis;
}

}  // namespace ncg
