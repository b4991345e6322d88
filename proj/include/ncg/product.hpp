#pragma once

#include <utility>

#include "ncg/geometry.hpp"

namespace ncg {

/// The KO-dimension 6 internal triple: algebra C (as a real algebra),
/// Hilbert space C^2 holding a charged fermion and its antiparticle,
/// zero Dirac operator.
struct InternalTriple {
  CMatrix k_f;      // unitary part of J_F, the swap matrix
  CMatrix gamma_f;  // diag(1, -1)
  CMatrix dirac_f;  // 2x2 zero
  int s = 6;
};

InternalTriple internal_u1_triple();

/// rep(kappa) = diag(kappa, conj kappa) on the internal C^2.
CMatrix internal_rep(Complex kappa);

/// Product of a matrix geometry with the U(1) internal space. Tensor order
/// is fixed as V (x) M_n(C) (x) C^2; all dense operators use it.
struct ProductTriple {
  MatrixGeometry base;
  InternalTriple internal;
  std::size_t hilbert_dim = 0;  // 8 n^2
  CMatrix k_manifold;           // unitary part of J_M on V (x) M_n(C)
  CMatrix k_total;              // unitary part of J = J_M (x) J_F
  CMatrix gamma;                // gamma5 (x) 1 (x) Gamma_F
  CMatrix dirac0;               // D_M (x) 1_F
  int s = 2;
  int eps_prime = 1;
};

/// Requires a RealMat or QuatMat base. The construction verifies the
/// KO-dimension bookkeeping (s = 2, J^2 = -1, Gamma^2 = I) and the vacuum
/// relations D0 Gamma + Gamma D0 = 0, D0 = J D0 J^{-1}.
ProductTriple build_product_triple(const MatrixGeometry& geom);

/// a = x + i y with x, y in the real form A_M; bar(a) = x - i y.
struct AlgebraElement {
  CMatrix value;
  CMatrix x;
  CMatrix y;

  CMatrix bar() const { return x - Complex(0.0, 1.0) * y; }
};

AlgebraElement split_element(const CMatrix& a, const AlgebraKind& kind, Tolerance tol = {});

/// Dense left/right representation of a in M_n(C) = A_M (x) C on the full
/// Hilbert space: l(a) = diag(l_M(a), l_M(bar a)), r(a) = diag(r_M(bar a), r_M(a))
/// over the internal grading.
CMatrix left_rep(const ProductTriple& t, const AlgebraElement& a);
CMatrix right_rep(const ProductTriple& t, const AlgebraElement& a);
std::pair<CMatrix, CMatrix> represent_element(const ProductTriple& t, const AlgebraElement& a);

/// Adjoint gauge action U = l(u) r(u^{-1}) of a unitary u in U(n).
CMatrix gauge_operator(const ProductTriple& t, const CMatrix& u, Tolerance tol = {});

/// l(a) + r(a*) for a = x + iy with x anti-Hermitian and y Hermitian; the
/// infinitesimal version of the gauge action, block form
/// diag([x,.] + i{y,.}, [x,.] - i{y,.}).
CMatrix adjoint_lie(const ProductTriple& t, const AlgebraElement& a, Tolerance tol = {});

/// Axiom suite for an operator on the product space given by its coefficient
/// families (L-type, H-type universal; theta, y charged).
AxiomReport verify_product_axioms(const ProductTriple& t, const std::array<CMatrix, 4>& l_coef,
                                  const std::array<CMatrix, 4>& h_coef,
                                  const std::array<CMatrix, 4>& theta_coef,
                                  const std::array<CMatrix, 4>& y_coef, const CMatrix& assembled,
                                  Tolerance tol = {});

}  // namespace ncg
