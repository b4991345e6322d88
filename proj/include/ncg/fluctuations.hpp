#pragma once

#include "ncg/product.hpp"

namespace ncg {

/// Generator pairs (a_m, b_m) in M_n(C) for a Connes one-form
/// omega = sum_m l(a_m) [D0, l(b_m)].
struct OneFormGenerators {
  std::vector<std::pair<CMatrix, CMatrix>> pairs;
  bool symmetrize = true;
};

/// Resolved one-form coefficients Lambda_j = sum a_m [L_j, b_m] and
/// Lambda_jkl = sum a_m [H_jkl, b_m], split into the real form:
/// Lambda_j = sigma_j + i theta_j, Lambda_jkl = x_jkl + i y_jkl with
/// sigma, y anti-Hermitian and theta, x Hermitian, all in A_M.
struct FluctuationCoefficients {
  std::array<CMatrix, 4> lambda_l;
  std::array<CMatrix, 4> lambda_h;
  std::array<CMatrix, 4> sigma;
  std::array<CMatrix, 4> theta;
  std::array<CMatrix, 4> x;
  std::array<CMatrix, 4> y;
};

FluctuationCoefficients connes_one_form(const ProductTriple& t, const OneFormGenerators& gen,
                                        Tolerance tol = {});

/// Dense one-form operator sum_m l(a_m)[D0, l(b_m)] on the 8n^2 space,
/// before any symmetrization. Ground truth for the coefficient route.
CMatrix one_form_operator(const ProductTriple& t, const OneFormGenerators& gen, Tolerance tol = {});

/// Fluctuated Dirac operator in coefficient form:
///   assembled = diag(D'_M + (Theta + Y), D'_M - (Theta + Y))
/// with D'_M from (L', H'), Theta = gamma^j {i theta_j, .},
/// Y = gamma^jkl [i y_jkl, .].
struct FluctuatedDirac {
  std::array<CMatrix, 4> l_prime;
  std::array<CMatrix, 4> h_prime;
  std::array<CMatrix, 4> theta;
  std::array<CMatrix, 4> y;
  CMatrix manifold;  // D'_M on 4n^2
  CMatrix theta_op;  // Theta on 4n^2
  CMatrix y_op;      // Y on 4n^2
  CMatrix assembled;  // full operator on 8n^2
};

/// Assembles the operator for an arbitrary coefficient 4-tuple (linear).
FluctuatedDirac assemble_from_coefficients(const ProductTriple& t,
                                           const std::array<CMatrix, 4>& l_coef,
                                           const std::array<CMatrix, 4>& h_coef,
                                           const std::array<CMatrix, 4>& theta_coef,
                                           const std::array<CMatrix, 4>& y_coef);

/// D0 + omega + eps' J omega J^{-1} in coefficient form: L' = L + sigma,
/// H' = H + x, charged parts theta and y.
FluctuatedDirac total_fluctuation(const ProductTriple& t, const FluctuationCoefficients& coeffs);

/// The vacuum operator D0 as a trivial FluctuatedDirac.
FluctuatedDirac vacuum_dirac(const ProductTriple& t);

/// U D U^{-1} with U = gauge_operator(u); isospectral to D.
CMatrix unitary_transform(const ProductTriple& t, const CMatrix& u, const CMatrix& d,
                          Tolerance tol = {});

/// First-order variation of the coefficient families under the imaginary
/// Lie-algebra element iy (y Hermitian in A_M):
///   delta L'_j   = -[y, theta_j]      delta theta_j = [y, L'_j]
///   delta H'_jkl = -[y, y_jkl]        delta y_jkl   = [y, H'_jkl]
/// assembled as a dense operator alongside the coefficient deltas.
struct CoefficientDelta {
  std::array<CMatrix, 4> d_l_prime;
  std::array<CMatrix, 4> d_h_prime;
  std::array<CMatrix, 4> d_theta;
  std::array<CMatrix, 4> d_y;
  CMatrix assembled;
};

CoefficientDelta infinitesimal_gauge(const ProductTriple& t, const CMatrix& y_herm,
                                     const FluctuatedDirac& fd, Tolerance tol = {});

/// Conjugation by R = exp(i pi Gamma / 4); for a grading-anticommuting D this
/// maps X-type coefficients to Theta-type (factor eta on the dual index) and
/// Y-type to Sigma-type (factor -eta). Coefficients are re-extracted from the
/// rotated operator.
FluctuatedDirac chiral_rotate(const ProductTriple& t, const FluctuatedDirac& fd,
                              Tolerance tol = {});

/// Projection of a Hermitian operator on the product space onto the four
/// coefficient families via trace orthogonality of the gamma products.
/// Fails with NotInSpan when the reassembly residual exceeds tolerance.
struct Extraction {
  FluctuatedDirac fd;
  double residual = 0.0;
};

Extraction extract_coefficients(const ProductTriple& t, const CMatrix& d, Tolerance tol = {});

}  // namespace ncg
