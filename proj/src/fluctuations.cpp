#include "ncg/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ncg {

namespace {

const Complex kI(0.0, 1.0);

std::array<CMatrix, 4> zero_coeffs(std::size_t n) {
  std::array<CMatrix, 4> z;
  for (auto& m : z) m = CMatrix(n, n);
  return z;
}

void check_generator_shapes(const ProductTriple& t, const OneFormGenerators& gen) {
  if (gen.pairs.empty()) raise(ErrorCode::InvalidConfig, "one-form generator list is empty");
  const std::size_t n = t.base.space.algebra.n;
  for (const auto& [a, b] : gen.pairs) {
    if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
      raise(ErrorCode::DimensionMismatch, "one-form generators must be n x n");
  }
}

}  // namespace

FluctuationCoefficients connes_one_form(const ProductTriple& t, const OneFormGenerators& gen,
                                        Tolerance tol) {
  check_generator_shapes(t, gen);
  const auto& kind = t.base.space.algebra;
  const std::size_t n = kind.n;

  FluctuationCoefficients out;
  for (int j = 0; j < 4; ++j) {
    CMatrix lam(n, n);
    for (const auto& [a, b] : gen.pairs) lam += a * commutator(t.base.dirac.L[j], b);
    out.lambda_l[j] = lam;
  }
  for (int tt = 0; tt < 4; ++tt) {
    CMatrix lam(n, n);
    for (const auto& [a, b] : gen.pairs) lam += a * commutator(t.base.dirac.H[tt], b);
    out.lambda_h[tt] = lam;
  }

  // Hermiticity of omega requires anti-Hermitian Lambda_j and Hermitian
  // Lambda_jkl. Symmetrization averages omega with its adjoint at the
  // coefficient level; strict mode rejects instead.
  if (gen.symmetrize) {
    for (int j = 0; j < 4; ++j) out.lambda_l[j] = 0.5 * (out.lambda_l[j] - out.lambda_l[j].adjoint());
    for (int tt = 0; tt < 4; ++tt)
      out.lambda_h[tt] = 0.5 * (out.lambda_h[tt] + out.lambda_h[tt].adjoint());
  } else {
    for (int j = 0; j < 4; ++j)
      if (anti_hermiticity_residual(out.lambda_l[j]) > tol.abs_eps)
        raise(ErrorCode::NonHermitianOneForm,
              "Lambda_" + std::to_string(j + 1) + " is not anti-Hermitian");
    for (int tt = 0; tt < 4; ++tt)
      if (hermiticity_residual(out.lambda_h[tt]) > tol.abs_eps)
        raise(ErrorCode::NonHermitianOneForm,
              "Lambda_jkl[" + std::to_string(tt + 1) + "] is not Hermitian");
  }

  for (int j = 0; j < 4; ++j) {
    const AlgebraElement e = split_element(out.lambda_l[j], kind, tol);
    out.sigma[j] = e.x;
    out.theta[j] = e.y;
  }
  for (int tt = 0; tt < 4; ++tt) {
    const AlgebraElement e = split_element(out.lambda_h[tt], kind, tol);
    out.x[tt] = e.x;
    out.y[tt] = e.y;
  }

  // The split of a Hermitian one-form lands in definite classes.
  double class_residual = 0.0;
  for (int j = 0; j < 4; ++j) {
    class_residual = std::max({class_residual, anti_hermiticity_residual(out.sigma[j]),
                               hermiticity_residual(out.theta[j]),
                               hermiticity_residual(out.x[j]),
                               anti_hermiticity_residual(out.y[j])});
  }
  double scale = 1.0;
  for (int j = 0; j < 4; ++j)
    scale = std::max({scale, out.lambda_l[j].max_abs(), out.lambda_h[j].max_abs()});
  if (class_residual > 1e-12 * scale)
    raise(ErrorCode::StructureError, "one-form split violates its Hermiticity classes");
  return out;
}

CMatrix one_form_operator(const ProductTriple& t, const OneFormGenerators& gen, Tolerance tol) {
  check_generator_shapes(t, gen);
  const auto& kind = t.base.space.algebra;
  CMatrix omega(t.hilbert_dim, t.hilbert_dim);
  for (const auto& [a, b] : gen.pairs) {
    const CMatrix la = left_rep(t, split_element(a, kind, tol));
    const CMatrix lb = left_rep(t, split_element(b, kind, tol));
    omega += la * commutator(t.dirac0, lb);
  }
  return omega;
}

FluctuatedDirac assemble_from_coefficients(const ProductTriple& t,
                                           const std::array<CMatrix, 4>& l_coef,
                                           const std::array<CMatrix, 4>& h_coef,
                                           const std::array<CMatrix, 4>& theta_coef,
                                           const std::array<CMatrix, 4>& y_coef) {
  const auto& sp = t.base.space;
  FluctuatedDirac fd;
  fd.l_prime = l_coef;
  fd.h_prime = h_coef;
  fd.theta = theta_coef;
  fd.y = y_coef;

  CMatrix manifold(sp.hilbert_dim, sp.hilbert_dim);
  CMatrix theta_op(sp.hilbert_dim, sp.hilbert_dim);
  CMatrix y_op(sp.hilbert_dim, sp.hilbert_dim);
  for (int j = 0; j < 4; ++j) {
    manifold += kron(sp.clifford.gammas[j], commutator_op(l_coef[j]));
    theta_op += kron(sp.clifford.gammas[j], anticommutator_op(kI * theta_coef[j]));
  }
  for (int tt = 0; tt < 4; ++tt) {
    manifold += kron(sp.trig.products[tt], anticommutator_op(h_coef[tt]));
    y_op += kron(sp.trig.products[tt], commutator_op(kI * y_coef[tt]));
  }
  fd.manifold = manifold;
  fd.theta_op = theta_op;
  fd.y_op = y_op;
  fd.assembled =
      kron(manifold, CMatrix::identity(2)) + kron(theta_op + y_op, t.internal.gamma_f);
  return fd;
}

FluctuatedDirac total_fluctuation(const ProductTriple& t, const FluctuationCoefficients& coeffs) {
  std::array<CMatrix, 4> lp, hp;
  for (int j = 0; j < 4; ++j) lp[j] = t.base.dirac.L[j] + coeffs.sigma[j];
  for (int tt = 0; tt < 4; ++tt) hp[tt] = t.base.dirac.H[tt] + coeffs.x[tt];
  return assemble_from_coefficients(t, lp, hp, coeffs.theta, coeffs.y);
}

FluctuatedDirac vacuum_dirac(const ProductTriple& t) {
  const std::size_t n = t.base.space.algebra.n;
  return assemble_from_coefficients(t, t.base.dirac.L, t.base.dirac.H, zero_coeffs(n),
                                    zero_coeffs(n));
}

CMatrix unitary_transform(const ProductTriple& t, const CMatrix& u, const CMatrix& d,
                          Tolerance tol) {
  if (d.rows() != t.hilbert_dim || d.cols() != t.hilbert_dim)
    raise(ErrorCode::DimensionMismatch, "unitary_transform: operator has wrong dimension");
  const CMatrix big_u = gauge_operator(t, u, tol);
  return big_u * d * big_u.adjoint();
}

CoefficientDelta infinitesimal_gauge(const ProductTriple& t, const CMatrix& y_herm,
                                     const FluctuatedDirac& fd, Tolerance tol) {
  const auto& kind = t.base.space.algebra;
  if (y_herm.rows() != kind.n || y_herm.cols() != kind.n)
    raise(ErrorCode::DimensionMismatch, "infinitesimal_gauge: y is not n x n");
  if (hermiticity_residual(y_herm) > tol.abs_eps)
    raise(ErrorCode::NotHermitian, "infinitesimal_gauge: y must be Hermitian");
  if (!algebra_membership(kind, y_herm, tol))
    raise(ErrorCode::NotInAlgebra, "infinitesimal_gauge: y must lie in A_M");

  CoefficientDelta delta;
  for (int j = 0; j < 4; ++j) {
    delta.d_l_prime[j] = -commutator(y_herm, fd.theta[j]);
    delta.d_theta[j] = commutator(y_herm, fd.l_prime[j]);
  }
  for (int tt = 0; tt < 4; ++tt) {
    delta.d_h_prime[tt] = -commutator(y_herm, fd.y[tt]);
    delta.d_y[tt] = commutator(y_herm, fd.h_prime[tt]);
  }
  delta.assembled = assemble_from_coefficients(t, delta.d_l_prime, delta.d_h_prime, delta.d_theta,
                                               delta.d_y)
                        .assembled;
  return delta;
}

FluctuatedDirac chiral_rotate(const ProductTriple& t, const FluctuatedDirac& fd, Tolerance tol) {
  // R = exp(i pi Gamma / 4) = (I + i Gamma)/sqrt(2).
  const std::size_t dim = t.hilbert_dim;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CMatrix r(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      r(i, j) = inv_sqrt2 * ((i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0)) + kI * t.gamma(i, j));
  const CMatrix rotated = r * fd.assembled * r.adjoint();
  return extract_coefficients(t, rotated, tol).fd;
}

namespace {

// Partial trace over the V factor against the gamma-basis element g:
// N[(m,f),(m',f')] = (1/dimV) sum_{v,v'} conj(g(v,v')) D[(v,m,f),(v',m',f')].
CMatrix project_gamma_component(const CMatrix& d, const CMatrix& g, std::size_t dv,
                                std::size_t rest) {
  CMatrix out(rest, rest);
  const double norm = 1.0 / double(dv);
  for (std::size_t v = 0; v < dv; ++v)
    for (std::size_t w = 0; w < dv; ++w) {
      const Complex gv = std::conj(g(v, w));
      if (gv == Complex(0.0, 0.0)) continue;
      for (std::size_t m = 0; m < rest; ++m)
        for (std::size_t mp = 0; mp < rest; ++mp)
          out(m, mp) += norm * gv * d(v * rest + m, w * rest + mp);
    }
  return out;
}

// Partial trace over the second factor of an operator on C^n (x) C^n.
CMatrix partial_trace_second(const CMatrix& m, std::size_t n) {
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m(i * n + j, k * n + j);
      out(i, k) = s;
    }
  return out;
}

// Inverts A -> A (x) I - I (x) A^T for traceless A.
CMatrix invert_commutator_op(const CMatrix& m, std::size_t n) {
  return (1.0 / double(n)) * partial_trace_second(m, n);
}

// Inverts A -> A (x) I + I (x) A^T.
CMatrix invert_anticommutator_op(const CMatrix& m, std::size_t n) {
  CMatrix tr2 = partial_trace_second(m, n);  // = n A + tr(A) I
  const Complex tr_a = tr2.trace() / double(2 * n);
  for (std::size_t i = 0; i < n; ++i) tr2(i, i) -= tr_a;
  return (1.0 / double(n)) * tr2;
}

}  // namespace

Extraction extract_coefficients(const ProductTriple& t, const CMatrix& d, Tolerance tol) {
  if (d.rows() != t.hilbert_dim || d.cols() != t.hilbert_dim)
    raise(ErrorCode::DimensionMismatch, "extract_coefficients: operator has wrong dimension");
  const double scale = std::max(1.0, d.max_abs());
  if (hermiticity_residual(d) > std::max(tol.abs_eps, tol.rel_eps * scale))
    raise(ErrorCode::NotHermitian, "extract_coefficients: operator is not Hermitian");

  const auto& sp = t.base.space;
  const std::size_t n = sp.algebra.n;
  const std::size_t nn = n * n;
  const std::size_t dv = sp.clifford.dim;
  const std::size_t rest = 2 * nn;

  std::array<CMatrix, 4> lp, hp, th, yy;
  auto split_internal = [&](const CMatrix& ng, CMatrix& even_part, CMatrix& odd_part) {
    // even: coefficient of (x) 1_F, odd: coefficient of (x) Gamma_F.
    CMatrix plus(nn, nn), minus(nn, nn);
    for (std::size_t m = 0; m < nn; ++m)
      for (std::size_t mp = 0; mp < nn; ++mp) {
        plus(m, mp) = ng(m * 2 + 0, mp * 2 + 0);
        minus(m, mp) = ng(m * 2 + 1, mp * 2 + 1);
      }
    even_part = 0.5 * (plus + minus);
    odd_part = 0.5 * (plus - minus);
  };

  for (int j = 0; j < 4; ++j) {
    const CMatrix ng = project_gamma_component(d, sp.clifford.gammas[j], dv, rest);
    CMatrix even, odd;
    split_internal(ng, even, odd);
    lp[j] = invert_commutator_op(even, n);
    th[j] = -kI * invert_anticommutator_op(odd, n);  // odd = {i theta, .}
  }
  for (int tt = 0; tt < 4; ++tt) {
    const CMatrix ng = project_gamma_component(d, sp.trig.products[tt], dv, rest);
    CMatrix even, odd;
    split_internal(ng, even, odd);
    hp[tt] = invert_anticommutator_op(even, n);
    yy[tt] = -kI * invert_commutator_op(odd, n);  // odd = [i y, .]
  }

  Extraction ex;
  ex.fd = assemble_from_coefficients(t, lp, hp, th, yy);
  ex.residual = max_abs_diff(d, ex.fd.assembled);
  if (ex.residual > std::max(tol.abs_eps, tol.rel_eps * scale))
    raise(ErrorCode::NotInSpan,
          "operator is not in the fluctuation span (residual " + std::to_string(ex.residual) + ")");
  return ex;
}

}  // namespace ncg
