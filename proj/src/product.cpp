#include "ncg/product.hpp"

#include <cmath>

namespace ncg {

namespace {

CMatrix internal_projector(int slot) {
  CMatrix e(2, 2);
  e(slot, slot) = 1.0;
  return e;
}

// diag(mp, mm) over the internal C^2 grading, both blocks 4n^2 operators.
CMatrix internal_pair(const CMatrix& mp, const CMatrix& mm) {
  return kron(mp, internal_projector(0)) + kron(mm, internal_projector(1));
}

const double kBuildEps = 1e-10;

}  // namespace

InternalTriple internal_u1_triple() {
  InternalTriple t;
  t.k_f = CMatrix(2, 2);
  t.k_f(0, 1) = 1.0;
  t.k_f(1, 0) = 1.0;
  t.gamma_f = CMatrix(2, 2);
  t.gamma_f(0, 0) = 1.0;
  t.gamma_f(1, 1) = -1.0;
  t.dirac_f = CMatrix(2, 2);
  t.s = 6;
  return t;
}

CMatrix internal_rep(Complex kappa) {
  CMatrix m(2, 2);
  m(0, 0) = kappa;
  m(1, 1) = std::conj(kappa);
  return m;
}

ProductTriple build_product_triple(const MatrixGeometry& geom) {
  if (geom.space.algebra.tag == AlgebraTag::ComplexMat)
    raise(ErrorCode::UnsupportedAlgebra, "product requires a RealMat or QuatMat base");

  ProductTriple t;
  t.base = geom;
  t.internal = internal_u1_triple();
  const std::size_t n = geom.space.algebra.n;
  t.hilbert_dim = 2 * geom.space.hilbert_dim;

  t.k_manifold = kron(geom.space.clifford.conj_k, transpose_permutation(n));
  t.k_total = kron(t.k_manifold, t.internal.k_f);
  t.gamma = kron(kron(geom.space.clifford.gamma5, CMatrix::identity(n * n)), t.internal.gamma_f);
  t.dirac0 = kron(assemble_dirac(geom), CMatrix::identity(2));
  t.s = (geom.space.clifford.s + t.internal.s) % 8;
  t.eps_prime = ko_sign_table(t.s).eps_prime;

  if (t.s != 2) raise(ErrorCode::StructureError, "product KO-dimension is not 2");
  const CMatrix id = CMatrix::identity(t.hilbert_dim);
  if (max_abs_diff(t.gamma * t.gamma, id) > kBuildEps || hermiticity_residual(t.gamma) > kBuildEps)
    raise(ErrorCode::StructureError, "product grading is not a Z2 grading");
  if (max_abs_diff(t.k_total * t.k_total.conjugate(), -id) > kBuildEps)
    raise(ErrorCode::StructureError, "product real structure does not square to -1");
  if ((t.dirac0 * t.gamma + t.gamma * t.dirac0).max_abs() > kBuildEps)
    raise(ErrorCode::StructureError, "vacuum Dirac does not anticommute with the grading");
  if (max_abs_diff(t.dirac0, t.k_total * t.dirac0.conjugate() * t.k_total.adjoint()) > kBuildEps)
    raise(ErrorCode::StructureError, "vacuum Dirac violates the reality condition");
  return t;
}

AlgebraElement split_element(const CMatrix& a, const AlgebraKind& kind, Tolerance tol) {
  if (a.rows() != kind.n || a.cols() != kind.n)
    raise(ErrorCode::DimensionMismatch, "split_element: matrix is not n x n");
  if (kind.tag == AlgebraTag::ComplexMat)
    raise(ErrorCode::UnsupportedAlgebra, "split_element needs a real form");

  AlgebraElement e;
  e.value = a;
  const CMatrix abar = algebra_conj(kind, a);
  e.x = 0.5 * (a + abar);
  e.y = Complex(0.0, -0.5) * (a - abar);
  if (!algebra_membership(kind, e.x, tol) || !algebra_membership(kind, e.y, tol))
    raise(ErrorCode::StructureError, "split parts failed membership");
  return e;
}

CMatrix left_rep(const ProductTriple& t, const AlgebraElement& a) {
  const CMatrix id_v = CMatrix::identity(t.base.space.clifford.dim);
  const CMatrix plus = kron(id_v, left_mult_op(a.value));
  const CMatrix minus = kron(id_v, left_mult_op(a.bar()));
  return internal_pair(plus, minus);
}

CMatrix right_rep(const ProductTriple& t, const AlgebraElement& a) {
  const CMatrix id_v = CMatrix::identity(t.base.space.clifford.dim);
  const CMatrix plus = kron(id_v, right_mult_op(a.bar()));
  const CMatrix minus = kron(id_v, right_mult_op(a.value));
  return internal_pair(plus, minus);
}

std::pair<CMatrix, CMatrix> represent_element(const ProductTriple& t, const AlgebraElement& a) {
  return {left_rep(t, a), right_rep(t, a)};
}

CMatrix gauge_operator(const ProductTriple& t, const CMatrix& u, Tolerance tol) {
  const std::size_t n = t.base.space.algebra.n;
  if (u.rows() != n || u.cols() != n)
    raise(ErrorCode::DimensionMismatch, "gauge_operator: unitary is not n x n");
  if (unitarity_residual(u) > std::max(tol.abs_eps, 1e-10))
    raise(ErrorCode::NotUnitary, "gauge_operator: input is not unitary");

  const AlgebraKind& kind = t.base.space.algebra;
  const AlgebraElement eu = split_element(u, kind, tol);
  const AlgebraElement eu_inv = split_element(u.adjoint(), kind, tol);
  return left_rep(t, eu) * right_rep(t, eu_inv);
}

CMatrix adjoint_lie(const ProductTriple& t, const AlgebraElement& a, Tolerance tol) {
  if (anti_hermiticity_residual(a.x) > tol.abs_eps || hermiticity_residual(a.y) > tol.abs_eps)
    raise(ErrorCode::NotLieAlgebraElement, "need x anti-Hermitian and y Hermitian");
  const AlgebraElement astar = split_element(a.value.adjoint(), t.base.space.algebra, tol);
  return left_rep(t, a) + right_rep(t, astar);
}

AxiomReport verify_product_axioms(const ProductTriple& t, const std::array<CMatrix, 4>& l_coef,
                                  const std::array<CMatrix, 4>& h_coef,
                                  const std::array<CMatrix, 4>& theta_coef,
                                  const std::array<CMatrix, 4>& y_coef, const CMatrix& assembled,
                                  Tolerance tol) {
  AxiomReport report;
  report.hermitian.residual = hermiticity_residual(assembled);
  report.hermitian.pass = report.hermitian.residual <= tol.abs_eps;

  report.reality.residual = max_abs_diff(
      assembled, double(t.eps_prime) * (t.k_total * assembled.conjugate() * t.k_total.adjoint()));
  report.reality.pass = report.reality.residual <= tol.abs_eps;

  report.grading.residual = (assembled * t.gamma + t.gamma * assembled).max_abs();
  report.grading.pass = report.grading.residual <= tol.abs_eps;

  // First-order condition over a real basis of A = A_M (x) C, evaluated per
  // internal charge block on the n^2-dimensional matrix factor. On the block
  // of charge c, a acts on the left as a (c=+) or bar(a) (c=-), and b on the
  // right as bar(b) (c=+) or b (c=-). The charged coefficient families carry
  // an extra Gamma_F, a sign per block, which drops out of the max-norm scan.
  const auto& sp = t.base.space;
  std::vector<const CMatrix*> gs;
  std::vector<CMatrix> ms_plus, ms_minus;
  const Complex iu(0.0, 1.0);
  for (int j = 0; j < 4; ++j) {
    gs.push_back(&sp.clifford.gammas[j]);
    ms_plus.push_back(commutator_op(l_coef[j]) + anticommutator_op(iu * theta_coef[j]));
    ms_minus.push_back(commutator_op(l_coef[j]) - anticommutator_op(iu * theta_coef[j]));
  }
  for (int tt = 0; tt < 4; ++tt) {
    gs.push_back(&sp.trig.products[tt]);
    ms_plus.push_back(anticommutator_op(h_coef[tt]) + commutator_op(iu * y_coef[tt]));
    ms_minus.push_back(anticommutator_op(h_coef[tt]) - commutator_op(iu * y_coef[tt]));
  }

  std::vector<CMatrix> real_basis = algebra_basis(sp.algebra);
  std::vector<AlgebraElement> basis;
  basis.reserve(2 * real_basis.size());
  for (const auto& b : real_basis) {
    basis.push_back(split_element(b, sp.algebra, tol));
    basis.push_back(split_element(iu * b, sp.algebra, tol));
  }

  double worst = 0.0;
  std::vector<CMatrix> inner(gs.size()), outer(gs.size());
  for (const auto& a : basis) {
    for (int block = 0; block < 2; ++block) {
      const auto& ms = (block == 0) ? ms_plus : ms_minus;
      const CMatrix la = left_mult_op(block == 0 ? a.value : a.bar());
      for (std::size_t i = 0; i < gs.size(); ++i) inner[i] = commutator(ms[i], la);
      for (const auto& b : basis) {
        const CMatrix rb = right_mult_op(block == 0 ? b.bar() : b.value);
        for (std::size_t i = 0; i < gs.size(); ++i) outer[i] = commutator(inner[i], rb);
        worst = std::max(worst, gamma_block_max_norm(gs, outer));
      }
    }
  }
  report.first_order.residual = worst;
  report.first_order.pass = worst <= tol.abs_eps;
  return report;
}

}  // namespace ncg
