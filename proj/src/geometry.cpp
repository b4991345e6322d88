#include "ncg/geometry.hpp"

#include <cmath>
#include <string>

namespace ncg {

namespace {

const char* tag_name(AlgebraTag t) {
  switch (t) {
    case AlgebraTag::RealMat: return "R";
    case AlgebraTag::QuatMat: return "H";
    case AlgebraTag::ComplexMat: return "C";
  }
  return "?";
}

void check_kind(const AlgebraKind& kind) {
  if (kind.n == 0) raise(ErrorCode::InvalidConfig, "algebra size must be positive");
  if (kind.tag == AlgebraTag::QuatMat && kind.n % 2 != 0)
    raise(ErrorCode::InvalidConfig, "quaternionic algebra needs even n");
}

// Quaternion units embedded in M_2(C): 1, i, j, k.
std::array<CMatrix, 4> quaternion_units() {
  std::array<CMatrix, 4> u;
  for (auto& m : u) m = CMatrix(2, 2);
  u[0](0, 0) = 1.0;
  u[0](1, 1) = 1.0;
  u[1](0, 0) = Complex(0.0, 1.0);
  u[1](1, 1) = Complex(0.0, -1.0);
  u[2](0, 1) = 1.0;
  u[2](1, 0) = -1.0;
  u[3](0, 1) = Complex(0.0, 1.0);
  u[3](1, 0) = Complex(0.0, 1.0);
  return u;
}

}  // namespace

CMatrix symplectic_form(std::size_t n) {
  if (n % 2 != 0) raise(ErrorCode::DimensionMismatch, "symplectic form needs even n");
  CMatrix w(n, n);
  for (std::size_t b = 0; b < n / 2; ++b) {
    w(2 * b, 2 * b + 1) = 1.0;
    w(2 * b + 1, 2 * b) = -1.0;
  }
  return w;
}

CMatrix algebra_conj(const AlgebraKind& kind, const CMatrix& m) {
  check_kind(kind);
  if (m.rows() != kind.n || m.cols() != kind.n)
    raise(ErrorCode::DimensionMismatch, "algebra_conj: matrix is not n x n");
  switch (kind.tag) {
    case AlgebraTag::RealMat:
      return m.conjugate();
    case AlgebraTag::QuatMat: {
      const CMatrix w = symplectic_form(kind.n);
      // Omega^{-1} = -Omega
      return -(w * m.conjugate() * w);
    }
    case AlgebraTag::ComplexMat:
      raise(ErrorCode::UnsupportedAlgebra, "no real form for M_n(C)");
  }
  raise(ErrorCode::UnsupportedAlgebra, "unknown algebra tag");
}

bool algebra_membership(const AlgebraKind& kind, const CMatrix& m, Tolerance tol) {
  check_kind(kind);
  if (m.rows() != kind.n || m.cols() != kind.n)
    raise(ErrorCode::DimensionMismatch, "algebra_membership: matrix is not n x n");
  switch (kind.tag) {
    case AlgebraTag::ComplexMat:
      return true;
    case AlgebraTag::RealMat: {
      double im = 0.0;
      for (const auto& z : m.data()) im = std::max(im, std::abs(z.imag()));
      return im <= tol.abs_eps;
    }
    case AlgebraTag::QuatMat:
      return max_abs_diff(algebra_conj(kind, m), m) <= tol.abs_eps;
  }
  return false;
}

CMatrix project_member(const AlgebraKind& kind, const CMatrix& m) {
  if (kind.tag == AlgebraTag::ComplexMat) return m;
  return 0.5 * (m + algebra_conj(kind, m));
}

std::vector<CMatrix> algebra_basis(const AlgebraKind& kind) {
  check_kind(kind);
  const std::size_t n = kind.n;
  std::vector<CMatrix> basis;
  switch (kind.tag) {
    case AlgebraTag::RealMat:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          CMatrix e(n, n);
          e(i, j) = 1.0;
          basis.push_back(e);
        }
      break;
    case AlgebraTag::QuatMat: {
      const auto units = quaternion_units();
      const std::size_t half = n / 2;
      for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = 0; j < half; ++j)
          for (const auto& u : units) {
            CMatrix e(n, n);
            for (std::size_t a = 0; a < 2; ++a)
              for (std::size_t b = 0; b < 2; ++b) e(2 * i + a, 2 * j + b) = u(a, b);
            basis.push_back(e);
          }
      break;
    }
    case AlgebraTag::ComplexMat:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          CMatrix e(n, n);
          e(i, j) = 1.0;
          basis.push_back(e);
          e(i, j) = Complex(0.0, 1.0);
          basis.push_back(e);
        }
      break;
  }
  return basis;
}

FermionSpace build_fermion_space(const AlgebraKind& kind) {
  check_kind(kind);
  FermionSpace space;
  space.clifford = build_clifford_module(0, 4);
  space.trig = trigamma_products(space.clifford);
  space.algebra = kind;
  space.hilbert_dim = space.clifford.dim * kind.n * kind.n;
  return space;
}

DiracData build_dirac_data(const std::array<CMatrix, 4>& L, const std::array<CMatrix, 4>& H,
                           const FermionSpace& space, Tolerance tol) {
  const std::size_t n = space.algebra.n;
  for (int j = 0; j < 4; ++j) {
    if (L[j].rows() != n || L[j].cols() != n || H[j].rows() != n || H[j].cols() != n)
      raise(ErrorCode::DimensionMismatch, "Dirac data matrices must be n x n");
    if (!algebra_membership(space.algebra, L[j], tol))
      raise(ErrorCode::NotInAlgebra, "L[" + std::to_string(j + 1) + "] is not in " +
                                         tag_name(space.algebra.tag) + " algebra");
    if (!algebra_membership(space.algebra, H[j], tol))
      raise(ErrorCode::NotInAlgebra, "H[" + std::to_string(j + 1) + "] is not in " +
                                         tag_name(space.algebra.tag) + " algebra");
    if (anti_hermiticity_residual(L[j]) > tol.abs_eps)
      raise(ErrorCode::NotAntiHermitian, "L[" + std::to_string(j + 1) + "] is not anti-Hermitian");
    if (hermiticity_residual(H[j]) > tol.abs_eps)
      raise(ErrorCode::NotHermitian, "H[" + std::to_string(j + 1) + "] is not Hermitian");
  }
  return DiracData{L, H};
}

CMatrix left_mult_op(const CMatrix& a) { return kron(a, CMatrix::identity(a.rows())); }

CMatrix right_mult_op(const CMatrix& a) { return kron(CMatrix::identity(a.rows()), a.transpose()); }

CMatrix commutator_op(const CMatrix& a) { return left_mult_op(a) - right_mult_op(a); }

CMatrix anticommutator_op(const CMatrix& a) { return left_mult_op(a) + right_mult_op(a); }

CMatrix transpose_permutation(std::size_t n) {
  CMatrix p(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i * n + j, j * n + i) = 1.0;
  return p;
}

CMatrix assemble_dirac(const MatrixGeometry& geom) {
  const auto& sp = geom.space;
  CMatrix d(sp.hilbert_dim, sp.hilbert_dim);
  for (int j = 0; j < 4; ++j) d += kron(sp.clifford.gammas[j], commutator_op(geom.dirac.L[j]));
  for (int t = 0; t < 4; ++t) d += kron(sp.trig.products[t], anticommutator_op(geom.dirac.H[t]));
  return d;
}

double AxiomReport::max_residual() const {
  double r = hermitian.residual;
  r = std::max(r, reality.residual);
  r = std::max(r, first_order.residual);
  r = std::max(r, grading.residual);
  return r;
}

double gamma_block_max_norm(const std::vector<const CMatrix*>& gs, const std::vector<CMatrix>& xs) {
  if (gs.empty()) return 0.0;
  const std::size_t dv = gs[0]->rows();
  const std::size_t nn = xs[0].rows();
  double result = 0.0;
  CMatrix acc(nn, nn);
  for (std::size_t r = 0; r < dv; ++r)
    for (std::size_t c = 0; c < dv; ++c) {
      bool any = false;
      for (std::size_t i = 0; i < gs.size(); ++i) {
        const Complex g = (*gs[i])(r, c);
        if (g == Complex(0.0, 0.0)) continue;
        if (!any) {
          acc = CMatrix(nn, nn);
          any = true;
        }
        for (std::size_t e = 0; e < acc.size(); ++e) acc.data()[e] += g * xs[i].data()[e];
      }
      if (any) result = std::max(result, acc.max_abs());
    }
  return result;
}

AxiomReport verify_axioms(const MatrixGeometry& geom, Tolerance tol) {
  const auto& sp = geom.space;
  const std::size_t n = sp.algebra.n;
  AxiomReport report;

  const CMatrix d = assemble_dirac(geom);

  report.hermitian.residual = hermiticity_residual(d);
  report.hermitian.pass = report.hermitian.residual <= tol.abs_eps;

  // Reality: J = (K (x) P) conj, so J D J^{-1} has matrix K_M conj(D) K_M*.
  const CMatrix k_m = kron(sp.clifford.conj_k, transpose_permutation(n));
  const double eps_prime = sp.clifford.signs.eps_prime;
  report.reality.residual = max_abs_diff(d, eps_prime * (k_m * d.conjugate() * k_m.adjoint()));
  report.reality.pass = report.reality.residual <= tol.abs_eps;

  const CMatrix gamma_m = kron(sp.clifford.gamma5, CMatrix::identity(n * n));
  report.grading.residual = (d * gamma_m + gamma_m * d).max_abs();
  report.grading.pass = report.grading.residual <= tol.abs_eps;

  // First-order condition over a full basis of A_M x A_M, evaluated on the
  // n^2-dimensional matrix factor: [[D, l(a)], r(b)] = sum_i G_i (x) [[M_i,A],B].
  std::vector<const CMatrix*> gs;
  std::vector<CMatrix> ms;
  for (int j = 0; j < 4; ++j) {
    gs.push_back(&sp.clifford.gammas[j]);
    ms.push_back(commutator_op(geom.dirac.L[j]));
  }
  for (int t = 0; t < 4; ++t) {
    gs.push_back(&sp.trig.products[t]);
    ms.push_back(anticommutator_op(geom.dirac.H[t]));
  }

  const auto basis = algebra_basis(sp.algebra);
  double worst = 0.0;
  std::vector<CMatrix> inner(gs.size());
  std::vector<CMatrix> outer(gs.size());
  for (const auto& a : basis) {
    const CMatrix la = left_mult_op(a);
    for (std::size_t i = 0; i < gs.size(); ++i) inner[i] = commutator(ms[i], la);
    for (const auto& b : basis) {
      const CMatrix rb = right_mult_op(b);
      for (std::size_t i = 0; i < gs.size(); ++i) outer[i] = commutator(inner[i], rb);
      worst = std::max(worst, gamma_block_max_norm(gs, outer));
    }
  }
  report.first_order.residual = worst;
  report.first_order.pass = worst <= tol.abs_eps;
  return report;
}

double GaussianStream::uniform01() {
  // 53-bit mantissa in (0, 1]; avoids log(0) in Box-Muller.
  return (double((eng_() >> 11)) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u = uniform01();
  const double v = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * M_PI * v;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

Complex GaussianStream::next_complex() {
  const double re = next();
  const double im = next();
  return Complex(re, im);
}

MatrixGeometry sample_random_geometry(const AlgebraKind& kind, double scale, std::uint64_t seed) {
  check_kind(kind);
  const FermionSpace space = build_fermion_space(kind);
  const std::size_t n = kind.n;
  GaussianStream g(seed);

  auto raw = [&]() {
    CMatrix m(n, n);
    for (auto& z : m.data()) z = scale * g.next_complex();
    return m;
  };

  DiracData data;
  for (int j = 0; j < 4; ++j) {
    const CMatrix member = project_member(kind, raw());
    data.L[j] = 0.5 * (member - member.adjoint());
  }
  for (int t = 0; t < 4; ++t) {
    const CMatrix member = project_member(kind, raw());
    data.H[t] = 0.5 * (member + member.adjoint());
  }
  return MatrixGeometry{space, data};
}

}  // namespace ncg
