#include "ncg/fermion.hpp"

#include <cmath>

namespace ncg {

namespace {

std::vector<Complex> apply_antilinear(const CMatrix& k, const std::vector<Complex>& v) {
  std::vector<Complex> cv(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) cv[i] = std::conj(v[i]);
  return k * cv;
}

}  // namespace

FermionField FermionField::from_components(const std::vector<Complex>& chi,
                                           const std::vector<Complex>& xi) {
  if (chi.size() != xi.size())
    raise(ErrorCode::DimensionMismatch, "fermion components differ in length");
  FermionField f;
  f.psi.resize(2 * chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    f.psi[2 * i] = chi[i];
    f.psi[2 * i + 1] = xi[i];
  }
  return f;
}

std::vector<Complex> FermionField::chi() const {
  std::vector<Complex> c(psi.size() / 2);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = psi[2 * i];
  return c;
}

std::vector<Complex> FermionField::xi() const {
  std::vector<Complex> c(psi.size() / 2);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = psi[2 * i + 1];
  return c;
}

Complex fermion_action(const ProductTriple& t, const FermionField& field, const CMatrix& d) {
  if (field.psi.size() != t.hilbert_dim || d.rows() != t.hilbert_dim)
    raise(ErrorCode::DimensionMismatch, "fermion_action: dimension mismatch");
  const std::vector<Complex> jpsi = apply_antilinear(t.k_total, field.psi);
  const std::vector<Complex> dpsi = d * field.psi;
  Complex s = 0.0;
  for (std::size_t i = 0; i < jpsi.size(); ++i) s += std::conj(jpsi[i]) * dpsi[i];
  return 0.5 * s;
}

CanonicalBasis canonical_basis(const ProductTriple& t, std::uint64_t seed) {
  const std::size_t dim = t.hilbert_dim;
  const CMatrix& k = t.k_total;
  if (max_abs_diff(k * k.conjugate(), -CMatrix::identity(dim)) > 1e-12)
    raise(ErrorCode::StructureError, "canonical basis needs J^2 = -1");

  CanonicalBasis basis;
  basis.vectors = CMatrix(dim, dim);
  GaussianStream rng(seed ? seed : 1);

  std::size_t filled = 0;
  std::size_t next_coord = 0;
  auto candidate = [&]() {
    std::vector<Complex> v(dim);
    if (seed == 0 && next_coord < dim) {
      v[next_coord++] = 1.0;
    } else {
      for (auto& z : v) z = rng.next_complex();
    }
    return v;
  };

  while (filled < dim) {
    std::vector<Complex> v = candidate();
    // Two rounds of Gram-Schmidt against the J-closed span built so far.
    for (int round = 0; round < 2; ++round) {
      for (std::size_t c = 0; c < filled; ++c) {
        Complex overlap = 0.0;
        for (std::size_t i = 0; i < dim; ++i) overlap += std::conj(basis.vectors(i, c)) * v[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= overlap * basis.vectors(i, c);
      }
    }
    double norm2 = 0.0;
    for (const auto& z : v) norm2 += std::norm(z);
    if (norm2 <= 1e-8) continue;  // candidate (nearly) inside the span
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : v) z *= inv;

    const std::vector<Complex> jv = apply_antilinear(k, v);
    for (std::size_t i = 0; i < dim; ++i) {
      basis.vectors(i, filled) = v[i];
      basis.vectors(i, filled + 1) = jv[i];
    }
    filled += 2;
  }
  return basis;
}

FermionIntegral fermion_integral(const ProductTriple& t, const CMatrix& d, Tolerance tol,
                                 std::uint64_t basis_seed) {
  if (d.rows() != t.hilbert_dim || d.cols() != t.hilbert_dim)
    raise(ErrorCode::DimensionMismatch, "fermion_integral: operator has wrong dimension");
  const double scale = std::max(1.0, d.max_abs());
  if (hermiticity_residual(d) > std::max(tol.abs_eps, tol.rel_eps * scale))
    raise(ErrorCode::NotHermitian, "fermion_integral: operator is not Hermitian");
  // KO-2 reality D = J D J^{-1}; its failure breaks skew-symmetry of A.
  if (max_abs_diff(d, t.k_total * d.conjugate() * t.k_total.adjoint()) > 1e-9 * scale)
    raise(ErrorCode::NotSkew, "fermion_integral: operator violates D = J D J^{-1}");

  const CanonicalBasis basis = canonical_basis(t, basis_seed);
  const CMatrix& e = basis.vectors;
  // A = E^T K^dagger D E realizes A_ab = <J e_a, D e_b>.
  const CMatrix a = e.transpose() * (t.k_total.adjoint() * d) * e;
  const double skew_tol = 1e-9 * scale;
  if (skew_residual(a) > skew_tol)
    raise(ErrorCode::NotSkew, "fermion_integral: Gram matrix is not skew-symmetric");

  FermionIntegral out;
  out.pfaffian = pfaffian_skew(a, Tolerance{skew_tol, tol.rel_eps});
  out.z = std::abs(out.pfaffian);

  const Complex det = determinant(d);
  if (det.real() < -1e-9 * std::max(1.0, std::abs(det)))
    raise(ErrorCode::NegativeDeterminant, "fermion_integral: det(D) < 0");
  out.sqrt_det = std::sqrt(std::max(0.0, det.real()));

  // Zero modes are legitimate; flag determinants below the roundoff floor of
  // a |D|_max-scaled operator instead of failing.
  const double dim = double(t.hilbert_dim);
  const double log_floor = dim * std::log(scale) + std::log(1e-12);
  out.condition_flag = (std::abs(det) == 0.0) || (std::log(std::abs(det)) < log_floor);
  return out;
}

FieldStrength field_strength(const ProductTriple& t, const FluctuatedDirac& fd) {
  (void)t;
  FieldStrength fs;
  const CMatrix total = fd.theta_op + fd.y_op;
  fs.f = commutator(fd.manifold, total) + total * total;
  fs.f_theta = commutator(fd.manifold, fd.theta_op) + fd.theta_op * fd.theta_op;
  fs.f_y = commutator(fd.manifold, fd.y_op) + fd.y_op * fd.y_op;
  fs.mixing = anticommutator(fd.theta_op, fd.y_op);
  return fs;
}

double det_identity_residual(const ProductTriple& t, const FluctuatedDirac& fd) {
  const FieldStrength fs = field_strength(t, fd);
  const Complex det_full = determinant(fd.assembled);
  const Complex det_block = determinant(fd.manifold * fd.manifold - fs.f);
  return std::abs(det_full - det_block) / std::max(1.0, std::abs(det_full));
}

}  // namespace ncg
