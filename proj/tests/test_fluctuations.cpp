#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ncg/fermion.hpp"
#include "ncg/fluctuations.hpp"
#include "ncg/numerics.hpp"
#include "oracles.hpp"

using namespace ncg;

namespace {

ProductTriple sample_triple(AlgebraTag tag, std::size_t n, std::uint64_t seed,
                            double scale = 1.0) {
  return build_product_triple(sample_random_geometry(AlgebraKind{tag, n}, scale, seed));
}

OneFormGenerators random_generators(GaussianStream& rng, std::size_t n, int count,
                                    bool symmetrize = true) {
  OneFormGenerators gen;
  gen.symmetrize = symmetrize;
  for (int i = 0; i < count; ++i)
    gen.pairs.emplace_back(oracle::random_matrix(rng, n), oracle::random_matrix(rng, n));
  return gen;
}

std::array<CMatrix, 4> zeros4(std::size_t n) {
  std::array<CMatrix, 4> z;
  for (auto& m : z) m = CMatrix(n, n);
  return z;
}

// Dense total fluctuation Omega = omega + J omega J^{-1}, symmetrized the
// same way the coefficient route is.
CMatrix dense_total_fluctuation(const ProductTriple& t, const OneFormGenerators& gen) {
  const CMatrix omega = one_form_operator(t, gen);
  CMatrix total = omega + t.k_total * omega.conjugate() * t.k_total.adjoint();
  if (gen.symmetrize) total = 0.5 * (total + total.adjoint());
  return total;
}

}  // namespace

TEST_CASE("connes_one_form: identity pair gives zero") {
  const ProductTriple t = sample_triple(AlgebraTag::RealMat, 2, 31);
  OneFormGenerators gen;
  gen.pairs.emplace_back(CMatrix::identity(2), CMatrix::identity(2));
  const FluctuationCoefficients c = connes_one_form(t, gen);
  for (int j = 0; j < 4; ++j) {
    CHECK(c.lambda_l[j].max_abs() == 0.0);
    CHECK(c.lambda_h[j].max_abs() == 0.0);
  }
}

TEST_CASE("connes_one_form: unitary pair gives u[.,u^{-1}] coefficients") {
  const ProductTriple t = sample_triple(AlgebraTag::RealMat, 2, 32);
  GaussianStream rng(33);
  const CMatrix u = oracle::random_unitary(rng, 2);
  OneFormGenerators gen;
  gen.symmetrize = false;  // unitary-pair one-forms are Hermitian already
  gen.pairs.emplace_back(u, u.adjoint());
  const FluctuationCoefficients c = connes_one_form(t, gen, Tolerance{1e-9, 1e-8});
  for (int j = 0; j < 4; ++j) {
    CHECK(max_abs_diff(c.lambda_l[j], u * commutator(t.base.dirac.L[j], u.adjoint())) <= 1e-13);
    CHECK(max_abs_diff(c.lambda_h[j], u * commutator(t.base.dirac.H[j], u.adjoint())) <= 1e-13);
  }
}

TEST_CASE("connes_one_form: split reconstruction and Hermiticity classes") {
  for (const AlgebraKind kind :
       {AlgebraKind{AlgebraTag::RealMat, 3}, AlgebraKind{AlgebraTag::QuatMat, 2}}) {
    const ProductTriple t = build_product_triple(sample_random_geometry(kind, 1.0, 34));
    GaussianStream rng(35);
    const FluctuationCoefficients c =
        connes_one_form(t, random_generators(rng, kind.n, 3));
    const Complex iu(0.0, 1.0);
    for (int j = 0; j < 4; ++j) {
      CHECK(max_abs_diff(c.sigma[j] + iu * c.theta[j], c.lambda_l[j]) <= 1e-12);
      CHECK(max_abs_diff(c.x[j] + iu * c.y[j], c.lambda_h[j]) <= 1e-12);
      CHECK(anti_hermiticity_residual(c.sigma[j]) <= 1e-12);
      CHECK(hermiticity_residual(c.theta[j]) <= 1e-12);
      CHECK(hermiticity_residual(c.x[j]) <= 1e-12);
      CHECK(anti_hermiticity_residual(c.y[j]) <= 1e-12);
      CHECK(algebra_membership(kind, c.sigma[j], Tolerance{1e-12, 0}));
      CHECK(algebra_membership(kind, c.theta[j], Tolerance{1e-12, 0}));
    }
  }
}

TEST_CASE("connes_one_form: strict mode rejects non-Hermitian generator lists") {
  const ProductTriple t = sample_triple(AlgebraTag::RealMat, 2, 36);
  GaussianStream rng(37);
  OneFormGenerators gen = random_generators(rng, 2, 1, /*symmetrize=*/false);
  CHECK_THROWS_AS(connes_one_form(t, gen), Error);
  try {
    connes_one_form(t, gen);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitianOneForm);
  }
}

TEST_CASE("total_fluctuation: zero coefficients give the vacuum") {
  const ProductTriple t = sample_triple(AlgebraTag::RealMat, 2, 38);
  FluctuationCoefficients c;
  for (auto* fam : {&c.lambda_l, &c.lambda_h, &c.sigma, &c.theta, &c.x, &c.y}) *fam = zeros4(2);
  CHECK(max_abs_diff(total_fluctuation(t, c).assembled, t.dirac0) == 0.0);
}

TEST_CASE("total_fluctuation matches the dense one-form route") {
  for (const AlgebraKind kind :
       {AlgebraKind{AlgebraTag::RealMat, 2}, AlgebraKind{AlgebraTag::QuatMat, 2}}) {
    const ProductTriple t = build_product_triple(sample_random_geometry(kind, 1.0, 39));
    GaussianStream rng(40);
    const OneFormGenerators gen = random_generators(rng, kind.n, 2);
    const FluctuatedDirac fd = total_fluctuation(t, connes_one_form(t, gen));
    const CMatrix expected = t.dirac0 + dense_total_fluctuation(t, gen);
    CHECK(max_abs_diff(fd.assembled, expected) <= 1e-10);
  }
}

TEST_CASE("real fluctuations are internal-blind") {
  const ProductTriple t = sample_triple(AlgebraTag::RealMat, 2, 41);
  GaussianStream rng(42);
  OneFormGenerators gen;
  for (int i = 0; i < 3; ++i)
    gen.pairs.emplace_back(oracle::random_member(rng, t.base.space.algebra),
                           oracle::random_member(rng, t.base.space.algebra));
  const FluctuationCoefficients c = connes_one_form(t, gen);
  for (int j = 0; j < 4; ++j) {
    CHECK(c.theta[j].max_abs() == 0.0);
    CHECK(c.y[j].max_abs() == 0.0);
  }
  const FluctuatedDirac fd = total_fluctuation(t, c);
  // Omega_R = (Sigma + X) (x) 1_F: equal diagonal internal blocks, zero
  // off-diagonal blocks, exactly.
  const CMatrix omega_r = fd.assembled - t.dirac0;
  const std::size_t half = t.hilbert_dim / 2;
  for (std::size_t a = 0; a < half; ++a)
    for (std::size_t b = 0; b < half; ++b) {
      CHECK(std::abs(omega_r(2 * a, 2 * b + 1)) == 0.0);
      CHECK(std::abs(omega_r(2 * a + 1, 2 * b)) == 0.0);
      CHECK(std::abs(omega_r(2 * a, 2 * b) - omega_r(2 * a + 1, 2 * b + 1)) == 0.0);
    }
  CHECK(max_abs_diff(fd.assembled, kron(fd.manifold, CMatrix::identity(2))) == 0.0);
}

TEST_CASE("zero base coefficients remain zero under fluctuation") {
  MatrixGeometry geom = sample_random_geometry(AlgebraKind{AlgebraTag::RealMat, 2}, 1.0, 43);
  geom.dirac.L[1] = CMatrix(2, 2);  // kill one derivative coefficient
  const ProductTriple t = build_product_triple(geom);
  GaussianStream rng(44);
  const FluctuationCoefficients c = connes_one_form(t, random_generators(rng, 2, 3));
  CHECK(c.sigma[1].max_abs() == 0.0);
  CHECK(c.theta[1].max_abs() == 0.0);
  const FluctuatedDirac fd = total_fluctuation(t, c);
  CHECK(fd.l_prime[1].max_abs() == 0.0);
}

TEST_CASE("imaginary fluctuations carry opposite internal charges") {
  const ProductTriple t = sample_triple(AlgebraTag::RealMat, 2, 45);
  GaussianStream rng(46);
  OneFormGenerators gen;
  for (int i = 0; i < 3; ++i)
    gen.pairs.emplace_back(Complex(0.0, 1.0) * oracle::random_member(rng, t.base.space.algebra),
                           oracle::random_member(rng, t.base.space.algebra));
  const FluctuationCoefficients c = connes_one_form(t, gen);
  for (int j = 0; j < 4; ++j) {
    CHECK(c.sigma[j].max_abs() == 0.0);
    CHECK(c.x[j].max_abs() == 0.0);
  }
  const FluctuatedDirac fd = total_fluctuation(t, c);
  const CMatrix omega_i = fd.assembled - t.dirac0;
  const std::size_t half = t.hilbert_dim / 2;
  double off = 0.0, sum = 0.0;
  for (std::size_t a = 0; a < half; ++a)
    for (std::size_t b = 0; b < half; ++b) {
      off = std::max(off, std::abs(omega_i(2 * a, 2 * b + 1)));
      off = std::max(off, std::abs(omega_i(2 * a + 1, 2 * b)));
      sum = std::max(sum, std::abs(omega_i(2 * a, 2 * b) + omega_i(2 * a + 1, 2 * b + 1)));
    }
  CHECK(off == 0.0);
  CHECK(sum <= 1e-10);
  // D = D_M (x) 1_F + (Theta + Y) (x) Gamma_F.
  const CMatrix expected = kron(fd.manifold, CMatrix::identity(2)) +
                           kron(fd.theta_op + fd.y_op, t.internal.gamma_f);
  CHECK(max_abs_diff(fd.assembled, expected) == 0.0);
}

TEST_CASE("unitary_transform: identity, conjugated coefficients, isospectrality") {
  const ProductTriple t = sample_triple(AlgebraTag::RealMat, 2, 47);
  GaussianStream rng(48);

  CHECK(max_abs_diff(unitary_transform(t, CMatrix::identity(2), t.dirac0), t.dirac0) == 0.0);

  SUBCASE("real unitary conjugates the Dirac data") {
    const CMatrix u = oracle::random_member_unitary(rng, t.base.space.algebra);
    const CMatrix moved = unitary_transform(t, u, t.dirac0, Tolerance{1e-9, 1e-8});
    const Extraction ex = extract_coefficients(t, moved, Tolerance{1e-9, 1e-8});
    for (int j = 0; j < 4; ++j) {
      CHECK(max_abs_diff(ex.fd.l_prime[j], u * t.base.dirac.L[j] * u.adjoint()) <= 1e-9);
      CHECK(max_abs_diff(ex.fd.h_prime[j], u * t.base.dirac.H[j] * u.adjoint()) <= 1e-9);
      CHECK(ex.fd.theta[j].max_abs() <= 1e-10);
      CHECK(ex.fd.y[j].max_abs() <= 1e-10);
    }
  }

  SUBCASE("random U(n) preserves the spectrum") {
    const CMatrix u = oracle::random_unitary(rng, 2);
    const CMatrix moved = unitary_transform(t, u, t.dirac0, Tolerance{1e-9, 1e-8});
    const auto s1 = eig_hermitian(t.dirac0);
    const auto s2 = eig_hermitian(moved, Tolerance{1e-9, 1e-8});
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(std::abs(s1[i] - s2[i]) <= 1e-9);
  }

  SUBCASE("unitary fluctuation equals conjugation") {
    const CMatrix u = oracle::random_unitary(rng, 2);
    OneFormGenerators gen;
    gen.symmetrize = false;
    gen.pairs.emplace_back(u, u.adjoint());
    const FluctuatedDirac fd =
        total_fluctuation(t, connes_one_form(t, gen, Tolerance{1e-9, 1e-8}));
    const CMatrix conj = unitary_transform(t, u, t.dirac0, Tolerance{1e-9, 1e-8});
    CHECK(max_abs_diff(fd.assembled, conj) <= 1e-10);
  }
}

TEST_CASE("infinitesimal_gauge: coefficient map against the dense commutator") {
  for (const AlgebraKind kind :
       {AlgebraKind{AlgebraTag::RealMat, 2}, AlgebraKind{AlgebraTag::QuatMat, 2}}) {
    const ProductTriple t = build_product_triple(sample_random_geometry(kind, 1.0, 49));
    GaussianStream rng(50);
    const FluctuatedDirac fd = total_fluctuation(t, connes_one_form(t, random_generators(rng, kind.n, 2)));
    const CMatrix y = oracle::random_member_hermitian(rng, kind);

    const CoefficientDelta delta = infinitesimal_gauge(t, y, fd);
    const CMatrix ad = adjoint_lie(t, split_element(Complex(0.0, 1.0) * y, kind));
    CHECK(max_abs_diff(delta.assembled, commutator(ad, fd.assembled)) <= 1e-10);
  }
}

TEST_CASE("infinitesimal_gauge: zero element, bad element, finite differences") {
  const ProductTriple t = sample_triple(AlgebraTag::RealMat, 2, 51);
  GaussianStream rng(52);
  const FluctuatedDirac fd = total_fluctuation(t, connes_one_form(t, random_generators(rng, 2, 2)));

  const CoefficientDelta zero = infinitesimal_gauge(t, CMatrix(2, 2), fd);
  CHECK(zero.assembled.max_abs() == 0.0);

  CHECK_THROWS_AS(infinitesimal_gauge(t, oracle::random_member_anti_hermitian(rng, t.base.space.algebra), fd),
                  Error);

  const CMatrix y = oracle::random_member_hermitian(rng, t.base.space.algebra);
  const CoefficientDelta delta = infinitesimal_gauge(t, y, fd);
  double errs[2];
  int slot = 0;
  for (const double step : {1e-3, 1e-4}) {
    const CMatrix u = unitary_exp(Complex(0.0, step) * y);
    const CMatrix fdiff =
        (1.0 / step) * (unitary_transform(t, u, fd.assembled, Tolerance{1e-9, 1e-8}) - fd.assembled);
    errs[slot++] = max_abs_diff(fdiff, delta.assembled);
  }
  const double ratio = errs[0] / errs[1];
  CHECK(ratio >= 8.0);
  CHECK(ratio <= 12.0);
}

TEST_CASE("chiral_rotate: zero, pure X, pure Y, involution") {
  const MatrixGeometry zero_geom =
      sample_random_geometry(AlgebraKind{AlgebraTag::RealMat, 2}, 0.0, 0);
  const ProductTriple t = build_product_triple(zero_geom);
  const std::size_t n = 2;
  GaussianStream rng(53);
  const TrigammaBasis& trig = t.base.space.trig;

  SUBCASE("zero operator stays zero") {
    const FluctuatedDirac vac = vacuum_dirac(t);
    CHECK(chiral_rotate(t, vac).assembled.max_abs() == 0.0);
  }

  SUBCASE("pure X maps to Theta with coefficient eta x on the dual index") {
    for (int tt = 0; tt < 4; ++tt) {
      auto x = zeros4(n);
      x[tt] = oracle::random_member_hermitian(rng, t.base.space.algebra);
      const FluctuatedDirac fd = assemble_from_coefficients(t, zeros4(n), x, zeros4(n), zeros4(n));
      const FluctuatedDirac rot = chiral_rotate(t, fd);
      const int m = trig.dual_index[tt];
      const double eta = trig.eta[tt];
      for (int j = 0; j < 4; ++j) {
        CHECK(rot.l_prime[j].max_abs() <= 1e-12);
        CHECK(rot.h_prime[j].max_abs() <= 1e-12);
        CHECK(rot.y[j].max_abs() <= 1e-12);
        if (j == m - 1) {
          CHECK(max_abs_diff(rot.theta[j], eta * x[tt]) <= 1e-12);
        } else {
          CHECK(rot.theta[j].max_abs() <= 1e-12);
        }
      }
    }
  }

  SUBCASE("pure Y maps to Sigma with coefficient -eta y on the dual index") {
    for (int tt = 0; tt < 4; ++tt) {
      auto y = zeros4(n);
      y[tt] = oracle::random_member_anti_hermitian(rng, t.base.space.algebra);
      const FluctuatedDirac fd = assemble_from_coefficients(t, zeros4(n), zeros4(n), zeros4(n), y);
      const FluctuatedDirac rot = chiral_rotate(t, fd);
      const int m = trig.dual_index[tt];
      const double eta = trig.eta[tt];
      for (int j = 0; j < 4; ++j) {
        CHECK(rot.h_prime[j].max_abs() <= 1e-12);
        CHECK(rot.theta[j].max_abs() <= 1e-12);
        CHECK(rot.y[j].max_abs() <= 1e-12);
        if (j == m - 1) {
          CHECK(max_abs_diff(rot.l_prime[j], -eta * y[tt]) <= 1e-12);
        } else {
          CHECK(rot.l_prime[j].max_abs() <= 1e-12);
        }
      }
    }
  }

  SUBCASE("rotating twice negates a grading-anticommuting operator") {
    const ProductTriple tr = sample_triple(AlgebraTag::RealMat, 2, 54);
    GaussianStream rng2(55);
    const FluctuatedDirac fd =
        total_fluctuation(tr, connes_one_form(tr, random_generators(rng2, 2, 2)));
    const FluctuatedDirac twice = chiral_rotate(tr, chiral_rotate(tr, fd));
    CHECK(max_abs_diff(twice.assembled, -fd.assembled) <= 1e-10);
  }
}

TEST_CASE("extract_coefficients: round trips and span detection") {
  const ProductTriple t = sample_triple(AlgebraTag::QuatMat, 2, 56);
  GaussianStream rng(57);

  SUBCASE("vacuum recovers L, H exactly with zero charged parts") {
    const Extraction ex = extract_coefficients(t, t.dirac0);
    CHECK(ex.residual <= 1e-12);
    for (int j = 0; j < 4; ++j) {
      CHECK(max_abs_diff(ex.fd.l_prime[j], t.base.dirac.L[j]) <= 1e-12);
      CHECK(max_abs_diff(ex.fd.h_prime[j], t.base.dirac.H[j]) <= 1e-12);
      CHECK(ex.fd.theta[j].max_abs() <= 1e-12);
      CHECK(ex.fd.y[j].max_abs() <= 1e-12);
    }
  }

  SUBCASE("assembled fluctuations re-extract") {
    const FluctuatedDirac fd =
        total_fluctuation(t, connes_one_form(t, random_generators(rng, 2, 3)));
    const Extraction ex = extract_coefficients(t, fd.assembled);
    CHECK(ex.residual <= 1e-10);
    for (int j = 0; j < 4; ++j) {
      CHECK(max_abs_diff(ex.fd.l_prime[j], fd.l_prime[j]) <= 1e-10);
      CHECK(max_abs_diff(ex.fd.h_prime[j], fd.h_prime[j]) <= 1e-10);
      CHECK(max_abs_diff(ex.fd.theta[j], fd.theta[j]) <= 1e-10);
      CHECK(max_abs_diff(ex.fd.y[j], fd.y[j]) <= 1e-10);
    }
  }

  SUBCASE("a two-gamma term is flagged NotInSpan") {
    const auto& cl = t.base.space.clifford;
    const CMatrix two_gamma = Complex(0.0, 1.0) * (cl.gammas[0] * cl.gammas[1]);
    const CMatrix h = oracle::random_member_hermitian(rng, t.base.space.algebra);
    const CMatrix injected =
        t.dirac0 + kron(kron(two_gamma, anticommutator_op(h)), CMatrix::identity(2));
    CHECK(hermiticity_residual(injected) <= 1e-12);
    CHECK_THROWS_AS(extract_coefficients(t, injected), Error);
    try {
      extract_coefficients(t, injected);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotInSpan);
    }
  }
}

TEST_CASE("axiom stability of fluctuated operators") {
  for (const AlgebraKind kind :
       {AlgebraKind{AlgebraTag::RealMat, 2}, AlgebraKind{AlgebraTag::QuatMat, 2}}) {
    const ProductTriple t = build_product_triple(sample_random_geometry(kind, 1.0, 58));
    GaussianStream rng(59);
    const FluctuatedDirac fd =
        total_fluctuation(t, connes_one_form(t, random_generators(rng, kind.n, 2)));
    const AxiomReport report =
        verify_product_axioms(t, fd.l_prime, fd.h_prime, fd.theta, fd.y, fd.assembled);
    CHECK(report.all_pass());
    CHECK(report.max_residual() <= 1e-10);
  }
}
