#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "ncg/clifford.hpp"
#include "ncg/cmatrix.hpp"

namespace ncg {

enum class AlgebraTag { RealMat, QuatMat, ComplexMat };

/// M_n(R), M_{n/2}(H), or M_n(C), all as real algebras inside M_n(C).
struct AlgebraKind {
  AlgebraTag tag = AlgebraTag::RealMat;
  std::size_t n = 1;
};

/// Block-diagonal standard symplectic form, n even.
CMatrix symplectic_form(std::size_t n);

/// The algebra conjugation fixing the real form: entrywise conjugate for
/// M_n(R), Omega conj(.) Omega^{-1} for M_{n/2}(H).
CMatrix algebra_conj(const AlgebraKind& kind, const CMatrix& m);

bool algebra_membership(const AlgebraKind& kind, const CMatrix& m, Tolerance tol = {});

/// Orthogonal projection of an arbitrary complex matrix onto the real form.
CMatrix project_member(const AlgebraKind& kind, const CMatrix& m);

/// Basis of the algebra as a real vector space (dimension n^2 for R and H,
/// 2n^2 for C).
std::vector<CMatrix> algebra_basis(const AlgebraKind& kind);

/// The pair (L_j, H_jkl) entering the Dirac operator. L anti-Hermitian,
/// H Hermitian, all members of the real algebra; H indexed by the
/// lexicographic triple order of TrigammaBasis.
struct DiracData {
  std::array<CMatrix, 4> L;
  std::array<CMatrix, 4> H;
};

/// Everything except the Dirac operator: the type (0,4) Clifford module, the
/// matrix algebra, and the Hilbert space V (x) M_n(C) of dimension 4 n^2.
struct FermionSpace {
  CliffordModule clifford;
  TrigammaBasis trig;
  AlgebraKind algebra;
  std::size_t hilbert_dim = 0;  // dim V * n^2
};

FermionSpace build_fermion_space(const AlgebraKind& kind);

struct MatrixGeometry {
  FermionSpace space;
  DiracData dirac;
};

/// Validates shapes, Hermiticity classes and algebra membership.
DiracData build_dirac_data(const std::array<CMatrix, 4>& L, const std::array<CMatrix, 4>& H,
                           const FermionSpace& space, Tolerance tol = {});

/// Left/right multiplication on row-major vectorized M_n(C).
CMatrix left_mult_op(const CMatrix& a);   // a (x) I_n
CMatrix right_mult_op(const CMatrix& a);  // I_n (x) a^T
CMatrix commutator_op(const CMatrix& a);
CMatrix anticommutator_op(const CMatrix& a);

/// Permutation P with P vec(m) = vec(m^T); the unitary part of m -> m* is
/// the antilinear map vec(m) -> P conj(vec(m)).
CMatrix transpose_permutation(std::size_t n);

/// Dense Dirac operator sum_j gamma^j (x) [L_j, .] + sum_t gamma^jkl (x) {H_t, .}
/// on V (x) M_n(C), dimension 4 n^2.
CMatrix assemble_dirac(const MatrixGeometry& geom);

/// Max-norm of sum_i G_i (x) X_i assembled block by block over the first
/// (gamma) factor; avoids materializing the full Kronecker sum.
double gamma_block_max_norm(const std::vector<const CMatrix*>& gs, const std::vector<CMatrix>& xs);

struct AxiomCheck {
  bool pass = false;
  double residual = 0.0;
};

struct AxiomReport {
  AxiomCheck hermitian;
  AxiomCheck reality;      // D = eps' J D J^{-1}
  AxiomCheck first_order;  // [[D, l(a)], r(b)] = 0 over an algebra basis
  AxiomCheck grading;      // D Gamma + Gamma D = 0

  bool all_pass() const {
    return hermitian.pass && reality.pass && first_order.pass && grading.pass;
  }
  double max_residual() const;
};

AxiomReport verify_axioms(const MatrixGeometry& geom, Tolerance tol = {});

/// Gaussian-filled L, H projected onto the valid classes; deterministic in
/// seed (Box-Muller over a fixed-width mt19937_64 stream). scale = 0 gives
/// the zero Dirac operator.
MatrixGeometry sample_random_geometry(const AlgebraKind& kind, double scale, std::uint64_t seed);

/// Seeded Gaussian source used by the samplers; exposed for test generators.
/// Box-Muller over raw mt19937_64 words, so streams are identical across
/// platforms for a given seed.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}
  double next();           // standard normal
  Complex next_complex();  // independent N(0,1) real and imaginary parts

 private:
  double uniform01();
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ncg
