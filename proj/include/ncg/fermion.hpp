#pragma once

#include "ncg/fluctuations.hpp"
#include "ncg/numerics.hpp"

namespace ncg {

/// Fermion field on the product Hilbert space, stored in the fixed tensor
/// basis with the internal index fastest: psi is the interleaving of the
/// charge components (chi, xi), each of length 4 n^2.
struct FermionField {
  std::vector<Complex> psi;

  static FermionField from_components(const std::vector<Complex>& chi,
                                      const std::vector<Complex>& xi);
  std::vector<Complex> chi() const;
  std::vector<Complex> xi() const;
};

/// Euclidean fermion action S = (1/2) <J Psi, D Psi>.
Complex fermion_action(const ProductTriple& t, const FermionField& field, const CMatrix& d);

/// Orthonormal basis e_1, J e_1, e_2, J e_2, ... of the product space;
/// vector 2k is exactly J applied to vector 2k-1. Requires J^2 = -1.
/// seed = 0 starts the greedy pairing from coordinate directions; any other
/// seed draws the candidates from a seeded Gaussian stream, producing a
/// different (equally valid) canonical basis.
struct CanonicalBasis {
  CMatrix vectors;  // columns
};

CanonicalBasis canonical_basis(const ProductTriple& t, std::uint64_t seed = 0);

/// The exact fermionic integral: builds A_ab = <J e_a, D e_b> in a canonical
/// basis (complex skew-symmetric in KO-dimension 2), returns the Pfaffian,
/// the principal nonnegative root of det(D), and Z = |Pf(A)|.
/// condition_flag marks near-singular D where Z is dominated by roundoff.
struct FermionIntegral {
  double z = 0.0;
  Complex pfaffian;
  double sqrt_det = 0.0;
  bool condition_flag = false;
};

FermionIntegral fermion_integral(const ProductTriple& t, const CMatrix& d, Tolerance tol = {},
                                 std::uint64_t basis_seed = 0);

/// Field strength F = [D'_M, Theta + Y] + (Theta + Y)^2 on the single-charge
/// block, with its decomposition F = F_Theta + F_Y + {Theta, Y}.
struct FieldStrength {
  CMatrix f;
  CMatrix f_theta;
  CMatrix f_y;
  CMatrix mixing;
};

FieldStrength field_strength(const ProductTriple& t, const FluctuatedDirac& fd);

/// |det(D) - det(D'_M^2 - F)| / max(1, |det(D)|): the determinant identity
/// relating the full operator to the field strength on one charge block.
double det_identity_residual(const ProductTriple& t, const FluctuatedDirac& fd);

}  // namespace ncg
