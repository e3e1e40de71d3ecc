#pragma once

// The local Lie algebra k = su(2)+su(2)+su(2), its dual, and how both act on
// operators over the 8-dimensional Hilbert space.
//
// Sign conventions. Elements X of k are anti-Hermitian; the dual k* is
// identified with Hermitian matrices through -i eta = X, i.e. eta = i X.
// The pairing is the Killing-Cartan form <X, Y> = -Tr(XY)/2 applied blockwise,
// so for xi in k* and X in k
//
//     <xi, X> = sum_k -Tr((-i xi_k) X_k)/2 = (i/2) sum_k Tr(xi_k X_k).
//
// With this chart the fundamental vector field of X at rho is
// -i[eta, rho] = [embed(X), rho], and the symplectic form on two tangent
// vectors with Hermitian lifts A, B is (i/2) Tr(rho [A, B]). The anti-Hermitian
// form of the same expression, -(i/2) Tr(rho [X, Y]) with X = -iA, Y = -iB,
// equals (i/2) Tr(rho [A, B]) since [-iA, -iB] = -[A, B]; both derivations land
// on the Hermitian formula used throughout.

#include "symred/numerics.hpp"
#include "symred/states.hpp"

#include <array>
#include <vector>

namespace symred {

/// (X1, X2, X3), each traceless anti-Hermitian.
struct LocalAlgebraElement {
  std::array<Mat2, 3> x{Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};

  LocalAlgebraElement operator+(const LocalAlgebraElement& o) const;
  LocalAlgebraElement operator*(double s) const;
};

/// (eta1, eta2, eta3), each traceless Hermitian; an element of k*.
struct CoadjointElement {
  std::array<Mat2, 3> eta{Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};

  CoadjointElement operator+(const CoadjointElement& o) const;
  CoadjointElement operator-(const CoadjointElement& o) const;
  CoadjointElement operator*(double s) const;
  /// Frobenius norm of the block-diagonal sum.
  double norm() const;
};

/// Pauli matrices sigma_x, sigma_y, sigma_z (a = 0, 1, 2).
const Mat2& pauli(int a);

/// Worst trace / anti-Hermiticity violation across the blocks.
double algebra_defect(const LocalAlgebraElement& x);
double coalgebra_defect(const CoadjointElement& xi);

/// X1 (x) 1 (x) 1 + 1 (x) X2 (x) 1 + 1 (x) 1 (x) X3.
Mat8 embed(const LocalAlgebraElement& x);
/// Same Kronecker sum for Hermitian blocks.
Mat8 embed(const CoadjointElement& xi);

/// Hermitian representative eta = i X, blockwise.
CoadjointElement to_coadjoint(const LocalAlgebraElement& x);
LocalAlgebraElement to_algebra(const CoadjointElement& xi);

/// (i/2) sum_k Tr(xi_k X_k); real by construction.
double pairing(const CoadjointElement& xi, const LocalAlgebraElement& x);

/// Blockwise -Tr(XY)/2.
double killing(const LocalAlgebraElement& x, const LocalAlgebraElement& y);

LocalAlgebraElement bracket(const LocalAlgebraElement& x, const LocalAlgebraElement& y);

/// (i sigma_a on factor k), a in (x, y, z) fastest, factors 1..3: 9 elements.
const std::vector<LocalAlgebraElement>& basis_k();
/// Indices into basis_k() of the i sigma_z slots (the Cartan subalgebra).
inline constexpr std::array<int, 3> kTorusIndices{2, 5, 8};
std::vector<LocalAlgebraElement> torus_basis();

/// sigma_x and sigma_y on each factor: 6 Hermitian elements spanning k* / t*.
const std::vector<CoadjointElement>& basis_offdiag();

/// Fundamental vector field -i[eta, rho] with eta = i embed(X).
Mat8 generator(const LocalAlgebraElement& x, const DensityMatrix& rho);

/// Blockwise g_k xi_k g_k^dagger.
CoadjointElement coadjoint(const LocalUnitary& g, const CoadjointElement& xi);
/// Blockwise g_k X_k g_k^dagger.
LocalAlgebraElement adjoint(const LocalUnitary& g, const LocalAlgebraElement& x);

}  // namespace symred
