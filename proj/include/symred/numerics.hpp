#pragma once

// Dense complex kernel shared by every other module: Hermitian eigensolver
// with deterministic phases, SVD rank / nullspace, and the orthonormal real
// chart on Hermitian matrices.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace symred {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat8 = Eigen::Matrix<cd, 8, 8>;
using Vec8 = Eigen::Matrix<cd, 8, 1>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kRankTol = 1e-9;

struct HermitianEigen {
  Eigen::VectorXd values;    // non-increasing
  Eigen::MatrixXcd vectors;  // columns; unitary
};

/// Eigendecomposition H = U diag(values) U^dagger.
///
/// Eigenvalues are sorted non-increasing. Each eigenvector's phase is fixed so
/// that its largest-magnitude component (first one on ties) is real and
/// non-negative. Throws InvalidInput when H is not square or departs from
/// Hermiticity by more than `tol` (absolute, scaled by max(1, |H|)).
HermitianEigen eig_hermitian(const Eigen::MatrixXcd& h, double tol = kHermitianTol);

/// Largest deviation |H(i,j) - conj(H(j,i))|.
double hermiticity_defect(const Eigen::MatrixXcd& h);

/// Numerical rank: number of singular values above rel_tol * sigma_max.
int rank(const Eigen::MatrixXd& a, double rel_tol = kRankTol);

/// Orthonormal basis of ker(A) as columns of an n x k matrix.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_tol = kRankTol);

/// Orthonormal basis of the column span of `cols` (rank cut at rel_tol).
/// Column signs are fixed so the largest-magnitude entry is positive.
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& cols, double rel_tol = kRankTol);

/// Component of each column of `cols` orthogonal to span(basis); basis must be orthonormal.
Eigen::MatrixXd project_out(const Eigen::MatrixXd& cols, const Eigen::MatrixXd& basis);

// ---- Hermitian real chart -------------------------------------------------
//
// Orthonormal (Hilbert-Schmidt, Tr(AB)) basis of d x d Hermitian matrices:
//   E_ii                      i = 0..d-1
//   (E_ij + E_ji)/sqrt 2      i < j, lexicographic
//   i (E_ij - E_ji)/sqrt 2    i < j, lexicographic

/// The d*d chart basis matrices in chart order.
const std::vector<Eigen::MatrixXcd>& hermitian_basis(int d);

/// Chart coordinates of a Hermitian matrix (anti-Hermitian part is ignored).
Eigen::VectorXd to_coords(const Eigen::MatrixXcd& h);

Eigen::MatrixXcd from_coords(const Eigen::VectorXd& c, int d);

/// Hilbert-Schmidt inner product Re Tr(A^dagger B).
double hs_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

template <typename Derived>
Eigen::Matrix<cd, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> commutator(
    const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<Derived>& b) {
  return a * b - b * a;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// exp(-i H t) for Hermitian H via eig_hermitian.
Eigen::MatrixXcd unitary_propagator(const Eigen::MatrixXcd& h, double t);

}  // namespace symred
