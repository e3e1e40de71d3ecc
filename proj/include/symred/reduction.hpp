#pragma once

// Linear algebra of the reduced space at a point p = rho_psi of CP^7:
// orbit directions k.p, the level-set tangent space (k.p)^omega = ker dJ_p,
// the torus (degeneracy) directions k_xi.p, the space V'_x of Hermitian
// operators A with Tr(rho [eta, A]) = 0 for all off-diagonal eta, and the
// two-dimensional symplectic normal space V_x with its reduced form.
//
// Subspaces of tangent vectors are carried as 64 x k matrices whose columns
// are orthonormal Hermitian-chart coordinates (see numerics.hpp).

#include "symred/lie.hpp"
#include "symred/moment.hpp"
#include "symred/numerics.hpp"
#include "symred/states.hpp"

#include <string>
#include <vector>

namespace symred {

/// Traceless Hermitian v = -i[A, rho], tangent to the pure-state manifold at rho.
struct TangentVector {
  Mat8 v = Mat8::Zero();

  Eigen::VectorXd coords() const { return to_coords(v); }
  static TangentVector from_coords(const Eigen::VectorXd& c);
};

/// ||rho v + v rho - v|| (zero iff v is tangent at rho), plus Hermiticity and trace defects.
double tangency_defect(const DensityMatrix& rho, const TangentVector& v);

inline constexpr double kLiftTol = 1e-10;
inline constexpr double kWeylTol = 1e-10;

/// Minimal Hilbert-Schmidt norm Hermitian A with -i[A, rho] = v.
/// For a rank-one rho every solution differs from A = i[v, rho] by an
/// operator commuting with rho, and that difference is HS-orthogonal to
/// i[v, rho]. Throws NotInImage when the residual exceeds kLiftTol * max(1, |v|).
Mat8 lift(const DensityMatrix& rho, const TangentVector& v);

/// -i[A, rho].
TangentVector tangent_image(const DensityMatrix& rho, const Mat8& a);

/// (i/2) Tr(rho [A, B]) for Hermitian lifts A, B.
double symplectic_form_lifts(const DensityMatrix& rho, const Mat8& a, const Mat8& b);

struct FormValue {
  double value = 0.0;  // (i/2) Tr(rho [A, B])
  double dual = 0.0;   // -Im <A psi, B psi>
  double mismatch() const { return std::abs(value - dual); }
};

/// Evaluates omega on two tangent vectors by both routes (trace with lifts and
/// the lift-free inner product). Lifts are computed when not supplied.
FormValue symplectic_form(const StateVector& psi, const TangentVector& v, const TangentVector& w);
FormValue symplectic_form(const StateVector& psi, const Mat8& a, const Mat8& b);

/// Orthonormal chart basis (64 x 14) of T_p CP^7.
Eigen::MatrixXd tangent_space_basis(const DensityMatrix& rho);

struct Subspace {
  Eigen::MatrixXd coords;  // 64 x dim, orthonormal columns
  int dim() const { return static_cast<int>(coords.cols()); }
  std::vector<TangentVector> vectors() const;
};

/// Images of the 9 basis elements of k under the fundamental vector field.
Eigen::MatrixXd orbit_generator_matrix(const DensityMatrix& rho);
Subspace orbit_tangent(const StateVector& psi);
int stabilizer_dimension(const StateVector& psi);

/// Throws ReductionError(NotWeylNormalized) unless every marginal is diagonal
/// and sorted within kWeylTol.
void require_weyl_normalized(const StateVector& psi);

struct LevelSetTangent {
  Subspace space;                 // (k.p)^omega
  Eigen::MatrixXd constraint;     // 9 x 14 matrix of omega(X_M, t_j)
  double max_constraint_residual = 0.0;
};

/// Tangent vectors omega-orthogonal to every orbit direction (all 9 constraints).
LevelSetTangent level_set_tangent(const StateVector& psi);

/// Images of the three torus generators (i sigma_z slots).
Subspace torus_directions(const StateVector& psi);

struct VPrimeSpace {
  std::vector<Mat8> basis;        // Hermitian, orthonormal in the chart
  Eigen::MatrixXd coords;         // 64 x dim
  Eigen::MatrixXd constraint;     // 6 x 64, rows = coords of -i[rho, eta_b]
  int constraint_rank = 0;
  double max_constraint_residual = 0.0;
  int dim() const { return static_cast<int>(coords.cols()); }
};

/// { A Hermitian : Tr(rho [eta, A]) = 0 for eta in basis_offdiag() }.
VPrimeSpace vprime_solver(const StateVector& psi);

/// max_b |Tr(rho [eta_b, A])| over the six off-diagonal eta.
double vprime_residual(const DensityMatrix& rho, const Mat8& a);

/// Relation between the six-constraint space V'_x and the nine-constraint level set.
struct VPrimeDiagnostic {
  int vprime_dim = 0;          // 58 at principal interior points
  int vprime_image_dim = 0;    // dim {-i[A, rho] : A in V'_x}; 8
  int level_set_dim = 0;       // 5
  double containment_residual = 0.0;  // level-set lifts against the 6 constraints
  double span_residual = 0.0;         // level-set vectors outside the V' image
};

VPrimeDiagnostic vprime_diagnostic(const StateVector& psi);

struct NormalSpace {
  TangentVector v1, v2;
  Mat8 a1, a2;                 // minimal-norm Hermitian lifts, elements of V'_x
  FormValue omega;             // omega(v1, v2); oriented positive
  double orbit_orthogonality = 0.0;  // max |omega(X_M, v_i)| over the 9 generators
  Eigen::MatrixXd coords;      // 64 x 2
};

/// HS-orthogonal complement of k_xi.p inside (k.p)^omega. Requires a Weyl
/// normalized, principal point with interior spectra.
NormalSpace symplectic_normal_space(const StateVector& psi);

struct DimensionRecord {
  int orbit = 0;       // dim k.p
  int level_set = 0;   // dim (k.p)^omega
  int torus = 0;       // dim k_xi.p
  int normal = 0;      // dim V_x
};

struct LocalModel {
  StateVector base;
  SpectraPoint spectra;
  Subspace orbit;
  Subspace torus;
  LevelSetTangent level_set;
  NormalSpace normal;
  DimensionRecord dims;
  VPrimeDiagnostic vprime;
  double torus_in_level_set_residual = 0.0;
  double vprime_max_residual = 0.0;
  int tangent_space_dim = 0;

  /// dims == (9, 5, 3, 2) and 9 + 3 + 2 == 14.
  bool principal_dimensions_ok() const;
};

/// Assembles the local normal model data at a principal interior point.
/// Throws ReductionError (ON_WALL / NOT_PRINCIPAL / NOT_WEYL_NORMALIZED).
LocalModel local_model(const StateVector& psi);

struct OrbitType {
  int stabilizer_dim = 0;
  bool principal() const { return stabilizer_dim == 0; }
  std::string to_string() const;
};

OrbitType orbit_type(const StateVector& psi);

/// Distance of -i[F, rho] from span(k.p) in the chart.
double relative_equilibrium_residual(const StateVector& psi, const Mat8& f);

struct OrbitFit {
  LocalUnitary g;
  double distance = 0.0;  // projective distance between psi and g.psi0
};

/// Local search for the point of K.psi0 closest to psi, starting from `start`.
/// Alternating maximization of |<psi, g.psi0>| over one factor at a time.
OrbitFit fit_orbit(const StateVector& psi, const StateVector& psi0, const LocalUnitary& start);

/// Best fit over the identity start and the Weyl-normal-form start.
OrbitFit orbit_distance(const StateVector& psi, const StateVector& psi0);

}  // namespace symred
