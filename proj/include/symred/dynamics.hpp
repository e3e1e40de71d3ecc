#pragma once

// Reduced Hamiltonian dynamics: quadratic Hamiltonians f = (1/2) Tr(F rho),
// their vector fields and brackets, exact unitary steps, and piecewise flows
// that re-select the generator from the symplectic normal space every step.

#include "symred/moment.hpp"
#include "symred/reduction.hpp"
#include "symred/states.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symred {

/// (1/2) Tr(F rho).
double reduced_hamiltonian(const StateVector& psi, const Mat8& f);

/// -i[F, rho].
TangentVector hamiltonian_vector_field(const StateVector& psi, const Mat8& f);

/// (i/2) Tr(rho [F, G]); the rate of change of g = (1/2) Tr(G rho) along the flow of F.
double poisson_bracket(const StateVector& psi, const Mat8& f, const Mat8& g);

/// Cyclic sum {f,{g,h}} + {g,{h,f}} + {h,{f,g}}, using {g,h} = (1/2) Tr(i[G,H] rho).
double jacobi_residual(const StateVector& psi, const Mat8& f, const Mat8& g, const Mat8& h);

/// exp(-i F dt) psi, exact via the eigendecomposition of F.
StateVector step(const StateVector& psi, const Mat8& f, double dt);

/// 4 |hyperdeterminant| of the amplitude tensor (three-tangle); in [0, 1].
double three_tangle(const StateVector& psi);

enum class PolicyKind { Fixed, NormalDirection };

/// How the Hermitian generator of each step is lifted from the selected
/// normal direction v.
///   MinimalNorm     - A = i[v, rho], the minimal-norm lift.
///   LevelSetAdapted - minimal-norm lift plus the smallest operator commuting
///                     with rho that cancels the second-order moment drift of
///                     exp(-i A t) psi. Same tangent vector, still in V'_x.
enum class LiftRule { MinimalNorm, LevelSetAdapted };

struct FlowPolicy {
  PolicyKind kind = PolicyKind::Fixed;
  Mat8 fixed_generator = Mat8::Zero();  // for Fixed
  int normal_index = 1;                 // 1 or 2, for NormalDirection
  LiftRule lift_rule = LiftRule::LevelSetAdapted;
  double dt = 1e-3;
  double duration = 1.0;
  int record_stride = 1;

  /// Throws InvalidInput for dt <= 0, duration < dt, stride < 1, bad index.
  void validate() const;
  int steps() const;
};

struct TrajectorySample {
  double t = 0.0;
  StateVector state;
  SpectraPoint spectra;
  double moment_drift = 0.0;  // ||J(psi_t) - J(psi_0)||_F
  double tangle = 0.0;
  double hamiltonian = 0.0;   // (1/2) Tr(F rho_t) for the active generator
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  int steps_taken = 0;
  std::optional<std::string> exit_reason;
  double max_norm_defect = 0.0;  // | ||psi_t|| - 1 | before canonicalization
};

inline constexpr double kWallProximity = 1e-6;

/// Second-order corrected lift at psi for tangent vector v (see LiftRule).
Mat8 level_set_adapted_lift(const StateVector& psi, const TangentVector& v);

/// Orthonormal chart basis (64 x 2) of the symplectic normal space at an
/// interior principal point that need not be Weyl normalized: computed at the
/// Weyl normal form h.psi and conjugated back by h^{-1}.
Eigen::MatrixXd normal_frame(const StateVector& psi);

/// Hermitian generator for the tangent vector v at psi under `rule`.
Mat8 generator_for(const StateVector& psi, const TangentVector& v, LiftRule rule);

Trajectory piecewise_flow(const StateVector& psi0, const FlowPolicy& policy);

struct ConservationReport {
  std::string policy;
  double dt = 0.0;
  double duration = 0.0;
  int steps = 0;
  int samples = 0;
  double max_spectra_drift = 0.0;
  double max_moment_drift = 0.0;
  std::optional<double> hamiltonian_drift;  // Fixed policy only
  double drift_constant = 0.0;              // max_spectra_drift / dt
  double tangle_start = 0.0;
  double tangle_end = 0.0;
  double max_norm_defect = 0.0;
  std::optional<std::string> exit_reason;
};

ConservationReport conservation_report(const Trajectory& tr, const FlowPolicy& policy);

struct ConvergencePoint {
  double dt = 0.0;
  double spectra_drift = 0.0;
};

/// Runs the policy at dt, dt/2, ..., dt/2^halvings.
std::vector<ConvergencePoint> convergence_study(const StateVector& psi0, FlowPolicy policy, int halvings);

}  // namespace symred
