#pragma once

// Moment map J(psi) = (rho1 - 1/2) + (rho2 - 1/2) + (rho3 - 1/2), its sorted
// invariant (the local spectra), Weyl-chamber normalization, and position
// relative to the moment polytope.

#include "symred/lie.hpp"
#include "symred/states.hpp"

#include <array>
#include <string>
#include <vector>

namespace symred {

using MomentValue = CoadjointElement;

/// Largest eigenvalue of each single-qubit marginal; each in [1/2, 1].
struct SpectraPoint {
  std::array<double, 3> lambda{0.5, 0.5, 0.5};

  /// Point of the positive Weyl chamber: diag(lambda_k - 1/2, 1/2 - lambda_k) per block.
  MomentValue to_chamber() const;
  double max_abs_diff(const SpectraPoint& o) const;
};

MomentValue moment_map(const StateVector& psi);

/// ||J(g.psi) - Ad*_g J(psi)|| (Frobenius over the blocks).
double equivariance_residual(const StateVector& psi, const LocalUnitary& g);

SpectraPoint local_spectra(const StateVector& psi);

struct WeylNormalized {
  StateVector state;  // g.psi, canonical
  LocalUnitary g;
};

/// Rotates every marginal to diag(lambda_k, 1 - lambda_k). Blocks with
/// degenerate spectrum get g_k = identity.
WeylNormalized weyl_normalize(const StateVector& psi);

/// Largest off-diagonal |rho^(k)_{01}| and ordering violation over the three marginals.
double weyl_defect(const StateVector& psi);

/// J_X(psi) = (i/2) Tr(embed(X) rho).
double hamiltonian_J(const StateVector& psi, const LocalAlgebraElement& x);

enum class ChamberPosition { InteriorChamber, Wall };
enum class PolytopePosition { Interior, Boundary, Outside };

std::string to_string(ChamberPosition p);
std::string to_string(PolytopePosition p);

inline constexpr double kChamberGap = 1e-8;

ChamberPosition chamber_position(const SpectraPoint& s, double gap = kChamberGap);

/// Affine inequality coeffs . lambda (sense) rhs.
struct Facet {
  std::array<double, 3> coeffs{};
  double rhs = 0.0;
  enum class Sense { LessEqual, GreaterEqual } sense = Sense::LessEqual;

  /// Signed slack; >= 0 when satisfied.
  double slack(const SpectraPoint& s) const;
};

/// Moment polytope of three qubits in (lambda1, lambda2, lambda3) coordinates,
/// held as a list of facets.
class Polytope {
 public:
  explicit Polytope(std::vector<Facet> facets);

  /// Chamber bounds 1/2 <= lambda_k <= 1 and, for each qubit, the smallest
  /// marginal eigenvalue bounded by the sum of the other two:
  /// -lambda_i + lambda_j + lambda_k <= 1.
  static Polytope three_qubit_default();

  /// JSON array of {"coeffs":[a1,a2,a3],"rhs":b,"sense":"<="|">="}.
  static Polytope from_json(const std::string& text);
  static Polytope from_file(const std::string& path);
  std::string to_json() const;

  const std::vector<Facet>& facets() const { return facets_; }

  /// OUTSIDE if some slack < -gap, BOUNDARY if some |slack| <= gap, else INTERIOR.
  PolytopePosition classify(const SpectraPoint& s, double gap = kChamberGap) const;
  /// Most negative slack (0 if every facet holds).
  double worst_violation(const SpectraPoint& s) const;

 private:
  std::vector<Facet> facets_;
};

}  // namespace symred
