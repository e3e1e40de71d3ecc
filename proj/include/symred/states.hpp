#pragma once

// Three-qubit pure states: amplitudes C_{i1 i2 i3} with i1 the most
// significant bit, projectors, single-qubit marginals, and the local
// unitary action of SU(2) x SU(2) x SU(2).

#include "symred/numerics.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace symred {

/// Projective tripartite pure state. Amplitudes are stored as given; every
/// physical quantity is computed from the normalized projector, so scaling
/// by any nonzero complex number changes nothing downstream.
class StateVector {
 public:
  StateVector() = default;
  /// Throws InvalidInput for a zero (or non-finite) vector.
  explicit StateVector(const Vec8& amplitudes);

  const Vec8& amplitudes() const { return amps_; }
  cd amplitude(int i1, int i2, int i3) const { return amps_(4 * i1 + 2 * i2 + i3); }
  double norm() const { return amps_.norm(); }

  /// Unit norm, first nonzero amplitude real and positive.
  StateVector canonical() const;
  /// Unit-norm amplitudes (no phase fixing).
  Vec8 normalized() const { return amps_ / amps_.norm(); }

 private:
  Vec8 amps_ = Vec8::Zero();
};

/// rho = |psi><psi| / <psi|psi>.
struct DensityMatrix {
  Mat8 rho;
};

DensityMatrix density(const StateVector& psi);

/// Reduced density matrix of qubit k (1-based).
Mat2 reduce(const StateVector& psi, int k);

/// (g1, g2, g3) in SU(2)^3.
struct LocalUnitary {
  std::array<Mat2, 3> g{Mat2::Identity(), Mat2::Identity(), Mat2::Identity()};

  /// g1 (x) g2 (x) g3.
  Mat8 embed() const;
  LocalUnitary inverse() const;
  /// Worst |g g^dagger - 1| or |det g - 1| over the three factors.
  double defect() const;
};

/// Throws InvalidInput if any factor is not in SU(2) within `tol`.
void validate(const LocalUnitary& g, double tol = 1e-10);

StateVector apply_local(const LocalUnitary& g, const StateVector& psi);

/// Haar-distributed element of SU(2) (unit quaternion from four normals).
Mat2 random_su2(std::mt19937_64& rng);
LocalUnitary random_local_unitary(std::mt19937_64& rng);

/// Uniform (Fubini-Study) random state: 8 complex normals, canonicalized.
StateVector haar_random_state(std::mt19937_64& rng);

enum class CatalogName { Sep, Bisep1, Bisep2, Bisep3, Ghz, W, HaarRandom };

CatalogName parse_catalog_name(std::string_view name);
std::string to_string(CatalogName name);

/// Reference states. BISEP_k is |0> on qubit k times (|00>+|11>)/sqrt2 on
/// the other two. HAAR_RANDOM is deterministic per seed.
StateVector catalog(CatalogName name, std::uint64_t seed = 0);
StateVector catalog(std::string_view name, std::uint64_t seed = 0);

/// min over phases a of ||u - e^{ia} v|| for the normalized vectors u, v.
double projective_distance(const StateVector& a, const StateVector& b);

}  // namespace symred
