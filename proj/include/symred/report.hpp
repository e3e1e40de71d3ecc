#pragma once

// Machine-readable reports for the command-line front end. Every function is
// a pure function of its inputs, so equal inputs give byte-identical output.

#include "symred/dynamics.hpp"
#include "symred/moment.hpp"
#include "symred/states.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace symred {

/// Where the input state came from; echoed into every report.
struct StateSource {
  std::string kind;                  // "catalog" or "file"
  std::string name;                  // catalog name or path
  std::optional<std::uint64_t> seed;
};

/// {"amplitudes": [[re, im], ... 8 entries]}. Throws InvalidInput.
StateVector state_from_json(const std::string& text);
StateVector state_from_file(const std::string& path);
std::string state_to_json(const StateVector& psi);

/// Exit codes shared by the front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitPrecondition = 2;

struct ReportOutput {
  std::string text;
  int exit_code = kExitOk;
};

/// Full analysis of psi: spectra, moment value, chamber and polytope position,
/// orbit type, and the local model at the Weyl normal form (or the classified
/// reduction error, with exit code 2).
ReportOutput analyze_report(const StateVector& psi, const StateSource& source, const Polytope& polytope);

/// Default generator of the fixed policy: a torus Hermitian sum_k w_k sigma_z^(k).
Mat8 default_fixed_generator();

struct FlowOutput {
  std::string csv;       // one row per recorded sample
  std::string summary;   // JSON
  int exit_code = kExitOk;
};

/// Weyl-normalizes psi, runs the policy, and reports. `halvings` > 0 adds a
/// convergence study at dt, dt/2, ..., dt/2^halvings to the summary.
FlowOutput flow_report(const StateVector& psi, const StateSource& source, const FlowPolicy& policy, int halvings);

/// Header of the trajectory CSV.
std::string trajectory_csv_header();
std::string trajectory_csv(const Trajectory& tr);

struct SampleOutput {
  std::string csv;       // seed,lam1,lam2,lam3,stabilizer_dim,position
  std::string summary;   // JSON, including the facet violation count
  int outside = 0;
};

/// n Haar samples with per-row seeds seed, seed + 1, ...
SampleOutput sample_report(std::uint64_t seed, int n, const Polytope& polytope);

/// Compares two flow summaries: identical keys and strings, numbers equal
/// within rel_tol. Returns a description of the first mismatch, if any.
std::optional<std::string> compare_summaries(const std::string& expected, const std::string& actual,
                                             double rel_tol = 1e-9);

}  // namespace symred
