#include "symred/report.hpp"

#include "symred/errors.hpp"
#include "symred/reduction.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace symred {

namespace {

using ojson = nlohmann::ordered_json;

ojson complex_json(cd z) { return ojson::array({z.real(), z.imag()}); }

ojson amplitudes_json(const StateVector& psi) {
  ojson a = ojson::array();
  for (int i = 0; i < 8; ++i) a.push_back(complex_json(psi.amplitudes()(i)));
  return a;
}

ojson mat2_json(const Mat2& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < 2; ++i) rows.push_back(ojson::array({complex_json(m(i, 0)), complex_json(m(i, 1))}));
  return rows;
}

ojson moment_json(const MomentValue& xi) {
  ojson blocks = ojson::array();
  for (const Mat2& b : xi.eta) blocks.push_back(mat2_json(b));
  return blocks;
}

ojson vector_json(const Eigen::VectorXd& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ojson spectra_json(const SpectraPoint& s) { return ojson::array({s.lambda[0], s.lambda[1], s.lambda[2]}); }

ojson source_json(const StateSource& src) {
  ojson j;
  j["kind"] = src.kind;
  j["name"] = src.name;
  if (src.seed) {
    j["seed"] = *src.seed;
  } else {
    j["seed"] = nullptr;
  }
  return j;
}

ojson tolerances_json() {
  ojson t;
  t["hermitian"] = kHermitianTol;
  t["rank_relative"] = kRankTol;
  t["lift"] = kLiftTol;
  t["weyl"] = kWeylTol;
  t["chamber_gap"] = kChamberGap;
  t["wall_proximity"] = kWallProximity;
  return t;
}

ojson form_json(const FormValue& f) {
  ojson j;
  j["trace"] = f.value;
  j["dual"] = f.dual;
  j["mismatch"] = f.mismatch();
  return j;
}

ojson local_model_json(const LocalModel& m) {
  ojson j;
  j["dimensions"] = {{"orbit", m.dims.orbit},
                     {"level_set", m.dims.level_set},
                     {"torus", m.dims.torus},
                     {"normal", m.dims.normal},
                     {"tangent_space", m.tangent_space_dim}};
  j["principal_dimensions_ok"] = m.principal_dimensions_ok();
  ojson normal;
  normal["v1"] = vector_json(m.normal.v1.coords());
  normal["v2"] = vector_json(m.normal.v2.coords());
  normal["a1"] = vector_json(to_coords(m.normal.a1));
  normal["a2"] = vector_json(to_coords(m.normal.a2));
  normal["omega"] = form_json(m.normal.omega);
  normal["orbit_orthogonality"] = m.normal.orbit_orthogonality;
  j["normal_space"] = normal;
  ojson vp;
  vp["dim"] = m.vprime.vprime_dim;
  vp["image_dim"] = m.vprime.vprime_image_dim;
  vp["level_set_dim"] = m.vprime.level_set_dim;
  vp["containment_residual"] = m.vprime.containment_residual;
  vp["span_residual"] = m.vprime.span_residual;
  vp["normal_lift_residual"] = m.vprime_max_residual;
  j["vprime"] = vp;
  j["residuals"] = {{"level_set_constraint", m.level_set.max_constraint_residual},
                    {"torus_in_level_set", m.torus_in_level_set_residual}};
  return j;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

StateVector state_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("state file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("amplitudes")) throw InvalidInput("state file: missing \"amplitudes\"");
  const auto& a = j.at("amplitudes");
  if (!a.is_array() || a.size() != 8) throw InvalidInput("state file: \"amplitudes\" must have 8 entries");
  Vec8 v;
  for (int i = 0; i < 8; ++i) {
    const auto& z = a.at(static_cast<std::size_t>(i));
    if (!z.is_array() || z.size() != 2 || !z.at(0).is_number() || !z.at(1).is_number()) {
      throw InvalidInput("state file: amplitude " + std::to_string(i) + " must be [re, im]");
    }
    v(i) = cd(z.at(0).get<double>(), z.at(1).get<double>());
  }
  return StateVector(v);
}

StateVector state_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open state file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return state_from_json(ss.str());
}

std::string state_to_json(const StateVector& psi) {
  ojson j;
  j["amplitudes"] = amplitudes_json(psi);
  return j.dump(2) + "\n";
}

ReportOutput analyze_report(const StateVector& psi, const StateSource& source, const Polytope& polytope) {
  ReportOutput out;
  ojson j;
  j["command"] = "analyze";
  j["source"] = source_json(source);
  j["tolerances"] = tolerances_json();
  const StateVector canon = psi.canonical();
  j["state"] = amplitudes_json(canon);

  const SpectraPoint spectra = local_spectra(psi);
  j["spectra"] = spectra_json(spectra);
  j["moment"] = moment_json(moment_map(psi));
  j["chamber_position"] = to_string(chamber_position(spectra));
  j["polytope"] = {{"position", to_string(polytope.classify(spectra))},
                   {"worst_violation", polytope.worst_violation(spectra)},
                   {"facets", polytope.facets().size()}};
  const OrbitType ot = orbit_type(psi);
  j["stabilizer_dim"] = ot.stabilizer_dim;
  j["orbit_dim"] = 9 - ot.stabilizer_dim;
  j["orbit_type"] = ot.to_string();
  j["three_tangle"] = three_tangle(psi);

  const WeylNormalized w = weyl_normalize(psi);
  ojson weyl;
  weyl["state"] = amplitudes_json(w.state);
  weyl["defect"] = weyl_defect(w.state);
  weyl["g"] = {mat2_json(w.g.g[0]), mat2_json(w.g.g[1]), mat2_json(w.g.g[2])};
  weyl["moment"] = moment_json(moment_map(w.state));
  weyl["chamber_residual"] = (moment_map(w.state) - spectra.to_chamber()).norm();
  j["weyl_normal_form"] = weyl;

  try {
    j["local_model"] = local_model_json(local_model(w.state));
    j["reduction_error"] = nullptr;
  } catch (const ReductionError& e) {
    j["local_model"] = nullptr;
    j["reduction_error"] = {{"kind", to_string(e.kind())}, {"detail", e.what()}};
    out.exit_code = kExitPrecondition;
  }
  j["exit_code"] = out.exit_code;
  out.text = j.dump(2) + "\n";
  return out;
}

Mat8 default_fixed_generator() {
  CoadjointElement h;
  const double weights[3] = {1.0, 0.7, 0.4};
  for (int k = 0; k < 3; ++k) h.eta[k] = weights[k] * pauli(2);
  return embed(h);
}

std::string trajectory_csv_header() {
  std::string h = "t";
  for (int i = 0; i < 8; ++i) h += ",re" + std::to_string(i) + ",im" + std::to_string(i);
  return h + ",lam1,lam2,lam3,moment_drift,tangle,hamiltonian\n";
}

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = trajectory_csv_header();
  for (const TrajectorySample& s : tr.samples) {
    out += fmt(s.t);
    for (int i = 0; i < 8; ++i) {
      out += "," + fmt(s.state.amplitudes()(i).real()) + "," + fmt(s.state.amplitudes()(i).imag());
    }
    for (double l : s.spectra.lambda) out += "," + fmt(l);
    out += "," + fmt(s.moment_drift) + "," + fmt(s.tangle) + "," + fmt(s.hamiltonian) + "\n";
  }
  return out;
}

FlowOutput flow_report(const StateVector& psi, const StateSource& source, const FlowPolicy& policy, int halvings) {
  FlowOutput out;
  ojson j;
  j["command"] = "flow";
  j["source"] = source_json(source);
  j["tolerances"] = tolerances_json();
  const WeylNormalized w = weyl_normalize(psi);
  j["initial_state"] = amplitudes_json(w.state);
  j["lift_rule"] = policy.lift_rule == LiftRule::LevelSetAdapted ? "level_set_adapted" : "minimal_norm";
  try {
    const Trajectory tr = piecewise_flow(w.state, policy);
    const ConservationReport r = conservation_report(tr, policy);
    out.csv = trajectory_csv(tr);
    j["policy"] = r.policy;
    j["dt"] = r.dt;
    j["duration"] = r.duration;
    j["record_stride"] = policy.record_stride;
    j["steps"] = r.steps;
    j["samples"] = r.samples;
    j["max_spectra_drift"] = r.max_spectra_drift;
    j["max_moment_drift"] = r.max_moment_drift;
    if (r.hamiltonian_drift) {
      j["hamiltonian_drift"] = *r.hamiltonian_drift;
    } else {
      j["hamiltonian_drift"] = nullptr;
    }
    j["drift_constant"] = r.drift_constant;
    j["tangle_start"] = r.tangle_start;
    j["tangle_end"] = r.tangle_end;
    j["tangle_change"] = std::abs(r.tangle_end - r.tangle_start);
    j["max_norm_defect"] = r.max_norm_defect;
    if (r.exit_reason) {
      j["exit_reason"] = *r.exit_reason;
    } else {
      j["exit_reason"] = nullptr;
    }
    ojson conv = ojson::array();
    if (halvings > 0) {
      FlowPolicy p = policy;
      for (const ConvergencePoint& c : convergence_study(w.state, p, halvings)) {
        conv.push_back({{"dt", c.dt}, {"spectra_drift", c.spectra_drift}});
      }
    }
    j["convergence"] = conv;
    j["reduction_error"] = nullptr;
  } catch (const ReductionError& e) {
    out.csv = trajectory_csv_header();
    j["reduction_error"] = {{"kind", to_string(e.kind())}, {"detail", e.what()}};
    out.exit_code = kExitPrecondition;
  }
  j["exit_code"] = out.exit_code;
  out.summary = j.dump(2) + "\n";
  return out;
}

SampleOutput sample_report(std::uint64_t seed, int n, const Polytope& polytope) {
  if (n <= 0) throw InvalidInput("sample count must be positive");
  SampleOutput out;
  out.csv = "seed,lam1,lam2,lam3,stabilizer_dim,position\n";
  int interior = 0, boundary = 0;
  double worst = 0.0;
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const StateVector psi = catalog(CatalogName::HaarRandom, s);
    const SpectraPoint sp = local_spectra(psi);
    const PolytopePosition pos = polytope.classify(sp);
    const int stab = stabilizer_dimension(psi);
    if (pos == PolytopePosition::Outside) ++out.outside;
    if (pos == PolytopePosition::Interior) ++interior;
    if (pos == PolytopePosition::Boundary) ++boundary;
    worst = std::min(worst, polytope.worst_violation(sp));
    for (double l : sp.lambda) {
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
    out.csv += std::to_string(s) + "," + fmt(sp.lambda[0]) + "," + fmt(sp.lambda[1]) + "," + fmt(sp.lambda[2]) +
               "," + std::to_string(stab) + "," + to_string(pos) + "\n";
  }
  ojson j;
  j["command"] = "sample";
  j["seed"] = seed;
  j["samples"] = n;
  j["tolerances"] = tolerances_json();
  j["facets"] = nlohmann::ordered_json::parse(polytope.to_json());
  j["counts"] = {{"INTERIOR", interior}, {"BOUNDARY", boundary}, {"OUTSIDE", out.outside}};
  j["facet_violations"] = out.outside;
  j["worst_violation"] = worst;
  j["lambda_range"] = {lo, hi};
  out.summary = j.dump(2) + "\n";
  return out;
}

namespace {

std::optional<std::string> compare(const nlohmann::json& a, const nlohmann::json& b, const std::string& path,
                                   double rel_tol) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    if (std::abs(x - y) > rel_tol * std::max({1e-300, std::abs(x), std::abs(y)}) && std::abs(x - y) > 1e-300) {
      return path + ": expected " + fmt(x) + ", got " + fmt(y);
    }
    return std::nullopt;
  }
  if (a.type() != b.type()) return path + ": type differs";
  if (a.is_object()) {
    if (a.size() != b.size()) return path + ": key count differs";
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return path + "." + it.key() + ": missing";
      if (auto m = compare(it.value(), b.at(it.key()), path + "." + it.key(), rel_tol)) return m;
    }
    return std::nullopt;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return path + ": length differs";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (auto m = compare(a.at(i), b.at(i), path + "[" + std::to_string(i) + "]", rel_tol)) return m;
    }
    return std::nullopt;
  }
  if (a != b) return path + ": value differs";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> compare_summaries(const std::string& expected, const std::string& actual,
                                             double rel_tol) {
  nlohmann::json a, b;
  try {
    a = nlohmann::json::parse(expected);
    b = nlohmann::json::parse(actual);
  } catch (const nlohmann::json::exception& e) {
    return std::string("unparseable summary: ") + e.what();
  }
  return compare(a, b, "$", rel_tol);
}

}  // namespace symred
