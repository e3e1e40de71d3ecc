#include "symred/moment.hpp"

#include "symred/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace symred {

MomentValue SpectraPoint::to_chamber() const {
  MomentValue xi;
  for (int k = 0; k < 3; ++k) {
    xi.eta[k] = Mat2::Zero();
    xi.eta[k](0, 0) = lambda[k] - 0.5;
    xi.eta[k](1, 1) = 0.5 - lambda[k];
  }
  return xi;
}

double SpectraPoint::max_abs_diff(const SpectraPoint& o) const {
  double d = 0.0;
  for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(lambda[k] - o.lambda[k]));
  return d;
}

MomentValue moment_map(const StateVector& psi) {
  MomentValue xi;
  for (int k = 0; k < 3; ++k) xi.eta[k] = reduce(psi, k + 1) - 0.5 * Mat2::Identity();
  return xi;
}

double equivariance_residual(const StateVector& psi, const LocalUnitary& g) {
  const MomentValue lhs = moment_map(apply_local(g, psi));
  const MomentValue rhs = coadjoint(g, moment_map(psi));
  return (lhs - rhs).norm();
}

SpectraPoint local_spectra(const StateVector& psi) {
  SpectraPoint s;
  for (int k = 0; k < 3; ++k) s.lambda[k] = eig_hermitian(reduce(psi, k + 1)).values(0);
  return s;
}

WeylNormalized weyl_normalize(const StateVector& psi) {
  LocalUnitary g;
  for (int k = 0; k < 3; ++k) {
    const HermitianEigen e = eig_hermitian(reduce(psi, k + 1));
    if (e.values(0) - e.values(1) <= kChamberGap) {
      g.g[k] = Mat2::Identity();
      continue;
    }
    Mat2 u = e.vectors;  // columns: eigenvectors for lambda, 1 - lambda
    // U^dagger rho U is diagonal and sorted; scale into SU(2).
    const cd det = u.determinant();
    u *= std::sqrt(std::conj(det) / std::abs(det));
    g.g[k] = u.adjoint();
  }
  return {apply_local(g, psi).canonical(), g};
}

double weyl_defect(const StateVector& psi) {
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const Mat2 r = reduce(psi, k);
    worst = std::max(worst, std::abs(r(0, 1)));
    worst = std::max(worst, r(1, 1).real() - r(0, 0).real());
  }
  return worst;
}

double hamiltonian_J(const StateVector& psi, const LocalAlgebraElement& x) {
  const DensityMatrix rho = density(psi);
  const cd t = (embed(x) * rho.rho).trace();
  return (0.5 * cd(0.0, 1.0) * t).real();
}

std::string to_string(ChamberPosition p) {
  return p == ChamberPosition::InteriorChamber ? "INTERIOR_CHAMBER" : "WALL";
}

std::string to_string(PolytopePosition p) {
  switch (p) {
    case PolytopePosition::Interior: return "INTERIOR";
    case PolytopePosition::Boundary: return "BOUNDARY";
    case PolytopePosition::Outside: return "OUTSIDE";
  }
  return "UNKNOWN";
}

ChamberPosition chamber_position(const SpectraPoint& s, double gap) {
  for (double l : s.lambda) {
    if (!(l > 0.5 + gap)) return ChamberPosition::Wall;
  }
  return ChamberPosition::InteriorChamber;
}

double Facet::slack(const SpectraPoint& s) const {
  double lhs = 0.0;
  for (int k = 0; k < 3; ++k) lhs += coeffs[k] * s.lambda[k];
  return sense == Sense::LessEqual ? rhs - lhs : lhs - rhs;
}

Polytope::Polytope(std::vector<Facet> facets) : facets_(std::move(facets)) {
  if (facets_.empty()) throw InvalidInput("polytope needs at least one facet");
}

Polytope Polytope::three_qubit_default() {
  std::vector<Facet> f;
  for (int k = 0; k < 3; ++k) {
    Facet lo;
    lo.coeffs[k] = 1.0;
    lo.rhs = 0.5;
    lo.sense = Facet::Sense::GreaterEqual;
    f.push_back(lo);
    Facet hi;
    hi.coeffs[k] = 1.0;
    hi.rhs = 1.0;
    f.push_back(hi);
  }
  for (int i = 0; i < 3; ++i) {
    Facet t;
    t.coeffs = {1.0, 1.0, 1.0};
    t.coeffs[i] = -1.0;
    t.rhs = 1.0;
    f.push_back(t);
  }
  return Polytope(std::move(f));
}

Polytope Polytope::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("facet config: ") + e.what());
  }
  if (!j.is_array()) throw InvalidInput("facet config: expected a JSON array");
  std::vector<Facet> facets;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("coeffs") || !item.contains("rhs")) {
      throw InvalidInput("facet config: each facet needs coeffs and rhs");
    }
    const auto& c = item.at("coeffs");
    if (!c.is_array() || c.size() != 3) throw InvalidInput("facet config: coeffs must have 3 entries");
    Facet f;
    for (int k = 0; k < 3; ++k) f.coeffs[k] = c.at(k).get<double>();
    f.rhs = item.at("rhs").get<double>();
    const std::string sense = item.value("sense", std::string("<="));
    if (sense == "<=") {
      f.sense = Facet::Sense::LessEqual;
    } else if (sense == ">=") {
      f.sense = Facet::Sense::GreaterEqual;
    } else {
      throw InvalidInput("facet config: sense must be \"<=\" or \">=\"");
    }
    facets.push_back(f);
  }
  return Polytope(std::move(facets));
}

Polytope Polytope::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open facet file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string Polytope::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const Facet& f : facets_) {
    nlohmann::ordered_json item;
    item["coeffs"] = {f.coeffs[0], f.coeffs[1], f.coeffs[2]};
    item["rhs"] = f.rhs;
    item["sense"] = f.sense == Facet::Sense::LessEqual ? "<=" : ">=";
    j.push_back(item);
  }
  return j.dump(2);
}

PolytopePosition Polytope::classify(const SpectraPoint& s, double gap) const {
  bool boundary = false;
  for (const Facet& f : facets_) {
    const double sl = f.slack(s);
    if (sl < -gap) return PolytopePosition::Outside;
    if (sl <= gap) boundary = true;
  }
  return boundary ? PolytopePosition::Boundary : PolytopePosition::Interior;
}

double Polytope::worst_violation(const SpectraPoint& s) const {
  double worst = 0.0;
  for (const Facet& f : facets_) worst = std::min(worst, f.slack(s));
  return worst;
}

}  // namespace symred
