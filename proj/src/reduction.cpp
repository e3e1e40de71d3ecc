#include "symred/reduction.hpp"

#include "symred/errors.hpp"

#include <cmath>
#include <sstream>

namespace symred {

namespace {

const cd kI(0.0, 1.0);

Mat8 to_mat8(const Eigen::MatrixXcd& m) { return Mat8(m); }

double max_col_norm(const Eigen::MatrixXd& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) worst = std::max(worst, m.col(j).norm());
  return worst;
}

/// omega(X_M, .) as a linear functional on Hermitian lifts: A -> (i/2) Tr(rho [eta, A]).
double orbit_constraint(const DensityMatrix& rho, const Mat8& eta, const Mat8& a) {
  return symplectic_form_lifts(rho, eta, a);
}

std::vector<Mat8> hermitian_generators(const std::vector<LocalAlgebraElement>& xs) {
  std::vector<Mat8> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(kI * embed(x));
  return out;
}

Eigen::MatrixXd images_of(const DensityMatrix& rho, const std::vector<LocalAlgebraElement>& xs) {
  Eigen::MatrixXd cols(64, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t a = 0; a < xs.size(); ++a) {
    cols.col(static_cast<Eigen::Index>(a)) = to_coords(generator(xs[a], rho));
  }
  return cols;
}

}  // namespace

TangentVector TangentVector::from_coords(const Eigen::VectorXd& c) {
  return {to_mat8(symred::from_coords(c, 8))};
}

double tangency_defect(const DensityMatrix& rho, const TangentVector& v) {
  double d = (rho.rho * v.v + v.v * rho.rho - v.v).norm();
  d = std::max(d, hermiticity_defect(v.v));
  d = std::max(d, std::abs(v.v.trace()));
  return d;
}

Mat8 lift(const DensityMatrix& rho, const TangentVector& v) {
  const Mat8 a = kI * commutator(v.v, rho.rho);
  const double residual = (tangent_image(rho, a).v - v.v).norm();
  const double scale = std::max(1.0, v.v.norm());
  if (residual > kLiftTol * scale) {
    std::ostringstream msg;
    msg << "lift: tangent vector is not in the image of A -> -i[A, rho] (residual " << residual
        << ")";
    throw NotInImage(msg.str(), residual);
  }
  return a;
}

TangentVector tangent_image(const DensityMatrix& rho, const Mat8& a) {
  return {-kI * commutator(a, rho.rho)};
}

double symplectic_form_lifts(const DensityMatrix& rho, const Mat8& a, const Mat8& b) {
  const cd t = (rho.rho * commutator(a, b)).trace();
  return (0.5 * kI * t).real();
}

FormValue symplectic_form(const StateVector& psi, const Mat8& a, const Mat8& b) {
  const DensityMatrix rho = density(psi);
  const Vec8 u = psi.normalized();
  FormValue f;
  f.value = symplectic_form_lifts(rho, a, b);
  const Vec8 au = a * u;
  const Vec8 bu = b * u;
  f.dual = -au.dot(bu).imag();  // -Im <A psi, B psi>
  return f;
}

FormValue symplectic_form(const StateVector& psi, const TangentVector& v, const TangentVector& w) {
  const DensityMatrix rho = density(psi);
  return symplectic_form(psi, lift(rho, v), lift(rho, w));
}

Eigen::MatrixXd tangent_space_basis(const DensityMatrix& rho) {
  // With psi the unit vector of rho and e_1..e_7 an orthonormal basis of its
  // complement, (e psi^+ + psi e^+)/sqrt2 and i(e psi^+ - psi e^+)/sqrt2 are HS-orthonormal.
  const Vec8 psi = eig_hermitian(rho.rho).vectors.col(0);
  const Eigen::HouseholderQR<Vec8> qr(psi);
  const Mat8 q = qr.householderQ() * Mat8::Identity();
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd out(64, 14);
  for (int j = 1; j < 8; ++j) {
    const Mat8 outer = q.col(j) * psi.adjoint();
    out.col(2 * (j - 1)) = to_coords(Mat8(s * (outer + outer.adjoint())));
    out.col(2 * (j - 1) + 1) = to_coords(Mat8(s * cd(0.0, 1.0) * (outer - outer.adjoint())));
  }
  return out;
}

std::vector<TangentVector> Subspace::vectors() const {
  std::vector<TangentVector> out;
  for (Eigen::Index j = 0; j < coords.cols(); ++j) out.push_back(TangentVector::from_coords(coords.col(j)));
  return out;
}

Eigen::MatrixXd orbit_generator_matrix(const DensityMatrix& rho) {
  return images_of(rho, basis_k());
}

Subspace orbit_tangent(const StateVector& psi) {
  return {orthonormal_span(orbit_generator_matrix(density(psi)))};
}

int stabilizer_dimension(const StateVector& psi) {
  return 9 - rank(orbit_generator_matrix(density(psi)));
}

void require_weyl_normalized(const StateVector& psi) {
  const double d = weyl_defect(psi);
  if (d > kWeylTol) {
    std::ostringstream msg;
    msg << "marginals are not diagonal and sorted (defect " << d << "); call weyl_normalize first";
    throw ReductionError(ReductionFailure::NotWeylNormalized, msg.str());
  }
}

LevelSetTangent level_set_tangent(const StateVector& psi) {
  require_weyl_normalized(psi);
  const DensityMatrix rho = density(psi);
  const Eigen::MatrixXd tangent = tangent_space_basis(rho);
  const std::vector<Mat8> etas = hermitian_generators(basis_k());

  std::vector<Mat8> lifts;
  for (Eigen::Index j = 0; j < tangent.cols(); ++j) {
    lifts.push_back(lift(rho, TangentVector::from_coords(tangent.col(j))));
  }
  LevelSetTangent out;
  out.constraint.resize(static_cast<Eigen::Index>(etas.size()), tangent.cols());
  for (std::size_t a = 0; a < etas.size(); ++a) {
    for (std::size_t j = 0; j < lifts.size(); ++j) {
      out.constraint(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j)) =
          orbit_constraint(rho, etas[a], lifts[j]);
    }
  }
  const Eigen::MatrixXd kernel = nullspace(out.constraint);
  out.space.coords = tangent * kernel;

  for (Eigen::Index j = 0; j < out.space.coords.cols(); ++j) {
    const Mat8 a = lift(rho, TangentVector::from_coords(out.space.coords.col(j)));
    for (const Mat8& eta : etas) {
      out.max_constraint_residual =
          std::max(out.max_constraint_residual, std::abs(orbit_constraint(rho, eta, a)));
    }
  }
  return out;
}

Subspace torus_directions(const StateVector& psi) {
  require_weyl_normalized(psi);
  return {orthonormal_span(images_of(density(psi), torus_basis()))};
}

double vprime_residual(const DensityMatrix& rho, const Mat8& a) {
  double worst = 0.0;
  for (const CoadjointElement& e : basis_offdiag()) {
    const cd t = (rho.rho * commutator(embed(e), a)).trace();
    worst = std::max(worst, std::abs(t));
  }
  return worst;
}

VPrimeSpace vprime_solver(const StateVector& psi) {
  require_weyl_normalized(psi);
  const DensityMatrix rho = density(psi);
  const auto& offdiag = basis_offdiag();
  VPrimeSpace out;
  out.constraint.resize(static_cast<Eigen::Index>(offdiag.size()), 64);
  // Tr(rho [eta, A]) = Tr([rho, eta] A) = i Tr(H A) with H = -i[rho, eta] Hermitian,
  // and Tr(H A) is the chart dot product.
  for (std::size_t b = 0; b < offdiag.size(); ++b) {
    const Mat8 eta = embed(offdiag[b]);
    const Mat8 h = -kI * commutator(rho.rho, eta);
    out.constraint.row(static_cast<Eigen::Index>(b)) = to_coords(h).transpose();
  }
  out.constraint_rank = rank(out.constraint);
  out.coords = nullspace(out.constraint);
  for (Eigen::Index j = 0; j < out.coords.cols(); ++j) {
    out.basis.push_back(to_mat8(from_coords(out.coords.col(j), 8)));
    out.max_constraint_residual = std::max(out.max_constraint_residual, vprime_residual(rho, out.basis.back()));
  }
  return out;
}

VPrimeDiagnostic vprime_diagnostic(const StateVector& psi) {
  const DensityMatrix rho = density(psi);
  const VPrimeSpace vp = vprime_solver(psi);
  const LevelSetTangent ls = level_set_tangent(psi);

  Eigen::MatrixXd images(64, vp.dim());
  for (int j = 0; j < vp.dim(); ++j) images.col(j) = to_coords(tangent_image(rho, vp.basis[static_cast<std::size_t>(j)]).v);
  const Eigen::MatrixXd image_span = orthonormal_span(images);

  VPrimeDiagnostic d;
  d.vprime_dim = vp.dim();
  d.vprime_image_dim = static_cast<int>(image_span.cols());
  d.level_set_dim = ls.space.dim();
  for (const TangentVector& v : ls.space.vectors()) {
    d.containment_residual = std::max(d.containment_residual, vprime_residual(rho, lift(rho, v)));
  }
  d.span_residual = max_col_norm(project_out(ls.space.coords, image_span));
  return d;
}

namespace {

void require_interior_principal(const StateVector& psi) {
  require_weyl_normalized(psi);
  const SpectraPoint s = local_spectra(psi);
  if (chamber_position(s) != ChamberPosition::InteriorChamber) {
    std::ostringstream msg;
    msg << "local spectra (" << s.lambda[0] << ", " << s.lambda[1] << ", " << s.lambda[2]
        << ") lie on a wall of the Weyl chamber";
    throw ReductionError(ReductionFailure::OnWall, msg.str());
  }
  const int stab = stabilizer_dimension(psi);
  if (stab != 0) {
    throw ReductionError(ReductionFailure::NotPrincipal,
                         "stabilizer has dimension " + std::to_string(stab));
  }
}

NormalSpace normal_space_from(const StateVector& psi, const LevelSetTangent& ls, const Subspace& torus) {
  const DensityMatrix rho = density(psi);
  NormalSpace ns;
  const Eigen::MatrixXd span = orthonormal_span(project_out(ls.space.coords, torus.coords));
  if (span.cols() != 2) {
    throw ReductionError(ReductionFailure::NotPrincipal,
                         "symplectic normal space has dimension " + std::to_string(span.cols()));
  }
  // The SVD basis of a plane is unstable when its singular values are close;
  // fix the gauge by the chart axis with the largest projection onto the plane.
  Eigen::Index axis;
  span.rowwise().squaredNorm().maxCoeff(&axis);
  const Eigen::Vector2d c = span.row(axis).transpose().normalized();
  ns.coords.resize(64, 2);
  ns.coords.col(0) = span * c;
  ns.coords.col(1) = span * Eigen::Vector2d(-c(1), c(0));
  ns.v1 = TangentVector::from_coords(ns.coords.col(0));
  ns.v2 = TangentVector::from_coords(ns.coords.col(1));
  ns.a1 = lift(rho, ns.v1);
  ns.a2 = lift(rho, ns.v2);
  ns.omega = symplectic_form(psi, ns.a1, ns.a2);
  if (ns.omega.value < 0.0) {
    ns.coords.col(1) *= -1.0;
    ns.v2.v = -ns.v2.v;
    ns.a2 = -ns.a2;
    ns.omega = symplectic_form(psi, ns.a1, ns.a2);
  }
  for (const Mat8& eta : hermitian_generators(basis_k())) {
    ns.orbit_orthogonality = std::max(ns.orbit_orthogonality, std::abs(orbit_constraint(rho, eta, ns.a1)));
    ns.orbit_orthogonality = std::max(ns.orbit_orthogonality, std::abs(orbit_constraint(rho, eta, ns.a2)));
  }
  return ns;
}

}  // namespace

NormalSpace symplectic_normal_space(const StateVector& psi) {
  require_interior_principal(psi);
  return normal_space_from(psi, level_set_tangent(psi), torus_directions(psi));
}

bool LocalModel::principal_dimensions_ok() const {
  return dims.orbit == 9 && dims.level_set == 5 && dims.torus == 3 && dims.normal == 2 &&
         dims.orbit + dims.torus + dims.normal == 14 && tangent_space_dim == 14;
}

LocalModel local_model(const StateVector& psi) {
  require_interior_principal(psi);
  LocalModel m;
  m.base = psi;
  m.spectra = local_spectra(psi);
  m.orbit = orbit_tangent(psi);
  m.torus = torus_directions(psi);
  m.level_set = level_set_tangent(psi);
  m.normal = normal_space_from(psi, m.level_set, m.torus);
  m.tangent_space_dim = static_cast<int>(tangent_space_basis(density(psi)).cols());
  m.dims = {m.orbit.dim(), m.level_set.space.dim(), m.torus.dim(), static_cast<int>(m.normal.coords.cols())};
  m.vprime = vprime_diagnostic(psi);
  m.torus_in_level_set_residual = max_col_norm(project_out(m.torus.coords, m.level_set.space.coords));
  const DensityMatrix rho = density(psi);
  m.vprime_max_residual = std::max(vprime_residual(rho, m.normal.a1), vprime_residual(rho, m.normal.a2));
  return m;
}

std::string OrbitType::to_string() const {
  if (principal()) return "PRINCIPAL";
  return "CONTINUOUS_STABILIZER(" + std::to_string(stabilizer_dim) + ")";
}

OrbitType orbit_type(const StateVector& psi) { return {stabilizer_dimension(psi)}; }

double relative_equilibrium_residual(const StateVector& psi, const Mat8& f) {
  const DensityMatrix rho = density(psi);
  const Eigen::VectorXd v = to_coords(tangent_image(rho, f).v);
  const Eigen::MatrixXd orbit = orthonormal_span(orbit_generator_matrix(rho));
  return (v - orbit * (orbit.transpose() * v)).norm();
}

namespace {

Mat2 to_su2(Mat2 u) {
  const cd det = u.determinant();
  u *= std::sqrt(std::conj(det) / std::abs(det));
  return u;
}

double fidelity(const Vec8& target, const LocalUnitary& g, const Vec8& source) {
  return std::abs(target.dot(g.embed() * source));
}

}  // namespace

OrbitFit fit_orbit(const StateVector& psi, const StateVector& psi0, const LocalUnitary& start) {
  const Vec8 target = psi.normalized();
  const Vec8 source = psi0.normalized();
  LocalUnitary g = start;
  double best = fidelity(target, g, source);
  for (int sweep = 0; sweep < 500; ++sweep) {
    const double before = best;
    for (int k = 0; k < 3; ++k) {
      LocalUnitary others = g;
      others.g[k] = Mat2::Identity();
      const Vec8 moved = others.embed() * source;
      const int shift = 2 - k;
      // <target, g_k moved> = sum_{m,n} (g_k)_{mn} M_{mn} = Tr(g_k M^T).
      Mat2 m = Mat2::Zero();
      for (int rest = 0; rest < 8; ++rest) {
        if ((rest >> shift) & 1) continue;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            m(a, b) += std::conj(target(rest | (a << shift))) * moved(rest | (b << shift));
      }
      // max |Tr(g U S V^dagger)| over unitary g is at g = V U^dagger.
      Eigen::JacobiSVD<Mat2> svd(m.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
      g.g[k] = to_su2(svd.matrixV() * svd.matrixU().adjoint());
    }
    best = fidelity(target, g, source);
    if (best - before < 1e-15) break;
  }
  return {g, projective_distance(psi, StateVector(Vec8(g.embed() * source)))};
}

OrbitFit orbit_distance(const StateVector& psi, const StateVector& psi0) {
  OrbitFit best = fit_orbit(psi, psi0, LocalUnitary{});
  // Both states mapped to Weyl normal form: g = h_psi^{-1} h_psi0.
  const WeylNormalized a = weyl_normalize(psi);
  const WeylNormalized b = weyl_normalize(psi0);
  LocalUnitary start;
  for (int k = 0; k < 3; ++k) start.g[k] = a.g.g[k].adjoint() * b.g.g[k];
  const OrbitFit second = fit_orbit(psi, psi0, start);
  return second.distance < best.distance ? second : best;
}

}  // namespace symred
