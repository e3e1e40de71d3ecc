#include "symred/dynamics.hpp"

#include "symred/errors.hpp"

#include <cmath>
#include <future>

namespace symred {

namespace {

const cd kI(0.0, 1.0);

}  // namespace

double reduced_hamiltonian(const StateVector& psi, const Mat8& f) {
  return 0.5 * (f * density(psi).rho).trace().real();
}

TangentVector hamiltonian_vector_field(const StateVector& psi, const Mat8& f) {
  return tangent_image(density(psi), f);
}

double poisson_bracket(const StateVector& psi, const Mat8& f, const Mat8& g) {
  return symplectic_form_lifts(density(psi), f, g);
}

double jacobi_residual(const StateVector& psi, const Mat8& f, const Mat8& g, const Mat8& h) {
  // {g,h} is again quadratic, with Hermitian generator i[G,H].
  const Mat8 gh = kI * commutator(g, h);
  const Mat8 hf = kI * commutator(h, f);
  const Mat8 fg = kI * commutator(f, g);
  return poisson_bracket(psi, f, gh) + poisson_bracket(psi, g, hf) + poisson_bracket(psi, h, fg);
}

StateVector step(const StateVector& psi, const Mat8& f, double dt) {
  if (dt == 0.0) return psi;
  // Refine unitarity and apply in extended precision so that rounding does
  // not bias the norm over long runs.
  using cl = std::complex<long double>;
  using Mat8L = Eigen::Matrix<cl, 8, 8>;
  const Mat8L u = Mat8(unitary_propagator(f, dt)).cast<cl>();
  const Mat8L polar = 0.5L * u * (3.0L * Mat8L::Identity() - u.adjoint() * u);
  const Eigen::Matrix<cl, 8, 1> out = polar * psi.amplitudes().cast<cl>();
  return StateVector(Vec8(out.cast<cd>()));
}

double three_tangle(const StateVector& psi) {
  const Vec8 a = psi.normalized();
  auto c = [&](int i, int j, int k) { return a(4 * i + 2 * j + k); };
  const cd d1 = c(0, 0, 0) * c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 1) +
                c(0, 0, 1) * c(0, 0, 1) * c(1, 1, 0) * c(1, 1, 0) +
                c(0, 1, 0) * c(0, 1, 0) * c(1, 0, 1) * c(1, 0, 1) +
                c(1, 0, 0) * c(1, 0, 0) * c(0, 1, 1) * c(0, 1, 1);
  const cd d2 = c(0, 0, 0) * c(1, 1, 1) * c(0, 1, 1) * c(1, 0, 0) +
                c(0, 0, 0) * c(1, 1, 1) * c(1, 0, 1) * c(0, 1, 0) +
                c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 0) * c(0, 0, 1) +
                c(0, 1, 1) * c(1, 0, 0) * c(1, 0, 1) * c(0, 1, 0) +
                c(0, 1, 1) * c(1, 0, 0) * c(1, 1, 0) * c(0, 0, 1) +
                c(1, 0, 1) * c(0, 1, 0) * c(1, 1, 0) * c(0, 0, 1);
  const cd d3 = c(0, 0, 0) * c(1, 1, 0) * c(1, 0, 1) * c(0, 1, 1) +
                c(1, 1, 1) * c(0, 0, 1) * c(0, 1, 0) * c(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

void FlowPolicy::validate() const {
  if (!(dt > 0.0)) throw InvalidInput("flow policy: dt must be positive");
  if (!(duration >= dt)) throw InvalidInput("flow policy: duration must be at least dt");
  if (record_stride < 1) throw InvalidInput("flow policy: record stride must be >= 1");
  if (kind == PolicyKind::NormalDirection && normal_index != 1 && normal_index != 2) {
    throw InvalidInput("flow policy: normal index must be 1 or 2");
  }
  if (kind == PolicyKind::Fixed && hermiticity_defect(fixed_generator) > 1e-12) {
    throw InvalidInput("flow policy: fixed generator must be Hermitian");
  }
}

int FlowPolicy::steps() const { return static_cast<int>(std::llround(duration / dt)); }

Mat8 level_set_adapted_lift(const StateVector& psi, const TangentVector& v) {
  const DensityMatrix rho = density(psi);
  const Mat8 a0 = lift(rho, v);
  const Mat8 w = commutator(a0, rho.rho);
  const Mat8 accel = commutator(a0, w);  // [A,[A,rho]]; rho'' = -accel
  const Mat8 id = Mat8::Identity();
  const Mat8 perp = id - rho.rho;

  // With C commuting with rho, [A+C,[A+C,rho]] = accel + [C, w]. Require every
  // moment component of it to vanish: Tr(eta_a [C, w]) = Tr(C [w, eta_a]) = -Tr(eta_a accel).
  // C ranges over the commutant of rho, onto which P(X) = rho X rho + (1-rho) X (1-rho) projects.
  const auto& basis = basis_k();
  Eigen::MatrixXd q(64, static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const Mat8 eta = kI * embed(basis[a]);
    const Mat8 h = commutator(w, eta);
    const Mat8 ph = rho.rho * h * rho.rho + perp * h * perp;
    q.col(static_cast<Eigen::Index>(a)) = to_coords(ph);
    rhs(static_cast<Eigen::Index>(a)) = -(eta * accel).trace().real();
  }
  const Eigen::MatrixXd qt = q.transpose();
  const Eigen::VectorXd c = qt.completeOrthogonalDecomposition().solve(rhs);
  Mat8 corr = Mat8(from_coords(c, 8));
  // Keep the correction exactly in the commutant.
  corr = rho.rho * corr * rho.rho + perp * corr * perp;
  return a0 + corr;
}

Eigen::MatrixXd normal_frame(const StateVector& psi) {
  const WeylNormalized w = weyl_normalize(psi);
  const NormalSpace ns = symplectic_normal_space(w.state);
  const Mat8 h = w.g.embed();
  Eigen::MatrixXd coords(64, 2);
  coords.col(0) = to_coords(Mat8(h.adjoint() * ns.v1.v * h));
  coords.col(1) = to_coords(Mat8(h.adjoint() * ns.v2.v * h));
  return coords;
}

Mat8 generator_for(const StateVector& psi, const TangentVector& v, LiftRule rule) {
  if (rule == LiftRule::LevelSetAdapted) return level_set_adapted_lift(psi, v);
  return lift(density(psi), v);
}

namespace {

/// Rotates/reflects `next` (64 x 2) to best match `prev` (orthogonal Procrustes).
Eigen::MatrixXd align(const Eigen::MatrixXd& next, const Eigen::MatrixXd& prev) {
  const Eigen::Matrix2d m = next.transpose() * prev;
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix2d r = svd.matrixU() * svd.matrixV().transpose();
  return next * r;
}

std::optional<std::string> interior_exit(const StateVector& psi) {
  const SpectraPoint s = local_spectra(psi);
  for (int k = 0; k < 3; ++k) {
    if (s.lambda[k] - 0.5 < kWallProximity) {
      return "wall proximity: lambda" + std::to_string(k + 1) + " within " +
             std::to_string(kWallProximity) + " of 1/2";
    }
  }
  const int stab = stabilizer_dimension(psi);
  if (stab > 0) return "stabilizer rank drop: dimension " + std::to_string(stab);
  return std::nullopt;
}

TrajectorySample make_sample(double t, const StateVector& psi, const MomentValue& j0, const Mat8& f) {
  TrajectorySample s;
  s.t = t;
  s.state = psi.canonical();
  s.spectra = local_spectra(psi);
  s.moment_drift = (moment_map(psi) - j0).norm();
  s.tangle = three_tangle(psi);
  s.hamiltonian = reduced_hamiltonian(psi, f);
  return s;
}

}  // namespace

Trajectory piecewise_flow(const StateVector& psi0, const FlowPolicy& policy) {
  policy.validate();
  if (policy.kind == PolicyKind::NormalDirection) {
    require_weyl_normalized(psi0);
    symplectic_normal_space(psi0);  // raises ON_WALL / NOT_PRINCIPAL
  }
  Trajectory tr;
  const MomentValue j0 = moment_map(psi0);
  const int n = policy.steps();

  // The running state is never renormalized so that norm drift stays observable.
  StateVector psi(psi0.normalized());
  Mat8 f = policy.fixed_generator;
  Eigen::MatrixXd frame;

  auto select = [&]() {
    Eigen::MatrixXd next = normal_frame(psi);
    frame = frame.size() == 0 ? next : align(next, frame);
    const TangentVector v = TangentVector::from_coords(frame.col(policy.normal_index - 1));
    f = generator_for(psi, v, policy.lift_rule);
  };

  if (policy.kind == PolicyKind::NormalDirection) select();
  tr.samples.push_back(make_sample(0.0, psi, j0, f));

  for (int i = 1; i <= n; ++i) {
    psi = step(psi, f, policy.dt);
    tr.max_norm_defect = std::max(tr.max_norm_defect, std::abs(psi.norm() - 1.0));
    tr.steps_taken = i;
    const double t = i * policy.dt;
    if (policy.kind == PolicyKind::NormalDirection) {
      tr.exit_reason = interior_exit(psi);
      if (tr.exit_reason) {
        tr.samples.push_back(make_sample(t, psi, j0, f));
        break;
      }
    }
    const bool record = (i % policy.record_stride == 0) || i == n;
    if (policy.kind == PolicyKind::NormalDirection && i < n) select();
    if (record) tr.samples.push_back(make_sample(t, psi, j0, f));
  }
  return tr;
}

ConservationReport conservation_report(const Trajectory& tr, const FlowPolicy& policy) {
  ConservationReport r;
  if (policy.kind == PolicyKind::Fixed) {
    r.policy = "fixed";
  } else {
    r.policy = "normal" + std::to_string(policy.normal_index);
  }
  r.dt = policy.dt;
  r.duration = policy.duration;
  r.steps = tr.steps_taken;
  r.samples = static_cast<int>(tr.samples.size());
  r.max_norm_defect = tr.max_norm_defect;
  r.exit_reason = tr.exit_reason;
  if (tr.samples.empty()) return r;
  const TrajectorySample& first = tr.samples.front();
  double hdrift = 0.0;
  for (const TrajectorySample& s : tr.samples) {
    r.max_spectra_drift = std::max(r.max_spectra_drift, s.spectra.max_abs_diff(first.spectra));
    r.max_moment_drift = std::max(r.max_moment_drift, s.moment_drift);
    hdrift = std::max(hdrift, std::abs(s.hamiltonian - first.hamiltonian));
  }
  if (policy.kind == PolicyKind::Fixed) r.hamiltonian_drift = hdrift;
  r.drift_constant = r.max_spectra_drift / policy.dt;
  r.tangle_start = first.tangle;
  r.tangle_end = tr.samples.back().tangle;
  return r;
}

std::vector<ConvergencePoint> convergence_study(const StateVector& psi0, FlowPolicy policy, int halvings) {
  if (halvings < 0) throw InvalidInput("convergence study: halvings must be >= 0");
  // Independent trajectories; results are collected in dt order.
  std::vector<std::future<ConvergencePoint>> runs;
  for (int h = 0; h <= halvings; ++h) {
    runs.push_back(std::async(std::launch::async, [psi0, policy]() {
      const Trajectory tr = piecewise_flow(psi0, policy);
      return ConvergencePoint{policy.dt, conservation_report(tr, policy).max_spectra_drift};
    }));
    policy.dt *= 0.5;
    policy.record_stride *= 2;
  }
  std::vector<ConvergencePoint> out;
  for (auto& r : runs) out.push_back(r.get());
  return out;
}

}  // namespace symred
