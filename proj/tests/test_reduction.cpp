#include "symred/errors.hpp"
#include "symred/reduction.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace symred;

namespace {

TangentVector random_tangent(const DensityMatrix& rho, std::mt19937_64& rng) {
  return tangent_image(rho, oracle::random_hermitian(rng));
}

}  // namespace

TEST(Reduction, LiftInvertsTangentImage) {
  std::mt19937_64 rng(61);
  const StateVector psi = haar_random_state(rng);
  const DensityMatrix rho = density(psi);
  for (int i = 0; i < 20; ++i) {
    const Mat8 a = oracle::random_hermitian(rng);
    const TangentVector v = tangent_image(rho, a);
    EXPECT_LT(tangency_defect(rho, v), 1e-12);
    const Mat8 l = lift(rho, v);
    EXPECT_LT((tangent_image(rho, l).v - v.v).norm(), 1e-12);
    // Minimal norm: l never exceeds any other lift, in particular a.
    EXPECT_LE(l.norm(), a.norm() + 1e-12);
    // The difference of lifts commutes with rho.
    EXPECT_LT(((a - l) * rho.rho - rho.rho * (a - l)).norm(), 1e-12);
  }
}

TEST(Reduction, LiftRejectsNonTangent) {
  const DensityMatrix rho = density(catalog(CatalogName::HaarRandom, 2));
  TangentVector v;
  v.v = rho.rho;  // normal to the manifold
  EXPECT_THROW(lift(rho, v), NotInImage);
}

TEST(Reduction, FormTraceAndDualAgree) {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 20; ++i) {
    const StateVector psi = haar_random_state(rng);
    const Mat8 a = oracle::random_hermitian(rng), b = oracle::random_hermitian(rng);
    const FormValue f = symplectic_form(psi, a, b);
    EXPECT_LT(f.mismatch(), 1e-10);
    EXPECT_NEAR(symplectic_form(psi, b, a).value, -f.value, 1e-12);
    // The value depends only on the tangent vectors, not on the lifts.
    const DensityMatrix rho = density(psi);
    const FormValue g = symplectic_form(psi, tangent_image(rho, a), tangent_image(rho, b));
    EXPECT_NEAR(g.value, f.value, 1e-10);
  }
}

TEST(Reduction, TangentSpaceBasisOrthonormalAndTangent) {
  const DensityMatrix rho = density(catalog(CatalogName::HaarRandom, 63));
  const Eigen::MatrixXd t = tangent_space_basis(rho);
  ASSERT_EQ(t.cols(), 14);
  EXPECT_LT((t.transpose() * t - Eigen::MatrixXd::Identity(14, 14)).norm(), 1e-12);
  for (Eigen::Index j = 0; j < 14; ++j) {
    EXPECT_LT(tangency_defect(rho, TangentVector::from_coords(t.col(j))), 1e-12);
  }
  // Every image of a Hermitian operator lies in the span.
  std::mt19937_64 rng(1);
  const Eigen::VectorXd v = random_tangent(rho, rng).coords();
  EXPECT_LT((v - t * (t.transpose() * v)).norm(), 1e-12);
}

TEST(Reduction, CatalogStabilizerDimensions) {
  EXPECT_EQ(stabilizer_dimension(catalog(CatalogName::HaarRandom, 5)), 0);
  EXPECT_EQ(stabilizer_dimension(catalog(CatalogName::W)), 1);
  EXPECT_EQ(stabilizer_dimension(catalog(CatalogName::Ghz)), 2);
  EXPECT_EQ(stabilizer_dimension(catalog(CatalogName::Sep)), 3);
  EXPECT_EQ(orbit_type(catalog(CatalogName::Ghz)).to_string(), "CONTINUOUS_STABILIZER(2)");
  EXPECT_EQ(orbit_type(catalog(CatalogName::HaarRandom, 5)).to_string(), "PRINCIPAL");
  // Rank oracle.
  for (auto name : {CatalogName::W, CatalogName::Ghz, CatalogName::Sep}) {
    const StateVector psi = catalog(name);
    EXPECT_EQ(9 - stabilizer_dimension(psi), oracle::svd_rank(orbit_generator_matrix(density(psi))));
  }
}

TEST(Reduction, RequiresWeylNormalForm) {
  const StateVector psi = catalog(CatalogName::HaarRandom, 7);
  try {
    level_set_tangent(psi);
    FAIL() << "expected NOT_WEYL_NORMALIZED";
  } catch (const ReductionError& e) {
    EXPECT_EQ(e.kind(), ReductionFailure::NotWeylNormalized);
  }
  EXPECT_NO_THROW(level_set_tangent(oracle::principal_state(7)));
}

TEST(Reduction, FailureClassification) {
  auto kind_of = [](const StateVector& psi) {
    try {
      local_model(weyl_normalize(psi).state);
    } catch (const ReductionError& e) {
      return std::string(to_string(e.kind()));
    }
    return std::string("OK");
  };
  EXPECT_EQ(kind_of(catalog(CatalogName::Ghz)), "ON_WALL");
  EXPECT_EQ(kind_of(catalog(CatalogName::Sep)), "NOT_PRINCIPAL");
  EXPECT_EQ(kind_of(catalog(CatalogName::Bisep1)), "ON_WALL");
  EXPECT_EQ(kind_of(catalog(CatalogName::HaarRandom, 3)), "OK");
}

TEST(Reduction, LocalModelDimensionsAndResiduals) {
  const LocalModel m = local_model(oracle::principal_state(3));
  EXPECT_TRUE(m.principal_dimensions_ok());
  EXPECT_EQ(m.dims.orbit, 9);
  EXPECT_EQ(m.dims.level_set, 5);
  EXPECT_EQ(m.dims.torus, 3);
  EXPECT_EQ(m.dims.normal, 2);
  EXPECT_LT(m.level_set.max_constraint_residual, 1e-10);
  EXPECT_LT(m.torus_in_level_set_residual, 1e-10);
  EXPECT_LT(m.normal.orbit_orthogonality, 1e-10);
  EXPECT_GT(m.normal.omega.value, 1e-10);
  EXPECT_LT(m.normal.omega.mismatch(), 1e-10);
  EXPECT_LT(m.vprime_max_residual, 1e-10);
}

TEST(Reduction, LevelSetIsKernelOfMomentDerivative) {
  const StateVector psi = oracle::principal_state(9);
  const LevelSetTangent ls = level_set_tangent(psi);
  const DensityMatrix rho = density(psi);
  // dJ(v) is the block marginal of v; finite difference along the curve exp(-iAt) psi.
  for (const TangentVector& v : ls.space.vectors()) {
    const Mat8 a = lift(rho, v);
    const double h = 1e-5;
    const StateVector up(Vec8(unitary_propagator(a, h) * psi.normalized()));
    const StateVector dn(Vec8(unitary_propagator(a, -h) * psi.normalized()));
    const double d = ((moment_map(up) - moment_map(dn)) * (0.5 / h)).norm();
    EXPECT_LT(d, 1e-8);
  }
}

TEST(Reduction, VPrimeSpace) {
  const StateVector psi = oracle::principal_state(11);
  const VPrimeSpace vp = vprime_solver(psi);
  EXPECT_EQ(vp.dim(), 58);
  EXPECT_EQ(vp.constraint_rank, 6);
  EXPECT_LT(vp.max_constraint_residual, 1e-10);
  const VPrimeDiagnostic d = vprime_diagnostic(psi);
  EXPECT_EQ(d.vprime_image_dim, 8);
  EXPECT_EQ(d.level_set_dim, 5);
  EXPECT_LT(d.containment_residual, 1e-10);
  EXPECT_LT(d.span_residual, 1e-10);
}

TEST(Reduction, RelativeEquilibriumResidual) {
  const StateVector sep = catalog(CatalogName::Sep);
  EXPECT_LT(relative_equilibrium_residual(sep, oracle::kron3(oracle::sx(), oracle::sz(), oracle::sz())), 1e-10);
  const StateVector haar = catalog(CatalogName::HaarRandom, 4);
  std::mt19937_64 rng(3);
  EXPECT_GT(relative_equilibrium_residual(haar, oracle::random_hermitian(rng)), 1e-3);
}

TEST(Reduction, OrbitDistance) {
  std::mt19937_64 rng(71);
  const StateVector psi0 = catalog(CatalogName::HaarRandom, 71);
  const StateVector moved = apply_local(random_local_unitary(rng), psi0);
  EXPECT_LT(orbit_distance(moved, psi0).distance, 1e-6);
  EXPECT_GT(orbit_distance(catalog(CatalogName::Ghz), catalog(CatalogName::W)).distance, 1e-2);
}
