#include "symred/lie.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace symred;

namespace {

LocalAlgebraElement random_algebra(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  LocalAlgebraElement x;
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 3; ++a) x.x[k] += cd(0, n(rng)) * pauli(a);
  }
  return x;
}

}  // namespace

TEST(Lie, BasisIsOrthonormalUnderKilling) {
  const auto& b = basis_k();
  ASSERT_EQ(b.size(), 9u);
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_LT(algebra_defect(b[i]), 1e-15);
    for (std::size_t j = 0; j < 9; ++j) {
      // -Tr(XY)/2 over all three blocks; i sigma_a gives 1 on the diagonal.
      EXPECT_NEAR(killing(b[i], b[j]), i == j ? 1.0 : 0.0, 1e-15);
    }
  }
}

TEST(Lie, TorusIndicesAreSigmaZSlots) {
  const auto t = torus_basis();
  ASSERT_EQ(t.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT((t[k].x[k] - cd(0, 1) * oracle::sz()).norm(), 1e-15);
  }
}

TEST(Lie, EmbedIsKroneckerSum) {
  std::mt19937_64 rng(3);
  const LocalAlgebraElement x = random_algebra(rng);
  const Mat8 want = oracle::kron3(x.x[0], oracle::id2(), oracle::id2()) +
                    oracle::kron3(oracle::id2(), x.x[1], oracle::id2()) +
                    oracle::kron3(oracle::id2(), oracle::id2(), x.x[2]);
  EXPECT_LT((embed(x) - want).norm(), 1e-14);
}

TEST(Lie, EmbedIsHomomorphism) {
  std::mt19937_64 rng(4);
  const LocalAlgebraElement x = random_algebra(rng), y = random_algebra(rng);
  const Mat8 ex = embed(x), ey = embed(y);
  EXPECT_LT((embed(bracket(x, y)) - (ex * ey - ey * ex)).norm(), 1e-12);
}

TEST(Lie, PairingMatchesTraceFormula) {
  std::mt19937_64 rng(6);
  const LocalAlgebraElement x = random_algebra(rng);
  const CoadjointElement xi = to_coadjoint(random_algebra(rng));
  cd t = 0;
  for (int k = 0; k < 3; ++k) t += (xi.eta[k] * x.x[k]).trace();
  EXPECT_NEAR(pairing(xi, x), (cd(0, 0.5) * t).real(), 1e-14);
  EXPECT_LT(coalgebra_defect(xi), 1e-14);
  EXPECT_LT((embed(to_algebra(to_coadjoint(x))) - embed(x)).norm(), 1e-14);
}

TEST(Lie, CoadjointPreservesPairing) {
  std::mt19937_64 rng(7);
  const LocalUnitary g = random_local_unitary(rng);
  const LocalAlgebraElement x = random_algebra(rng);
  const CoadjointElement xi = to_coadjoint(random_algebra(rng));
  EXPECT_NEAR(pairing(coadjoint(g, xi), adjoint(g, x)), pairing(xi, x), 1e-13);
}

TEST(Lie, GeneratorIsDerivativeOfAction) {
  std::mt19937_64 rng(10);
  const StateVector psi = haar_random_state(rng);
  const LocalAlgebraElement x = random_algebra(rng);
  const DensityMatrix rho = density(psi);
  const double h = 1e-5;
  // exp(tX) rho exp(-tX), central difference in t.
  const Mat8 ex = embed(x);
  const Mat8 up = unitary_propagator(cd(0, 1) * ex, h);    // exp(-i (iX) h) = exp(X h)
  const Mat8 dn = unitary_propagator(cd(0, 1) * ex, -h);
  const Mat8 fd = (up * rho.rho * up.adjoint() - dn * rho.rho * dn.adjoint()) / (2 * h);
  EXPECT_LT((generator(x, rho) - fd).norm(), 1e-8);
}

TEST(Lie, OffdiagBasisHasSixElements) {
  const auto& b = basis_offdiag();
  ASSERT_EQ(b.size(), 6u);
  for (const auto& e : b) {
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(std::abs(e.eta[k](0, 0)), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(e.eta[k](1, 1)), 0.0, 1e-15);
    }
  }
}
