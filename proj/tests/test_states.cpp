#include "symred/errors.hpp"
#include "symred/states.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace symred;

TEST(States, ZeroVectorRejected) { EXPECT_THROW(StateVector(Vec8::Zero()), InvalidInput); }

TEST(States, CanonicalFixesNormAndPhase) {
  Vec8 v = Vec8::Zero();
  v(1) = cd(0, 2);
  v(5) = cd(1, 1);
  const StateVector c = StateVector(v).canonical();
  EXPECT_NEAR(c.norm(), 1.0, 1e-15);
  EXPECT_EQ(c.amplitudes()(0), cd(0, 0));
  EXPECT_NEAR(c.amplitudes()(1).imag(), 0.0, 1e-15);
  EXPECT_GT(c.amplitudes()(1).real(), 0.0);
}

TEST(States, AmplitudeOrdering) {
  Vec8 v = Vec8::Zero();
  v(6) = 1.0;  // |110>
  const StateVector s(v);
  EXPECT_EQ(s.amplitude(1, 1, 0), cd(1, 0));
  EXPECT_EQ(s.amplitude(0, 1, 1), cd(0, 0));
}

TEST(States, MarginalsMatchOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi = haar_random_state(rng);
    for (int k = 1; k <= 3; ++k) {
      EXPECT_LT((reduce(psi, k) - oracle::marginal(psi.amplitudes(), k)).norm(), 1e-13);
      EXPECT_NEAR(reduce(psi, k).trace().real(), 1.0, 1e-13);
    }
  }
}

TEST(States, ScalingInvariance) {
  const StateVector psi = catalog(CatalogName::HaarRandom, 4);
  const StateVector scaled(Vec8(psi.amplitudes() * cd(-2.5, 0.3)));
  for (int k = 1; k <= 3; ++k) EXPECT_LT((reduce(psi, k) - reduce(scaled, k)).norm(), 1e-14);
}

TEST(States, ReduceRejectsBadIndex) {
  const StateVector psi = catalog(CatalogName::Ghz);
  EXPECT_THROW(reduce(psi, 0), InvalidInput);
  EXPECT_THROW(reduce(psi, 4), InvalidInput);
}

TEST(States, CatalogMarginals) {
  for (int k = 1; k <= 3; ++k) {
    EXPECT_LT((reduce(catalog(CatalogName::Ghz), k) - 0.5 * Mat2::Identity()).norm(), 1e-15);
    Mat2 sep = Mat2::Zero();
    sep(0, 0) = 1.0;
    EXPECT_LT((reduce(catalog(CatalogName::Sep), k) - sep).norm(), 1e-15);
    Mat2 w = Mat2::Zero();
    w(0, 0) = 2.0 / 3.0;
    w(1, 1) = 1.0 / 3.0;
    EXPECT_LT((reduce(catalog(CatalogName::W), k) - w).norm(), 1e-15);
  }
  // BISEP_k: qubit k pure, the other two maximally mixed.
  for (int k = 1; k <= 3; ++k) {
    const StateVector b = catalog("BISEP" + std::to_string(k));
    for (int j = 1; j <= 3; ++j) {
      const double top = eig_hermitian(reduce(b, j)).values(0);
      EXPECT_NEAR(top, j == k ? 1.0 : 0.5, 1e-14);
    }
  }
}

TEST(States, CatalogNames) {
  EXPECT_EQ(parse_catalog_name("GHZ"), CatalogName::Ghz);
  EXPECT_EQ(to_string(CatalogName::Bisep2), "BISEP2");
  EXPECT_THROW(parse_catalog_name("ghz4"), InvalidInput);
}

TEST(States, HaarSeedDeterminism) {
  const StateVector a = catalog(CatalogName::HaarRandom, 42);
  const StateVector b = catalog(CatalogName::HaarRandom, 42);
  const StateVector c = catalog(CatalogName::HaarRandom, 43);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_GT((a.amplitudes() - c.amplitudes()).norm(), 1e-3);
}

TEST(States, LocalUnitariesAreSpecialUnitary) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const LocalUnitary g = random_local_unitary(rng);
    EXPECT_LT(g.defect(), 1e-13);
    EXPECT_NO_THROW(validate(g));
    EXPECT_LT((g.embed() - oracle::kron3(g.g[0], g.g[1], g.g[2])).norm(), 1e-14);
    EXPECT_LT((g.embed() * g.inverse().embed() - Mat8::Identity()).norm(), 1e-13);
  }
  LocalUnitary bad;
  bad.g[1] *= 2.0;
  EXPECT_THROW(validate(bad), InvalidInput);
}

TEST(States, ApplyLocalConjugatesMarginals) {
  std::mt19937_64 rng(12);
  const StateVector psi = haar_random_state(rng);
  const LocalUnitary g = random_local_unitary(rng);
  const StateVector moved = apply_local(g, psi);
  for (int k = 1; k <= 3; ++k) {
    const Mat2 want = g.g[k - 1] * reduce(psi, k) * g.g[k - 1].adjoint();
    EXPECT_LT((reduce(moved, k) - want).norm(), 1e-13);
  }
}

TEST(States, ProjectiveDistanceIgnoresPhase) {
  const StateVector psi = catalog(CatalogName::HaarRandom, 1);
  const StateVector rotated(Vec8(psi.amplitudes() * std::polar(3.0, 1.2)));
  EXPECT_LT(projective_distance(psi, rotated), 1e-14);
  EXPECT_NEAR(projective_distance(catalog(CatalogName::Sep), catalog(CatalogName::Ghz)),
              std::sqrt(2.0 - std::sqrt(2.0)), 1e-14);
}
