#include "symred/states.hpp"

#include "symred/errors.hpp"

#include <cmath>

namespace symred {

StateVector::StateVector(const Vec8& amplitudes) : amps_(amplitudes) {
  const double n = amps_.norm();
  if (!std::isfinite(n) || n == 0.0) {
    throw InvalidInput("state vector must be finite and nonzero");
  }
}

StateVector StateVector::canonical() const {
  Vec8 v = normalized();
  for (int i = 0; i < 8; ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-14) {
      v *= std::conj(v(i)) / mag;
      v(i) = mag;
      break;
    }
  }
  return StateVector(v);
}

DensityMatrix density(const StateVector& psi) {
  const Vec8 v = psi.normalized();
  return {v * v.adjoint()};
}

Mat2 reduce(const StateVector& psi, int k) {
  if (k < 1 || k > 3) throw InvalidInput("reduce: subsystem index must be 1, 2 or 3");
  const Vec8 c = psi.normalized();
  // (rho^(k))_{mn} = sum over the other two indices of C_..m.. conj(C_..n..), i.e.
  // Tr_others |psi><psi|. The conjugate sits on n so that g.psi maps to g rho g^dagger.
  const int shift = 3 - k;  // bit position of qubit k
  Mat2 r = Mat2::Zero();
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      cd acc = 0.0;
      for (int rest = 0; rest < 8; ++rest) {
        if ((rest >> shift) & 1) continue;
        const int im = rest | (m << shift);
        const int in = rest | (n << shift);
        acc += c(im) * std::conj(c(in));
      }
      r(m, n) = acc;
    }
  }
  return r;
}

Mat8 LocalUnitary::embed() const {
  return kron(kron(g[0], g[1]), g[2]);
}

LocalUnitary LocalUnitary::inverse() const {
  LocalUnitary out;
  for (int k = 0; k < 3; ++k) out.g[k] = g[k].adjoint();
  return out;
}

double LocalUnitary::defect() const {
  double worst = 0.0;
  for (const Mat2& m : g) {
    worst = std::max(worst, (m * m.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(m.determinant() - 1.0));
  }
  return worst;
}

void validate(const LocalUnitary& g, double tol) {
  if (g.defect() > tol) throw InvalidInput("local unitary factor is not in SU(2)");
}

StateVector apply_local(const LocalUnitary& g, const StateVector& psi) {
  validate(g);
  return StateVector(Vec8(g.embed() * psi.amplitudes()));
}

Mat2 random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double q[4];
  double n = 0.0;
  do {
    n = 0.0;
    for (double& x : q) {
      x = normal(rng);
      n += x * x;
    }
  } while (n < 1e-12);
  n = std::sqrt(n);
  const cd a(q[0] / n, q[1] / n);
  const cd b(q[2] / n, q[3] / n);
  Mat2 u;
  u << a, -std::conj(b), b, std::conj(a);
  return u;
}

LocalUnitary random_local_unitary(std::mt19937_64& rng) {
  LocalUnitary g;
  for (Mat2& m : g.g) m = random_su2(rng);
  return g;
}

StateVector haar_random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec8 v;
  for (int i = 0; i < 8; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cd(re, im);
  }
  return StateVector(v).canonical();
}

CatalogName parse_catalog_name(std::string_view name) {
  if (name == "SEP") return CatalogName::Sep;
  if (name == "BISEP1") return CatalogName::Bisep1;
  if (name == "BISEP2") return CatalogName::Bisep2;
  if (name == "BISEP3") return CatalogName::Bisep3;
  if (name == "GHZ") return CatalogName::Ghz;
  if (name == "W") return CatalogName::W;
  if (name == "HAAR_RANDOM") return CatalogName::HaarRandom;
  throw InvalidInput("unknown catalog state '" + std::string(name) + "'");
}

std::string to_string(CatalogName name) {
  switch (name) {
    case CatalogName::Sep: return "SEP";
    case CatalogName::Bisep1: return "BISEP1";
    case CatalogName::Bisep2: return "BISEP2";
    case CatalogName::Bisep3: return "BISEP3";
    case CatalogName::Ghz: return "GHZ";
    case CatalogName::W: return "W";
    case CatalogName::HaarRandom: return "HAAR_RANDOM";
  }
  return "UNKNOWN";
}

namespace {

int index_of(int i1, int i2, int i3) { return 4 * i1 + 2 * i2 + i3; }

StateVector bisep(int k) {
  // Qubit k in |0>; the other two in (|00> + |11>)/sqrt2.
  const double r = 1.0 / std::sqrt(2.0);
  Vec8 v = Vec8::Zero();
  for (int b = 0; b < 2; ++b) {
    int bits[3] = {b, b, b};
    bits[k - 1] = 0;
    v(index_of(bits[0], bits[1], bits[2])) = r;
  }
  return StateVector(v);
}

}  // namespace

StateVector catalog(CatalogName name, std::uint64_t seed) {
  Vec8 v = Vec8::Zero();
  switch (name) {
    case CatalogName::Sep:
      v(0) = 1.0;
      return StateVector(v);
    case CatalogName::Bisep1: return bisep(1);
    case CatalogName::Bisep2: return bisep(2);
    case CatalogName::Bisep3: return bisep(3);
    case CatalogName::Ghz:
      v(0) = 1.0 / std::sqrt(2.0);
      v(7) = 1.0 / std::sqrt(2.0);
      return StateVector(v);
    case CatalogName::W: {
      const double r = 1.0 / std::sqrt(3.0);
      v(index_of(0, 0, 1)) = r;
      v(index_of(0, 1, 0)) = r;
      v(index_of(1, 0, 0)) = r;
      return StateVector(v);
    }
    case CatalogName::HaarRandom: {
      std::mt19937_64 rng(seed);
      return haar_random_state(rng);
    }
  }
  throw InvalidInput("unknown catalog state");
}

StateVector catalog(std::string_view name, std::uint64_t seed) {
  return catalog(parse_catalog_name(name), seed);
}

double projective_distance(const StateVector& a, const StateVector& b) {
  const Vec8 u = a.normalized();
  const Vec8 v = b.normalized();
  const cd overlap = v.dot(u);  // <v|u>
  const double mag = std::abs(overlap);
  const cd phase = mag > 0.0 ? overlap / mag : cd(1.0);
  return (u - phase * v).norm();
}

}  // namespace symred
