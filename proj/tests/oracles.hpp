#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the library routine it is meant to check.

#include "symred/dynamics.hpp"

#include <Eigen/SVD>

#include <random>

namespace oracle {

using symred::cd;
using symred::Mat2;
using symred::Mat8;
using symred::Vec8;

/// Marginal of qubit k (1-based) by sandwiching the projector between basis
/// states of the other two qubits.
inline Mat2 marginal(const Vec8& v, int k) {
  const Vec8 u = v / v.norm();
  const Mat8 rho = u * u.adjoint();
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int r = 0; r < 4; ++r) {
        // r enumerates the other two bits in order.
        const int hi = r >> 1, lo = r & 1;
        auto idx = [&](int bit) {
          if (k == 1) return 4 * bit + 2 * hi + lo;
          if (k == 2) return 4 * hi + 2 * bit + lo;
          return 4 * hi + 2 * lo + bit;
        };
        out(a, b) += rho(idx(a), idx(b));
      }
    }
  }
  return out;
}

/// tau = 4 |c^2 - 4 det A det B| for psi = |0>A + |1>B, c = det(A+B) - det A - det B.
inline double tangle(const Vec8& v) {
  const Vec8 u = v / v.norm();
  Mat2 a, b;
  a << u(0), u(1), u(2), u(3);
  b << u(4), u(5), u(6), u(7);
  const cd da = a.determinant(), db = b.determinant();
  const cd c = (a + b).determinant() - da - db;
  return 4.0 * std::abs(c * c - 4.0 * da * db);
}

inline double expectation_half(const Vec8& v, const Mat8& f) {
  const Vec8 u = v / v.norm();
  return 0.5 * u.dot(f * u).real();
}

inline int svd_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > rel_tol * s(0) ? 1 : 0;
  return r;
}

inline Mat8 random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Mat8 m;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = cd(n(rng), n(rng));
  return 0.5 * (m + m.adjoint());
}

inline Mat8 kron3(const Mat2& a, const Mat2& b, const Mat2& c) {
  Mat8 out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      out(i, j) = a(i >> 2, j >> 2) * b((i >> 1) & 1, (j >> 1) & 1) * c(i & 1, j & 1);
  return out;
}

inline Mat2 sx() { Mat2 m; m << 0, 1, 1, 0; return m; }
inline Mat2 sy() { Mat2 m; m << 0, cd(0, -1), cd(0, 1), 0; return m; }
inline Mat2 sz() { Mat2 m; m << 1, 0, 0, -1; return m; }
inline Mat2 id2() { return Mat2::Identity(); }

/// Weyl normal form of the Haar state for `seed`.
inline symred::StateVector principal_state(std::uint64_t seed) {
  return symred::weyl_normalize(symred::catalog(symred::CatalogName::HaarRandom, seed)).state;
}

}  // namespace oracle
