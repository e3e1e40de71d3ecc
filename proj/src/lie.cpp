#include "symred/lie.hpp"

#include <cmath>

namespace symred {

namespace {

const cd kI(0.0, 1.0);

Mat8 kron_sum(const std::array<Mat2, 3>& blocks) {
  const Eigen::MatrixXcd id = Mat2::Identity();
  Eigen::MatrixXcd out = kron(kron(blocks[0], id), id);
  out += kron(kron(id, blocks[1]), id);
  out += kron(kron(id, id), blocks[2]);
  return out;
}

}  // namespace

LocalAlgebraElement LocalAlgebraElement::operator+(const LocalAlgebraElement& o) const {
  LocalAlgebraElement r;
  for (int k = 0; k < 3; ++k) r.x[k] = x[k] + o.x[k];
  return r;
}

LocalAlgebraElement LocalAlgebraElement::operator*(double s) const {
  LocalAlgebraElement r;
  for (int k = 0; k < 3; ++k) r.x[k] = s * x[k];
  return r;
}

CoadjointElement CoadjointElement::operator+(const CoadjointElement& o) const {
  CoadjointElement r;
  for (int k = 0; k < 3; ++k) r.eta[k] = eta[k] + o.eta[k];
  return r;
}

CoadjointElement CoadjointElement::operator-(const CoadjointElement& o) const {
  CoadjointElement r;
  for (int k = 0; k < 3; ++k) r.eta[k] = eta[k] - o.eta[k];
  return r;
}

CoadjointElement CoadjointElement::operator*(double s) const {
  CoadjointElement r;
  for (int k = 0; k < 3; ++k) r.eta[k] = s * eta[k];
  return r;
}

double CoadjointElement::norm() const {
  double s = 0.0;
  for (const Mat2& m : eta) s += m.squaredNorm();
  return std::sqrt(s);
}

const Mat2& pauli(int a) {
  static const std::array<Mat2, 3> p = [] {
    std::array<Mat2, 3> m;
    m[0] << 0.0, 1.0, 1.0, 0.0;
    m[1] << 0.0, -kI, kI, 0.0;
    m[2] << 1.0, 0.0, 0.0, -1.0;
    return m;
  }();
  return p.at(static_cast<std::size_t>(a));
}

double algebra_defect(const LocalAlgebraElement& x) {
  double worst = 0.0;
  for (const Mat2& m : x.x) {
    worst = std::max(worst, std::abs(m.trace()));
    worst = std::max(worst, (m + m.adjoint()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double coalgebra_defect(const CoadjointElement& xi) {
  double worst = 0.0;
  for (const Mat2& m : xi.eta) {
    worst = std::max(worst, std::abs(m.trace()));
    worst = std::max(worst, (m - m.adjoint()).cwiseAbs().maxCoeff());
  }
  return worst;
}

Mat8 embed(const LocalAlgebraElement& x) { return kron_sum(x.x); }
Mat8 embed(const CoadjointElement& xi) { return kron_sum(xi.eta); }

CoadjointElement to_coadjoint(const LocalAlgebraElement& x) {
  CoadjointElement xi;
  for (int k = 0; k < 3; ++k) xi.eta[k] = kI * x.x[k];
  return xi;
}

LocalAlgebraElement to_algebra(const CoadjointElement& xi) {
  LocalAlgebraElement x;
  for (int k = 0; k < 3; ++k) x.x[k] = -kI * xi.eta[k];
  return x;
}

double pairing(const CoadjointElement& xi, const LocalAlgebraElement& x) {
  cd acc = 0.0;
  for (int k = 0; k < 3; ++k) acc += (xi.eta[k] * x.x[k]).trace();
  return (0.5 * kI * acc).real();
}

double killing(const LocalAlgebraElement& x, const LocalAlgebraElement& y) {
  cd acc = 0.0;
  for (int k = 0; k < 3; ++k) acc += (x.x[k] * y.x[k]).trace();
  return -0.5 * acc.real();
}

LocalAlgebraElement bracket(const LocalAlgebraElement& x, const LocalAlgebraElement& y) {
  LocalAlgebraElement r;
  for (int k = 0; k < 3; ++k) r.x[k] = x.x[k] * y.x[k] - y.x[k] * x.x[k];
  return r;
}

const std::vector<LocalAlgebraElement>& basis_k() {
  static const std::vector<LocalAlgebraElement> b = [] {
    std::vector<LocalAlgebraElement> out;
    for (int k = 0; k < 3; ++k) {
      for (int a = 0; a < 3; ++a) {
        LocalAlgebraElement e;
        e.x[k] = kI * pauli(a);
        out.push_back(e);
      }
    }
    return out;
  }();
  return b;
}

std::vector<LocalAlgebraElement> torus_basis() {
  std::vector<LocalAlgebraElement> out;
  for (int i : kTorusIndices) out.push_back(basis_k()[i]);
  return out;
}

const std::vector<CoadjointElement>& basis_offdiag() {
  static const std::vector<CoadjointElement> b = [] {
    std::vector<CoadjointElement> out;
    for (int k = 0; k < 3; ++k) {
      for (int a = 0; a < 2; ++a) {
        CoadjointElement e;
        e.eta[k] = pauli(a);
        out.push_back(e);
      }
    }
    return out;
  }();
  return b;
}

Mat8 generator(const LocalAlgebraElement& x, const DensityMatrix& rho) {
  const Mat8 eta = kI * embed(x);
  return -kI * commutator(eta, rho.rho);
}

CoadjointElement coadjoint(const LocalUnitary& g, const CoadjointElement& xi) {
  CoadjointElement r;
  for (int k = 0; k < 3; ++k) r.eta[k] = g.g[k] * xi.eta[k] * g.g[k].adjoint();
  return r;
}

LocalAlgebraElement adjoint(const LocalUnitary& g, const LocalAlgebraElement& x) {
  LocalAlgebraElement r;
  for (int k = 0; k < 3; ++k) r.x[k] = g.g[k] * x.x[k] * g.g[k].adjoint();
  return r;
}

}  // namespace symred
