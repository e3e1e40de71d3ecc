#include "symred/numerics.hpp"

#include "symred/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace symred {

double hermiticity_defect(const Eigen::MatrixXcd& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen eig_hermitian(const Eigen::MatrixXcd& h, double tol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw InvalidInput("eig_hermitian: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double defect = hermiticity_defect(h);
  if (defect > tol * scale) {
    throw InvalidInput("eig_hermitian: matrix is not Hermitian (defect " + std::to_string(defect) +
                       ")");
  }
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("eig_hermitian: eigensolver did not converge");
  }
  const Eigen::Index n = h.rows();
  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = solver.eigenvalues()(n - 1 - j);
    Eigen::VectorXcd col = solver.eigenvectors().col(n - 1 - j);
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      // Strict comparison with a small slack keeps the first component on near-ties.
      if (std::abs(col(i)) > best + 1e-14) {
        best = std::abs(col(i));
        pivot = i;
      }
    }
    if (best > 0.0) col *= std::conj(col(pivot)) / best;
    out.vectors.col(j) = col;
  }
  return out;
}

namespace {

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
}

int count_above(const Eigen::VectorXd& s, double rel_tol) {
  if (s.size() == 0) return 0;
  const double smax = s.maxCoeff();
  if (!(smax > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * smax) ++r;
  }
  return r;
}

void fix_column_signs(Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (std::abs(m(i, j)) > best + 1e-14) {
        best = std::abs(m(i, j));
        pivot = i;
      }
    }
    if (m(pivot, j) < 0.0) m.col(j) *= -1.0;
  }
}

}  // namespace

int rank(const Eigen::MatrixXd& a, double rel_tol) {
  return count_above(singular_values(a), rel_tol);
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const int r = count_above(svd.singularValues(), rel_tol);
  Eigen::MatrixXd basis = svd.matrixV().rightCols(n - r);
  fix_column_signs(basis);
  return basis;
}

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& cols, double rel_tol) {
  if (cols.cols() == 0) return Eigen::MatrixXd(cols.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  const int r = count_above(svd.singularValues(), rel_tol);
  Eigen::MatrixXd basis = svd.matrixU().leftCols(r);
  fix_column_signs(basis);
  return basis;
}

Eigen::MatrixXd project_out(const Eigen::MatrixXd& cols, const Eigen::MatrixXd& basis) {
  if (basis.cols() == 0) return cols;
  return cols - basis * (basis.transpose() * cols);
}

const std::vector<Eigen::MatrixXcd>& hermitian_basis(int d) {
  static std::mutex mu;
  static std::map<int, std::vector<Eigen::MatrixXcd>> cache;
  if (d <= 0) throw InvalidInput("hermitian_basis: dimension must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;

  std::vector<Eigen::MatrixXcd> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
      e(i, j) = r;
      e(j, i) = r;
      basis.push_back(e);
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
      e(i, j) = cd(0.0, r);
      e(j, i) = cd(0.0, -r);
      basis.push_back(e);
    }
  }
  return cache.emplace(d, std::move(basis)).first->second;
}

Eigen::VectorXd to_coords(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw InvalidInput("to_coords: matrix must be square");
  const int d = static_cast<int>(h.rows());
  const double s = std::sqrt(2.0);
  Eigen::VectorXd c(d * d);
  int k = 0;
  for (int i = 0; i < d; ++i) c(k++) = h(i, i).real();
  // Tr(B h) with B = (E_ij + E_ji)/sqrt2 is Re(h_ij + h_ji)/sqrt2 for Hermitian h.
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) c(k++) = (h(i, j).real() + h(j, i).real()) / s;
  // Tr(B h) with B = i(E_ij - E_ji)/sqrt2 is sqrt2 Im h_ij for Hermitian h.
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) c(k++) = (h(i, j).imag() - h(j, i).imag()) / s;
  return c;
}

Eigen::MatrixXcd from_coords(const Eigen::VectorXd& c, int d) {
  if (c.size() != static_cast<Eigen::Index>(d) * d) {
    throw InvalidInput("from_coords: coordinate count does not match dimension");
  }
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) h(i, i) = c(k++);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      h(i, j) += r * c(k);
      h(j, i) += r * c(k);
      ++k;
    }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      h(i, j) += cd(0.0, r * c(k));
      h(j, i) += cd(0.0, -r * c(k));
      ++k;
    }
  return h;
}

double hs_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a.adjoint() * b).trace().real();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd unitary_propagator(const Eigen::MatrixXcd& h, double t) {
  const HermitianEigen e = eig_hermitian(h, 1e-10);
  Eigen::VectorXcd phases(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) phases(i) = std::polar(1.0, -e.values(i) * t);
  const Eigen::MatrixXcd u = e.vectors * phases.asDiagonal() * e.vectors.adjoint();
  // One Newton-Schulz polar step removes the eigenvector orthogonality error.
  const Eigen::Index n = u.rows();
  return 0.5 * u * (3.0 * Eigen::MatrixXcd::Identity(n, n) - u.adjoint() * u);
}

}  // namespace symred
