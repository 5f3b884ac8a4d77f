#include "lcl/futuretube.hpp"

#include <cmath>
#include <stdexcept>

namespace lcl::futuretube {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

namespace {
int m_of(const VectorXcd& z) {
  int m = static_cast<int>(z.size()) - 1;
  if (m < 1) throw std::invalid_argument("need at least two coordinates");
  return m;
}
}  // namespace

double rho(const VectorXcd& z) {
  int m = m_of(z);
  double s = 0.0;
  for (int k = 0; k < m; ++k) {
    double xk = 2.0 * z(k).real();
    s += xk * xk;
  }
  double xm = 2.0 * z(m).real();
  return 0.5 * (s - xm * xm);
}

bool futurity(const VectorXcd& z) { return z(z.size() - 1).real() > 0.0; }

VectorXcd del_rho(const VectorXcd& z) {
  int m = m_of(z);
  VectorXcd a(m + 1);
  for (int k = 0; k < m; ++k) a(k) = 2.0 * z(k).real();
  a(m) = -2.0 * z(m).real();
  return a;
}

MatrixXcd ambient_levi(int m) {
  MatrixXcd L = MatrixXcd::Identity(m + 1, m + 1);
  L(m, m) = -1.0;
  return L;
}

VectorXcd null_field(const VectorXcd& z) {
  VectorXcd X(z.size());
  for (int k = 0; k < z.size(); ++k) X(k) = 2.0 * z(k).real();
  return X;
}

VectorXcd leaf_inclusion(const VectorXd& t, const VectorXd& u) {
  int m = static_cast<int>(t.size());
  if (m < 2) throw std::invalid_argument("leaf_inclusion: need m >= 2");
  if (u.size() != m) throw std::invalid_argument("leaf_inclusion: size mismatch");
  if (std::abs(u.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("leaf_inclusion: u is not a unit vector");
  VectorXcd z(m + 1);
  for (int k = 0; k < m; ++k) z(k) = complex<double>(u(k), t(k));
  z(m) = 1.0;
  return z;
}

VectorXcd leaf_action(const VectorXcd& z, complex<double> c) {
  if (!(c.real() > 0.0))
    throw std::invalid_argument("leaf_action: Re c must be positive");
  VectorXcd w(z.size());
  for (int k = 0; k < z.size(); ++k) {
    double x = z(k).real(), y = z(k).imag();
    w(k) = complex<double>(c.real() * x, c.imag() * x + y);
  }
  return w;
}

LeafCoord leaf_coordinates(const VectorXcd& z) {
  int m = m_of(z);
  if (!futurity(z))
    throw std::invalid_argument("leaf_coordinates: futurity violated");
  double r = z(m).real(), s = z(m).imag();
  LeafCoord lc;
  lc.c = complex<double>(r, s);
  lc.u = VectorXd(m);
  lc.t = VectorXd(m);
  for (int k = 0; k < m; ++k) {
    lc.u(k) = z(k).real() / r;
    lc.t(k) = z(k).imag() - s * lc.u(k);
  }
  return lc;
}

VectorXd transverse_levi_eigenvalues(const VectorXcd& z) {
  int m = m_of(z);
  if (m < 2)
    throw std::invalid_argument("transverse Levi form needs m >= 2");
  // v in ker(del rho) with v orthogonal to the null field
  MatrixXcd A(2, m + 1);
  A.row(0) = del_rho(z).transpose();
  A.row(1) = null_field(z).adjoint();
  Eigen::FullPivLU<MatrixXcd> lu(A);
  MatrixXcd K = lu.kernel();
  if (K.cols() != m - 1)
    throw std::runtime_error("unexpected transverse dimension");
  MatrixXcd G = K.adjoint() * ambient_levi(m) * K;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(G);
  return es.eigenvalues();
}

double flow_residual(const VectorXcd& z, double eps) {
  VectorXcd moved = leaf_action(z, 1.0 + eps);
  // the generator of c = 1 + eps scales real parts; its exponential for
  // time eps multiplies them by e^eps
  VectorXcd flowed(z.size());
  for (int k = 0; k < z.size(); ++k)
    flowed(k) = complex<double>(std::exp(eps) * z(k).real(), z(k).imag());
  return (moved - flowed).norm();
}

VectorXcd sample_surface(int m, SplitMix64& rng) {
  if (m < 2) throw std::invalid_argument("sample_surface: need m >= 2");
  VectorXd t(m), u(m);
  double nrm = 0.0;
  while (nrm < 1e-3) {
    for (int k = 0; k < m; ++k) u(k) = rng.uniform(-1.0, 1.0);
    nrm = u.norm();
  }
  u /= nrm;
  for (int k = 0; k < m; ++k) t(k) = rng.uniform(-2.0, 2.0);
  complex<double> c(rng.uniform(0.3, 3.0), rng.uniform(-2.0, 2.0));
  return leaf_action(leaf_inclusion(t, u), c);
}

}  // namespace lcl::futuretube
