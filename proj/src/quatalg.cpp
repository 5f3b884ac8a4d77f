#include "lcl/quatalg.hpp"

#include <stdexcept>

namespace lcl::quatalg {

namespace {
const Complex I{0.0, 1.0};
}

MatC pauli(int k) {
  MatC s(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::out_of_range("pauli: index must be in {0,1,2,3}");
  }
  return s;
}

MatC AlgebraElement::matrix() const {
  MatC m(2, 2);
  m << w, static_cast<double>(eps) * std::conj(z), z, std::conj(w);
  return m;
}

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.eps != b.eps)
    throw std::invalid_argument("algebra_mul: mismatched eps");
  // [[w, e z*],[z, w*]] stays closed under the product; read off column 0.
  MatC m = a.matrix() * b.matrix();
  return AlgebraElement{m(0, 0), m(1, 0), a.eps};
}

QuatLine quaternionic_line(const VecC& v, const EpsQuatStructure& S,
                           double rank_tol) {
  if (v.size() != S.dim)
    throw std::invalid_argument("quaternionic_line: dimension mismatch");
  VecC kv = S.apply(v);
  MatC B(S.dim, 2);
  B.col(0) = v;
  B.col(1) = kv;
  Eigen::JacobiSVD<MatC> svd(B);
  if (svd.singularValues()(1) <= rank_tol * svd.singularValues()(0))
    throw std::domain_error("quaternionic_line: v wedge Kv vanishes");
  return QuatLine{v, kv};
}

bool line_contains(const QuatLine& L, const VecC& w, double tol) {
  MatC B(L.v.size(), 2);
  B.col(0) = L.v;
  B.col(1) = L.Kv;
  VecC c = B.colPivHouseholderQr().solve(w);
  return (B * c - w).norm() <= tol * (1.0 + w.norm());
}

std::pair<double, double> symmetry_check(const MatC& X, const FormPair& P) {
  if (X.rows() != P.b.rows() || X.cols() != P.b.cols())
    throw std::invalid_argument("symmetry_check: shape mismatch");
  double rb = (X.transpose() * P.b + P.b * X).norm();
  double rh = (X.adjoint() * P.h + P.h * X).norm();
  return {rb, rh};
}

ModelData split_model(int p, int q) {
  int n = p + q;
  if (n < 1) throw std::invalid_argument("split_model: need p+q >= 1");
  int d = n + 4;
  Eigen::VectorXd eps(n);
  for (int i = 0; i < n; ++i) eps(i) = (i < p) ? 1.0 : -1.0;

  MatC b = MatC::Zero(d, d), h = MatC::Zero(d, d);
  b.block(0, d - 2, 2, 2) = pauli(1);
  b.block(d - 2, 0, 2, 2) = pauli(1);
  h.block(0, d - 2, 2, 2) = pauli(0);
  h.block(d - 2, 0, 2, 2) = pauli(0);
  for (int i = 0; i < n; ++i) {
    b(2 + i, 2 + i) = eps(i);
    h(2 + i, 2 + i) = eps(i);
  }

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(d, d);
  K(0, 1) = K(1, 0) = 1.0;
  K(d - 2, d - 1) = K(d - 1, d - 2) = 1.0;
  for (int i = 0; i < n; ++i) K(2 + i, 2 + i) = 1.0;

  return ModelData{FormPair{b, h}, EpsQuatStructure{d, K, +1}, eps};
}

ModelData quat_model(int p) {
  if (p < 1) throw std::invalid_argument("quat_model: need p >= 1");
  int n = 2 * p;
  int d = n + 4;
  Eigen::VectorXd eps(n);
  for (int i = 0; i < n; ++i) eps(i) = (i < p) ? 1.0 : -1.0;

  MatC b = MatC::Zero(d, d), h = MatC::Zero(d, d);
  b.block(0, d - 2, 2, 2) = pauli(1);
  b.block(d - 2, 0, 2, 2) = pauli(1);
  for (int i = 0; i < p; ++i) {
    b(2 + i, 2 + p + i) = 1.0;
    b(2 + p + i, 2 + i) = 1.0;
  }
  // h = K^t b, assembled below once K is in place.

  // -i sigma_2 acts as [[0,-1],[1,0]]
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(d, d);
  K(0, 1) = -1.0;
  K(1, 0) = 1.0;
  K(d - 2, d - 1) = -1.0;
  K(d - 1, d - 2) = 1.0;
  for (int i = 0; i < p; ++i) {
    K(2 + i, 2 + p + i) = -1.0;
    K(2 + p + i, 2 + i) = 1.0;
  }

  h = K.transpose().cast<Complex>() * b;
  return ModelData{FormPair{b, h}, EpsQuatStructure{d, K, -1}, eps};
}

}  // namespace lcl::quatalg
