#pragma once

// The real algebras H and split-H, epsilon-quaternionic structures on C^d,
// the associated bilinear/Hermitian pair (b, h), and quaternionic lines.

#include <Eigen/Dense>
#include <complex>

namespace lcl::quatalg {

using Complex = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

// sigma_0..sigma_3
MatC pauli(int k);

// Element of H (eps=-1) or split-H (eps=+1) in (w, z) coordinates.
struct AlgebraElement {
  Complex w{0.0, 0.0};
  Complex z{0.0, 0.0};
  int eps = +1;

  // 2x2 matrix realization [[w, eps*conj(z)], [z, conj(w)]]
  MatC matrix() const;
};

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b);

// Conjugate-linear structure K on C^d given by a real matrix on the real
// subspace, K*K = eps*Id.
struct EpsQuatStructure {
  int dim = 0;
  Eigen::MatrixXd K;
  int eps = +1;

  // K(v) = K_real * conj(v)
  VecC apply(const VecC& v) const { return K * v.conjugate(); }
};

struct FormPair {
  MatC b;  // complex symmetric
  MatC h;  // Hermitian, h = K^t b
};

struct QuatLine {
  VecC v;   // ordered basis {v, Kv}
  VecC Kv;
};

// A-span of v; throws if v wedge Kv is numerically rank one.
QuatLine quaternionic_line(const VecC& v, const EpsQuatStructure& S,
                           double rank_tol = 1e-9);

// Least-squares membership test for w in the span {v, Kv}.
bool line_contains(const QuatLine& L, const VecC& w, double tol = 1e-8);

// (||X^t b + b X||_F, ||X^dag h + h X||_F); both small certifies X in the
// symmetry algebra of the pair.
std::pair<double, double> symmetry_check(const MatC& X, const FormPair& P);

// The standard split model on C^{n+4}: basis ordered
// (nu, K nu, ups_i, nu', K nu'), b/h block forms, K block-diagonal.
struct ModelData {
  FormPair forms;
  EpsQuatStructure structure;
  Eigen::VectorXd eps_diag;  // epsilon_i for the middle block (size n)
};

ModelData split_model(int p, int q);

// The quaternionic model on C^{2p+4}: basis ordered
// (nu, K nu, ups_i, ups_{p+i}, nu', K nu').
ModelData quat_model(int p);

}  // namespace lcl::quatalg
