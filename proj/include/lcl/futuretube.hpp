#pragma once

// The tube over the future light cone in C^{m+1}: defining function, ambient
// Levi form, the null field generating the Levi foliation, and the explicit
// identification of the leaf space with the unit tangent bundle of flat R^m.

#include <Eigen/Dense>
#include <complex>

#include "lcl/rng.hpp"

namespace lcl::futuretube {

// 2 rho = (z_1+conj z_1)^2 + .. + (z_m+conj z_m)^2 - (z_{m+1}+conj z_{m+1})^2
double rho(const Eigen::VectorXcd& z);

// Re z_{m+1} > 0
bool futurity(const Eigen::VectorXcd& z);

// coefficients of the (1,0) part of d rho
Eigen::VectorXcd del_rho(const Eigen::VectorXcd& z);

// diag(1, .., 1, -1), size (m+1) x (m+1)
Eigen::MatrixXcd ambient_levi(int m);

// X = (z_k + conj z_k) d/dz_k, the leaf generator
Eigen::VectorXcd null_field(const Eigen::VectorXcd& z);

struct LeafCoord {
  Eigen::VectorXd t;       // base point in R^m
  Eigen::VectorXd u;       // unit vector in R^m
  std::complex<double> c;  // leaf parameter, Re c > 0
};

// (t, u) -> (u_1 + i t_1, .., u_m + i t_m, 1); requires |u| = 1 and m >= 2
Eigen::VectorXcd leaf_inclusion(const Eigen::VectorXd& t,
                                const Eigen::VectorXd& u);

// z_k -> c x_k + i y_k componentwise (real parts scale by Re c, imaginary
// parts shift by Im c * x_k); requires Re c > 0
Eigen::VectorXcd leaf_action(const Eigen::VectorXcd& z, std::complex<double> c);

// inverse of leaf_action . leaf_inclusion; requires futurity
LeafCoord leaf_coordinates(const Eigen::VectorXcd& z);

// eigenvalues of the Levi form restricted to ker(del rho) modulo the null
// field; all positive on the surface (signature (m-1, 0))
Eigen::VectorXd transverse_levi_eigenvalues(const Eigen::VectorXcd& z);

// gap between the finite leaf motion c = 1 + eps and the exponential of the
// corresponding infinitesimal generator; O(eps^2)
double flow_residual(const Eigen::VectorXcd& z, double eps);

// on-surface sample via leaf_inclusion + leaf_action
Eigen::VectorXcd sample_surface(int m, SplitMix64& rng);

}  // namespace lcl::futuretube
