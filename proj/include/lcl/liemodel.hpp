#pragma once

// Parametrized matrix models of so(p+2,q+2) and so*(2p+4), structure
// constants over the printed real parameter basis, and verification of the
// Maurer-Cartan equations against those constants.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "lcl/quatalg.hpp"
#include "lcl/rng.hpp"

namespace lcl::liemodel {

using Complex = std::complex<double>;
using MatC = Eigen::MatrixXcd;

enum class Family { Split, Quat };

struct SplitParams {
  double eta0 = 0.0;
  double zeta0 = 0.0;
  Complex varsigma{0.0, 0.0};
  Complex kappa{0.0, 0.0};
  Eigen::VectorXcd eta;    // size n
  Eigen::VectorXcd zeta;   // size n
  Eigen::MatrixXd gamma;   // n x n, eps_i g^i_j + eps_j g^j_i = 0
};

struct QuatParams {
  double eta0 = 0.0;
  double zeta0 = 0.0;
  Complex varsigma{0.0, 0.0};
  Complex kappa{0.0, 0.0};
  Eigen::VectorXcd eta;   // size 2p
  Eigen::VectorXcd zeta;  // size 2p
  MatC xi;                // 2p x 2p, four printed block constraints
};

// (n+4)x(n+4) matrix laid out as printed; rows/cols ordered
// (nu, K nu, ups_i, nu', K nu').
MatC so_split_element(const SplitParams& P, int p, int q);

// (2p+4)x(2p+4) matrix; rows/cols ordered (nu, K nu, ups_i, ups_{p+i}, nu',
// K nu').
MatC so_star_element(const QuatParams& P, int p);

// Entry-wise reads of the printed parameter slots.
SplitParams split_decompose(const MatC& M, int p, int q);
QuatParams quat_decompose(const MatC& M, int p);

struct StructureConstants {
  Family family;
  int p = 0, q = 0;
  std::vector<std::string> labels;
  std::vector<MatC> basis;
  // c[k](i, j) with [X_i, X_j] = sum_k c^k_{ij} X_k
  std::vector<Eigen::MatrixXd> c;
  double closure_residual = 0.0;  // worst bracket reconstruction error
};

StructureConstants structure_constants(Family family, int p, int q);

double jacobi_residual(const StructureConstants& sc);

// Max deviation of the printed Maurer-Cartan equations (all seven for the
// split family, the three printed ones for the quaternionic family) from
// d omega(X, Y) = -omega([X, Y]) over all basis pairs.
double mc_residual(Family family, int p, int q);

MatC random_split_element(int p, int q, SplitMix64& rng);
MatC random_quat_element(int p, SplitMix64& rng);

}  // namespace lcl::liemodel
