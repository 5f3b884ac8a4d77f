#pragma once

// Local orthonormal-frame-bundle patches over a base metric: the tautological
// and connection forms, the 1-adapted complex coframe, the fiber-extended
// coframe with its pseudoconnection, numerical torsion extraction, and the
// closed-form torsion evaluators.
//
// Patch coordinates are (x^0..x^{d-1}, t_0..t_{D-1}, Re a, Im a) with
// D = d(d-1)/2 group parameters and a complex fiber coordinate a.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "lcl/extcalc.hpp"
#include "lcl/metric.hpp"
#include "lcl/rng.hpp"

namespace lcl::lcontact {

struct FrameBundlePatch {
  metric::MetricField base;
  int d = 0;    // base dimension
  int n = 0;    // d - 1 contact-plane indices
  int D = 0;    // group parameters
  int dim = 0;  // d + D + 2
  std::vector<std::pair<int, int>> gens;  // epsilon-skew generator index pairs
};

FrameBundlePatch make_patch(metric::MetricField base);

// Frame map phi(x, t) = E(x) O(t): E a signed Gram-Schmidt frame field,
// O a product of one-parameter epsilon-skew exponentials.
extcalc::Coeff phi_entry(const FrameBundlePatch& P, int i, int j);
extcalc::Coeff phi_inv_entry(const FrameBundlePatch& P, int i, int j);
Eigen::MatrixXd phi_value(const FrameBundlePatch& P, const Eigen::VectorXd& p);

// omega^i = (phi^{-1})^i_mu dx^mu
std::vector<extcalc::FormField> omega_forms(const FrameBundlePatch& P);
// gamma = phi^{-1}(dphi + Gamma dx phi), epsilon-skew-valued
std::vector<std::vector<extcalc::FormField>> gamma_forms(
    const FrameBundlePatch& P);

// max |eps_i gamma^i_j + eps_j gamma^j_i| over coordinate directions at p
double gamma_skew_residual(const FrameBundlePatch& P, const Eigen::VectorXd& p);
// max |(d omega + gamma ^ omega)(e_a, e_b)| over coordinate pairs at p
double omega_structure_residual(const FrameBundlePatch& P,
                                const Eigen::VectorXd& p);
// max |(d gamma + gamma^gamma - (1/2) R omega^omega)(e_a, e_b)| at p
double gamma_structure_residual(const FrameBundlePatch& P,
                                const Eigen::VectorXd& p);

// Curvature in the moving frame phi(x, t) at p.
metric::CurvatureData frame_curvature(const FrameBundlePatch& P,
                                      const Eigen::VectorXd& p);

struct LambdaForms {
  extcalc::FormField lambda0;               // (1/2) omega^0
  std::vector<extcalc::FormField> lambda;   // lambda[i-1] = (omega^i - i gamma^i_0)/2
};

LambdaForms lambda_forms(const FrameBundlePatch& P);

// d lambda^0 - i eps_ij lambda^i ^ conj(lambda^j) at p
double lambda0_residual(const FrameBundlePatch& P, const Eigen::VectorXd& p);
// d lambda^i against the curvature structure equation at p, max over i
double lambda_residual(const FrameBundlePatch& P, const Eigen::VectorXd& p);

struct FiberCoord {
  std::complex<double> a;
  double r = 0.0;
  std::complex<double> z_plus, z_minus;  // 1 - i r (+|-) a
};

FiberCoord fiber_coord(std::complex<double> a);

struct EtaForms {
  extcalc::FormField eta0;
  std::vector<extcalc::FormField> eta;  // (1 - i r) lambda^i - a conj(lambda^i)
};

EtaForms eta_forms(const FrameBundlePatch& P);

// d eta^0 - [(sigma + conj(sigma)) ^ eta^0 + i eps_ij eta^i ^ conj(eta^j)]
double eta0_residual(const FrameBundlePatch& P, const Eigen::VectorXd& p);

// Full coframe {eta^0, eta^i, conj(eta^i), gamma^i_j (1<=i<j<=n), da, dabar}.
std::vector<extcalc::FormField> eta_coframe(const FrameBundlePatch& P);

struct Pseudoconnection {
  extcalc::FormField sigma;  // varsigma
  extcalc::FormField kappa;
  std::vector<extcalc::FormField> zeta;
  bool ricci_shift = true;
};

// Curvature components are frozen at the anchor point; the connection forms
// are only ever evaluated there, never differentiated.
Pseudoconnection pseudoconnection(const FrameBundlePatch& P,
                                  const Eigen::VectorXd& anchor,
                                  bool ricci_shift = true);

using CArr3 = std::vector<std::vector<std::vector<std::complex<double>>>>;
CArr3 zero_arr3(int n);
double arr3_norm(const CArr3& a);

struct OPQ {
  CArr3 O, P, Q;
};

// Closed-form torsion at p from the frame curvature (Weyl-type Q when the
// Ricci shift is on, full curvature otherwise).
OPQ closed_form_torsion(const FrameBundlePatch& P, const Eigen::VectorXd& p,
                        bool ricci_shift = true);

// Printed polynomial evaluators with free coefficient inputs.
OPQ se2_torsion(const CArr3& M, const CArr3& N, const CArr3& R,
                const FiberCoord& fc);
// General symmetric A with eps_ij A^i_k conj(A)^j_l = r^2 eps_kl.
OPQ slgse_torsion(const CArr3& M, const CArr3& N, const Eigen::MatrixXcd& A,
                  const Eigen::VectorXd& eps);

struct TorsionReport {
  Eigen::VectorXd point;
  FiberCoord fc;
  CArr3 O_num, P_num, Q_num;        // O, Q antisymmetrized in (k, l)
  CArr3 O_formula, P_formula, Q_formula;
  double dO = 0.0, dP = 0.0, dQ = 0.0;  // numeric-vs-formula residuals
  double leakage = 0.0;  // coefficient mass outside the eta-block expansion
};

TorsionReport torsion_oracle(const FrameBundlePatch& P,
                             const Eigen::VectorXd& p,
                             bool ricci_shift = true);

struct ConformalRow {
  std::string name;
  double q_num = 0.0;      // antisymmetrized numeric Q norm (max over samples)
  double q_formula = 0.0;  // closed-form Q norm
  double c_adjusted = 0.0;    // trace-adjusted curvature C^i_{0kl} norm
  double weyl = 0.0;       // standard Weyl norm
};

ConformalRow conformal_flatness_report(const std::string& name,
                                       const metric::MetricField& M,
                                       int samples, std::uint64_t seed);

struct QuatSkeleton {
  double K2_residual = 0.0;        // K^2 = -1 on the contact plane
  double JK_residual = 0.0;        // JK + KJ = 0
  double dlambda0_residual = 0.0;  // sign-split Levi normalization
  double deta0_residual = 0.0;     // quaternionic eta^0 structure equation
};

// Requires signature (p+1, p).
QuatSkeleton quaternionic_skeleton(const metric::MetricField& M,
                                   const Eigen::VectorXd& p);

// Sample a patch point: x interior to the chart, |t| < 0.3, 0.05 < |a| < 0.6.
Eigen::VectorXd sample_point(const FrameBundlePatch& P, SplitMix64& rng);

}  // namespace lcl::lcontact
