#pragma once

// The tangent-bundle patch over a base metric: Sasaki metric,
// horizontal/vertical splitting, contact form, the (J, K) pair, the Levi
// form, the Lagrangian splitting of the contact distribution, and the Ricci
// shift. Coordinates are (x^1..x^d, y^1..y^d).

#include <Eigen/Dense>

#include "lcl/extcalc.hpp"
#include "lcl/metric.hpp"
#include "lcl/rng.hpp"

namespace lcl::utbundle {

struct TangentPatch {
  metric::MetricField base;

  int base_dim() const { return base.dim; }
  int dim() const { return 2 * base.dim; }
};

TangentPatch make_tangent_patch(metric::MetricField base);

// Columns 0..d-1: horizontal lifts of the coordinate vectors,
// d_{x^i} - Gamma^k_{ij}(x) y^j d_{y^k}; columns d..2d-1: vertical lifts.
Eigen::MatrixXd lift_frame(const TangentPatch& T, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);

// Sasaki metric diag(g, g) in the horizontal/vertical frame.
Eigen::MatrixXd sasaki_frame(const TangentPatch& T, const Eigen::VectorXd& x);

// Same metric conjugated into the coordinate frame.
Eigen::MatrixXd sasaki_coord(const TangentPatch& T, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y);

// The split-quaternionic pair in the coordinate frame: J = [[0,-1],[1,0]],
// K = [[0,1],[1,0]] on horizontal (+) vertical, conjugated by lift_frame.
// K acts conjugate-linearly on complex vectors: v -> K_coord * conj(v).
Eigen::MatrixXd J_coord(const TangentPatch& T, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y);
Eigen::MatrixXd K_coord(const TangentPatch& T, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y);

// theta = g_ij(x) y^i dx^j on the (x, y) patch.
extcalc::FormField contact_form(const TangentPatch& T);

// A point of the unit tangent bundle: x in the chart, g_x(y, y) = 1.
std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_unit(const TangentPatch& T,
                                                        SplitMix64& rng);

struct Splitting {
  Eigen::VectorXd x, u;
  metric::AdaptedFrame frame;               // e_0 = u, e_1..e_n span u-perp
  std::vector<Eigen::VectorXcd> lambda;     // lift(Y_i) - i vert(Y_i)
  std::vector<Eigen::VectorXcd> lambdabar;  // conjugates
};

Splitting lagrangian_splitting(const TangentPatch& T, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& u);

// dtheta on the (x, y) patch.
extcalc::FormField levi_two_form(const TangentPatch& T);

// Levi form -i dtheta evaluated on complex tangent vectors at (x, y).
std::complex<double> levi_form(const TangentPatch& T, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& y,
                               const Eigen::VectorXcd& Y1,
                               const Eigen::VectorXcd& Y2);

// max | L(Y1, Y2) + i ghat(Y1, J Y2) | over a basis of the complexified
// contact distribution at (x, u); the proportionality constant calibrates
// to -i in this convention.
double levi_lemma_check(const TangentPatch& T, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& u);

struct RicciShift {
  std::vector<double> coeff;                // Ric(u, Y_i), standard Ricci
  std::vector<Eigen::VectorXd> shifted_h;   // lift(Y_i) + c_i vert(Y_i)
  std::vector<Eigen::VectorXd> shifted_v;   // vert(Y_i) + c_i lift(Y_i)
};

RicciShift ricci_shift(const TangentPatch& T, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& u);

}  // namespace lcl::utbundle
