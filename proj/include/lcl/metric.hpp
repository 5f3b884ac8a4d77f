#pragma once

// Coordinate-chart semi-Riemannian metrics on an open box, their Levi-Civita
// data, curvature tensors, and orthonormal frames adapted to a unit vector.
// All derivatives of the metric are taken by evaluating the component
// closures on hyperdual inputs, so Christoffel symbols and their first
// partials are exact to rounding.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "lcl/hyperdual.hpp"

namespace lcl::metric {

struct Signature {
  int p_plus_1 = 0;       // positive directions, the first of which is e0
  int q = 0;              // negative directions
  Eigen::VectorXd eps;    // diagonal signs, eps(0) = +1

  int dim() const { return p_plus_1 + q; }
};

Signature make_signature(int p_plus_1, int q);

// Symmetric dim x dim matrix of hyperdual components.
using HD2Mat = std::vector<std::vector<HD2>>;

struct MetricField {
  int dim = 0;
  Signature sig;
  std::vector<std::array<double, 2>> chart;  // open box, per-coordinate
  std::function<HD2Mat(const HD2Vec&)> components;

  bool in_chart(const Eigen::VectorXd& x) const;
};

Eigen::MatrixXd metric_at(const MetricField& M, const Eigen::VectorXd& x);
Eigen::MatrixXd metric_partial(const MetricField& M, const Eigen::VectorXd& x,
                               int a);

struct CatalogParams {
  int dim = 3;
  int q = 0;                  // negative directions (flat/conformal/random)
  std::vector<double> poly;   // conformal exponent: constant, linear, squares
  double radius = 1.0;        // sphere / hyperbolic curvature radius
  int dim2 = 0;               // second factor of product_spheres (0 = dim)
  std::uint64_t seed = 42;    // random_poly
  double amplitude = 0.1;     // random_poly perturbation scale
};

// flat | conformal | sphere | hyperbolic | product_spheres | random_poly
MetricField catalog(const std::string& name, const CatalogParams& params);

// {"name": ..., "dim": d, "signature": [p+1, q], "params": {...},
//  "chart": [[lo, hi], ...]}
MetricField metric_from_json(const nlohmann::json& cfg);

// Gamma[k](i, j)
std::vector<Eigen::MatrixXd> christoffel(const MetricField& M,
                                         const Eigen::VectorXd& x);

struct Tensor4 {
  int d = 0;
  std::vector<double> v;

  Tensor4() = default;
  explicit Tensor4(int dim) : d(dim), v(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}
  double& operator()(int i, int j, int k, int l) {
    return v[((static_cast<size_t>(i) * d + j) * d + k) * d + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return v[((static_cast<size_t>(i) * d + j) * d + k) * d + l];
  }
};

// Coordinate curvature R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
//                                 + Gamma^i_{km} Gamma^m_{lj}
//                                 - Gamma^i_{lm} Gamma^m_{kj}.
Tensor4 riemann_coord(const MetricField& M, const Eigen::VectorXd& x);

struct AdaptedFrame {
  Eigen::MatrixXd e;   // columns e_0..e_n, e_0 the prescribed unit vector
  Eigen::VectorXd x;
};

// Gram-Schmidt with signature bookkeeping; requires g(u,u) = 1.
AdaptedFrame adapt_frame(const MetricField& M, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& u);

struct CurvatureData {
  Eigen::VectorXd point;
  std::vector<Eigen::MatrixXd> Gamma;  // coordinate
  Tensor4 Riem;                        // frame components R^i_{jkl}
  Eigen::MatrixXd RicScaled;            // (1/(n+1)) eps^m_n R^n_{jmk}
  Eigen::MatrixXd RicStd;              // R^m_{jmk}
  double scalar = 0.0;                 // eps^{jk} RicStd_{jk}
  Tensor4 CAdjusted;                      // R^i_{jkl} - eps^i_k RicScaled_{jl}
  Tensor4 Weyl;                        // standard Weyl tensor, frame components
};

CurvatureData riemann(const MetricField& M, const Eigen::VectorXd& x,
                      const AdaptedFrame& frame);

}  // namespace lcl::metric
