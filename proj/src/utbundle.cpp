#include "lcl/utbundle.hpp"

#include <complex>
#include <stdexcept>

namespace lcl::utbundle {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

TangentPatch make_tangent_patch(metric::MetricField base) {
  if (base.dim < 2) throw std::invalid_argument("base dimension must be >= 2");
  return TangentPatch{std::move(base)};
}

// A(k, i) = Gamma^k_{ij} y^j, the vertical drift of the horizontal lift.
static MatrixXd drift(const TangentPatch& T, const VectorXd& x,
                      const VectorXd& y) {
  const int d = T.base_dim();
  auto Gamma = metric::christoffel(T.base, x);
  MatrixXd A = MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i) A(k, i) = Gamma[k].row(i).dot(y);
  return A;
}

Eigen::MatrixXd lift_frame(const TangentPatch& T, const VectorXd& x,
                           const VectorXd& y) {
  const int d = T.base_dim();
  MatrixXd L = MatrixXd::Identity(2 * d, 2 * d);
  L.block(d, 0, d, d) = -drift(T, x, y);
  return L;
}

Eigen::MatrixXd sasaki_frame(const TangentPatch& T, const VectorXd& x) {
  const int d = T.base_dim();
  MatrixXd g = metric_at(T.base, x);
  MatrixXd S = MatrixXd::Zero(2 * d, 2 * d);
  S.topLeftCorner(d, d) = g;
  S.bottomRightCorner(d, d) = g;
  return S;
}

Eigen::MatrixXd sasaki_coord(const TangentPatch& T, const VectorXd& x,
                             const VectorXd& y) {
  const int d = T.base_dim();
  MatrixXd Linv = MatrixXd::Identity(2 * d, 2 * d);
  Linv.block(d, 0, d, d) = drift(T, x, y);  // inverse of lift_frame
  return Linv.transpose() * sasaki_frame(T, x) * Linv;
}

static MatrixXd conjugate_block(const TangentPatch& T, const VectorXd& x,
                                const VectorXd& y, double ul, double ll) {
  // block form [[0, -ll], [ul, 0]]... built explicitly below from the two
  // off-diagonal entries of the horizontal/vertical representation.
  const int d = T.base_dim();
  MatrixXd B = MatrixXd::Zero(2 * d, 2 * d);
  B.topRightCorner(d, d) = ul * MatrixXd::Identity(d, d);
  B.bottomLeftCorner(d, d) = ll * MatrixXd::Identity(d, d);
  MatrixXd L = lift_frame(T, x, y);
  MatrixXd Linv = MatrixXd::Identity(2 * d, 2 * d);
  Linv.block(d, 0, d, d) = -L.block(d, 0, d, d);
  return L * B * Linv;
}

Eigen::MatrixXd J_coord(const TangentPatch& T, const VectorXd& x,
                        const VectorXd& y) {
  return conjugate_block(T, x, y, -1.0, 1.0);  // J(hlift) = vlift, J(vlift) = -hlift
}

Eigen::MatrixXd K_coord(const TangentPatch& T, const VectorXd& x,
                        const VectorXd& y) {
  return conjugate_block(T, x, y, 1.0, 1.0);  // K swaps the lifts
}

extcalc::FormField contact_form(const TangentPatch& T) {
  const int d = T.base_dim();
  extcalc::FormField theta = extcalc::zero_form(2 * d, 1);
  for (int j = 0; j < d; ++j) {
    auto base = T.base;
    extcalc::Coeff f = [base, d, j](const HD2Vec& p) {
      HD2Vec xh(p.begin(), p.begin() + d);
      metric::HD2Mat g = base.components(xh);
      CHD2 s{};
      for (int i = 0; i < d; ++i) s = s + CHD2(g[i][j] * p[d + i]);
      return s;
    };
    theta = extcalc::add(theta, extcalc::mul(f, extcalc::dx(2 * d, j)));
  }
  return theta;
}

std::pair<VectorXd, VectorXd> sample_unit(const TangentPatch& T,
                                          SplitMix64& rng) {
  const int d = T.base_dim();
  for (int attempt = 0; attempt < 200; ++attempt) {
    VectorXd x(d);
    for (int i = 0; i < d; ++i) {
      auto [lo, hi] = T.base.chart[i];
      double margin = 0.2 * (hi - lo);
      x[i] = rng.uniform(lo + margin, hi - margin);
    }
    if (!T.base.in_chart(x)) continue;
    MatrixXd g = metric_at(T.base, x);
    VectorXd y(d);
    for (int i = 0; i < d; ++i) y[i] = rng.uniform(-1.0, 1.0);
    double q = y.dot(g * y);
    if (q < 0.1) continue;  // reject null-ish or negative directions
    return {x, y / std::sqrt(q)};
  }
  throw std::runtime_error("sample_unit: no unit vector found");
}

Splitting lagrangian_splitting(const TangentPatch& T, const VectorXd& x,
                               const VectorXd& u) {
  const int d = T.base_dim();
  Splitting S;
  S.x = x;
  S.u = u;
  S.frame = metric::adapt_frame(T.base, x, u);
  MatrixXd A = drift(T, x, u);
  const complex<double> I(0.0, 1.0);
  for (int i = 1; i < d; ++i) {
    VectorXd Y = S.frame.e.col(i);
    VectorXcd lam = VectorXcd::Zero(2 * d);
    lam.head(d) = Y.cast<complex<double>>();
    lam.tail(d) = (-(A * Y)).cast<complex<double>>() - I * Y.cast<complex<double>>();
    S.lambda.push_back(lam);
    S.lambdabar.push_back(lam.conjugate());
  }
  return S;
}

extcalc::FormField levi_two_form(const TangentPatch& T) {
  return extcalc::d(contact_form(T));
}

complex<double> levi_form(const TangentPatch& T, const VectorXd& x,
                          const VectorXd& y, const VectorXcd& Y1,
                          const VectorXcd& Y2) {
  VectorXd p(2 * T.base_dim());
  p << x, y;
  return complex<double>(0.0, -1.0) *
         extcalc::evaluate(levi_two_form(T), p, {Y1, Y2});
}

double levi_lemma_check(const TangentPatch& T, const VectorXd& x,
                        const VectorXd& u) {
  const int d = T.base_dim();
  Splitting S = lagrangian_splitting(T, x, u);
  std::vector<VectorXcd> B = S.lambda;
  B.insert(B.end(), S.lambdabar.begin(), S.lambdabar.end());

  extcalc::FormField dtheta = levi_two_form(T);
  VectorXd p(2 * d);
  p << x, u;
  MatrixXcd ghat = sasaki_coord(T, x, u).cast<complex<double>>();
  MatrixXcd J = J_coord(T, x, u).cast<complex<double>>();
  const complex<double> I(0.0, 1.0);

  // L = -i dtheta is proportional to ghat(., J.) on the contact distribution;
  // with the full-alternation wedge convention used throughout, and the
  // quotient-line trivialization fixed by theta, the constant is -i.
  double worst = 0.0;
  for (const auto& Y1 : B)
    for (const auto& Y2 : B) {
      complex<double> lhs = -I * extcalc::evaluate(dtheta, p, {Y1, Y2});
      complex<double> rhs = -I * (Y1.transpose() * ghat * (J * Y2))(0, 0);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

RicciShift ricci_shift(const TangentPatch& T, const VectorXd& x,
                       const VectorXd& u) {
  const int d = T.base_dim();
  auto frame = metric::adapt_frame(T.base, x, u);
  metric::CurvatureData C = metric::riemann(T.base, x, frame);
  MatrixXd A = drift(T, x, u);
  RicciShift R;
  for (int i = 1; i < d; ++i) {
    VectorXd Y = frame.e.col(i);
    double c = C.RicStd(0, i);
    VectorXd h(2 * d), v(2 * d);
    h << Y, -(A * Y);
    v << VectorXd::Zero(d), Y;
    R.coeff.push_back(c);
    R.shifted_h.push_back(h + c * v);
    R.shifted_v.push_back(v + c * h);
  }
  return R;
}

}  // namespace lcl::utbundle
