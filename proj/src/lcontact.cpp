#include "lcl/lcontact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcl::lcontact {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using std::complex;

namespace {

const complex<double> I(0.0, 1.0);

// ---- small HD2 matrix helpers ----

using HMat = std::vector<HD2Vec>;

HMat hmat_id(int d) {
  HMat m(d, HD2Vec(d, HD2{0.0}));
  for (int i = 0; i < d; ++i) m[i][i] = HD2{1.0};
  return m;
}

HMat hmat_mul(const HMat& A, const HMat& B) {
  int d = static_cast<int>(A.size());
  HMat C(d, HD2Vec(d, HD2{0.0}));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}

HD2 frame_ip(const metric::HD2Mat& g, const HD2Vec& u, const HD2Vec& v) {
  HD2 s{};
  int d = static_cast<int>(u.size());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) s += u[a] * g[a][b] * v[b];
  return s;
}

// Signed Gram-Schmidt frame field: columns orthonormal for g(x), ordered to
// match the signature pattern (positives first).
HMat frame_E(const metric::MetricField& M, const HD2Vec& x) {
  int d = M.dim;
  metric::HD2Mat g = M.components(x);
  std::vector<HD2Vec> cols;
  std::vector<double> sign;
  for (int j = 0; j < d; ++j) {
    HD2Vec v(d, HD2{0.0});
    v[j] = HD2{1.0};
    for (size_t m = 0; m < cols.size(); ++m) {
      HD2 c = frame_ip(g, v, cols[m]);
      for (int k = 0; k < d; ++k) v[k] -= HD2{sign[m]} * c * cols[m][k];
    }
    HD2 q = frame_ip(g, v, v);
    if (std::abs(q.v) < 1e-10)
      throw std::runtime_error("frame field degenerates on the chart");
    double s = q.v > 0.0 ? 1.0 : -1.0;
    HD2 nrm = sqrt(s > 0.0 ? q : -q);
    for (int k = 0; k < d; ++k) v[k] /= nrm;
    cols.push_back(v);
    sign.push_back(s);
  }
  std::vector<int> order;
  for (int j = 0; j < d; ++j)
    if (sign[j] > 0.0) order.push_back(j);
  for (int j = 0; j < d; ++j)
    if (sign[j] < 0.0) order.push_back(j);
  for (int j = 0; j < d; ++j)
    if (sign[order[j]] != M.sig.eps[j])
      throw std::runtime_error("frame signature does not match the metric");
  HMat E(d, HD2Vec(d, HD2{0.0}));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) E[k][j] = cols[order[j]][k];
  return E;
}

MatrixXd skew_generator(const FrameBundlePatch& P, int alpha) {
  auto [i, j] = P.gens[alpha];
  MatrixXd G = MatrixXd::Zero(P.d, P.d);
  G(i, j) = 1.0;
  G(j, i) = -P.base.sig.eps[i] * P.base.sig.eps[j];
  return G;
}

HMat exp_series(const MatrixXd& G, const HD2& t) {
  int d = static_cast<int>(G.rows());
  HMat term = hmat_id(d), sum = hmat_id(d);
  HMat tG(d, HD2Vec(d, HD2{0.0}));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) tG[i][j] = t * HD2{G(i, j)};
  for (int k = 1; k <= 24; ++k) {
    term = hmat_mul(term, tG);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        term[i][j] /= HD2{static_cast<double>(k)};
        sum[i][j] += term[i][j];
      }
  }
  return sum;
}

HD2Vec x_part(const FrameBundlePatch& P, const HD2Vec& p) {
  return HD2Vec(p.begin(), p.begin() + P.d);
}

HMat phi_mat(const FrameBundlePatch& P, const HD2Vec& p) {
  HMat m = frame_E(P.base, x_part(P, p));
  for (int a = 0; a < P.D; ++a)
    m = hmat_mul(m, exp_series(skew_generator(P, a), p[P.d + a]));
  return m;
}

HMat phi_inv_mat(const FrameBundlePatch& P, const HD2Vec& p) {
  HD2Vec x = x_part(P, p);
  HMat E = frame_E(P.base, x);
  metric::HD2Mat g = P.base.components(x);
  // E^{-1} = diag(eps) E^t g
  HMat Einv(P.d, HD2Vec(P.d, HD2{0.0}));
  for (int i = 0; i < P.d; ++i)
    for (int j = 0; j < P.d; ++j)
      for (int k = 0; k < P.d; ++k)
        Einv[i][j] += HD2{P.base.sig.eps[i]} * E[k][i] * g[k][j];
  HMat Oinv = hmat_id(P.d);
  for (int a = P.D - 1; a >= 0; --a)
    Oinv = hmat_mul(Oinv, exp_series(skew_generator(P, a), -p[P.d + a]));
  return hmat_mul(Oinv, Einv);
}

extcalc::Coeff metric_entry(const FrameBundlePatch& P, int a, int b) {
  auto base = P.base;
  int d = P.d;
  return [base, d, a, b](const HD2Vec& p) {
    HD2Vec x(p.begin(), p.begin() + d);
    return CHD2(base.components(x)[a][b]);
  };
}

// Gamma^k_{m l}(x) for all k, l, in hyperdual arithmetic; consumes the free
// slot of p through the metric partials.
HMat christoffel_row(const FrameBundlePatch& P, const HD2Vec& p, int m) {
  int d = P.d;
  HD2Vec x = x_part(P, p);
  metric::HD2Mat g = P.base.components(x);
  // dg[l][a][b] = d_l g_ab
  std::vector<std::vector<HD2Vec>> dg(d,
                                      std::vector<HD2Vec>(d, HD2Vec(d, HD2{})));
  for (int l = 0; l < d; ++l)
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        dg[l][a][b] = extcalc::partial(metric_entry(P, a, b), l)(p).re;
        dg[l][b][a] = dg[l][a][b];
      }
  // invert g by Gauss-Jordan
  HMat A(d, HD2Vec(2 * d, HD2{0.0}));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) A[i][j] = g[i][j];
    A[i][d + i] = HD2{1.0};
  }
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int rr = c + 1; rr < d; ++rr)
      if (std::abs(A[rr][c].v) > std::abs(A[piv][c].v)) piv = rr;
    std::swap(A[c], A[piv]);
    HD2 pv = A[c][c];
    for (int j = 0; j < 2 * d; ++j) A[c][j] /= pv;
    for (int rr = 0; rr < d; ++rr) {
      if (rr == c) continue;
      HD2 f = A[rr][c];
      for (int j = 0; j < 2 * d; ++j) A[rr][j] -= f * A[c][j];
    }
  }
  HMat G(d, HD2Vec(d, HD2{0.0}));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      HD2 s{};
      for (int c = 0; c < d; ++c)
        s += A[k][d + c] * (dg[m][l][c] + dg[l][m][c] - dg[c][m][l]);
      G[k][l] = HD2{0.5} * s;
    }
  return G;
}

extcalc::Coeff gamma_coeff(const FrameBundlePatch& P, int i, int j, int m) {
  return [P, i, j, m](const HD2Vec& p) {
    HMat pinv = phi_inv_mat(P, p);
    CHD2 s{};
    for (int k = 0; k < P.d; ++k)
      s += CHD2(pinv[i][k]) * extcalc::partial(phi_entry(P, k, j), m)(p);
    if (m < P.d) {
      HMat phi = phi_mat(P, p);
      HMat G = christoffel_row(P, p, m);
      for (int k = 0; k < P.d; ++k)
        for (int l = 0; l < P.d; ++l)
          s += CHD2(pinv[i][k] * G[k][l] * phi[l][j]);
    }
    return s;
  };
}

// Largest coefficient modulus of a form at p; evaluating a 2-form on all
// coordinate pairs is exactly reading off its term coefficients.
double max_coeff_norm(const extcalc::FormField& F, const VectorXd& p) {
  std::vector<double> xv(p.data(), p.data() + p.size());
  double worst = 0.0;
  for (const auto& [idx, f] : F.terms)
    worst = std::max(worst, std::abs(f(lift_point(xv)).value()));
  return worst;
}

extcalc::FormField form_sum(int dim, int degree,
                            const std::vector<extcalc::FormField>& parts) {
  extcalc::FormField s = extcalc::zero_form(dim, degree);
  for (const auto& f : parts) s = extcalc::add(s, f);
  return s;
}

// ---- fiber coordinate closures ----

extcalc::Coeff a_coeff(const FrameBundlePatch& P) {
  int ia = P.d + P.D;
  return [ia](const HD2Vec& p) { return CHD2(p[ia], p[ia + 1]); };
}

extcalc::Coeff r_coeff(const FrameBundlePatch& P) {
  int ia = P.d + P.D;
  return [ia](const HD2Vec& p) {
    return CHD2(sqrt(p[ia] * p[ia] + p[ia + 1] * p[ia + 1]));
  };
}

extcalc::Coeff zminus_coeff(const FrameBundlePatch& P) {
  auto a = a_coeff(P), r = r_coeff(P);
  return [a, r](const HD2Vec& p) {
    return CHD2(1.0) - CHD2(I) * r(p) - a(p);
  };
}

extcalc::Coeff zplus_coeff(const FrameBundlePatch& P) {
  auto a = a_coeff(P), r = r_coeff(P);
  return [a, r](const HD2Vec& p) {
    return CHD2(1.0) - CHD2(I) * r(p) + a(p);
  };
}

extcalc::FormField da_form(const FrameBundlePatch& P, bool conjugated) {
  int ia = P.d + P.D;
  return extcalc::add(
      extcalc::dx(P.dim, ia),
      extcalc::scale(conjugated ? -I : I, extcalc::dx(P.dim, ia + 1)));
}

extcalc::FormField dr_form(const FrameBundlePatch& P) {
  return extcalc::d(extcalc::fn_form(P.dim, r_coeff(P)));
}

}  // namespace

FrameBundlePatch make_patch(metric::MetricField base) {
  if (base.dim < 2) throw std::invalid_argument("base dimension must be >= 2");
  FrameBundlePatch P;
  P.d = base.dim;
  P.n = base.dim - 1;
  P.D = base.dim * (base.dim - 1) / 2;
  P.dim = P.d + P.D + 2;
  for (int i = 0; i < P.d; ++i)
    for (int j = i + 1; j < P.d; ++j) P.gens.emplace_back(i, j);
  P.base = std::move(base);
  return P;
}

extcalc::Coeff phi_entry(const FrameBundlePatch& P, int i, int j) {
  return [P, i, j](const HD2Vec& p) { return CHD2(phi_mat(P, p)[i][j]); };
}

extcalc::Coeff phi_inv_entry(const FrameBundlePatch& P, int i, int j) {
  return [P, i, j](const HD2Vec& p) { return CHD2(phi_inv_mat(P, p)[i][j]); };
}

Eigen::MatrixXd phi_value(const FrameBundlePatch& P, const VectorXd& p) {
  std::vector<double> xv(p.data(), p.data() + p.size());
  HMat m = phi_mat(P, lift_point(xv));
  MatrixXd out(P.d, P.d);
  for (int i = 0; i < P.d; ++i)
    for (int j = 0; j < P.d; ++j) out(i, j) = m[i][j].v;
  return out;
}

std::vector<extcalc::FormField> omega_forms(const FrameBundlePatch& P) {
  std::vector<extcalc::FormField> omega;
  for (int i = 0; i < P.d; ++i) {
    extcalc::FormField f = extcalc::zero_form(P.dim, 1);
    for (int mu = 0; mu < P.d; ++mu)
      f = extcalc::add(
          f, extcalc::mul(phi_inv_entry(P, i, mu), extcalc::dx(P.dim, mu)));
    omega.push_back(f);
  }
  return omega;
}

std::vector<std::vector<extcalc::FormField>> gamma_forms(
    const FrameBundlePatch& P) {
  std::vector<std::vector<extcalc::FormField>> gamma(
      P.d, std::vector<extcalc::FormField>(P.d));
  for (int i = 0; i < P.d; ++i)
    for (int j = 0; j < P.d; ++j) {
      extcalc::FormField f = extcalc::zero_form(P.dim, 1);
      for (int m = 0; m < P.d + P.D; ++m)
        f = extcalc::add(
            f, extcalc::mul(gamma_coeff(P, i, j, m), extcalc::dx(P.dim, m)));
      gamma[i][j] = f;
    }
  return gamma;
}

double gamma_skew_residual(const FrameBundlePatch& P, const VectorXd& p) {
  auto gamma = gamma_forms(P);
  double worst = 0.0;
  for (int i = 0; i < P.d; ++i)
    for (int j = 0; j < P.d; ++j) {
      extcalc::FormField s =
          extcalc::add(extcalc::scale(P.base.sig.eps[i], gamma[i][j]),
                       extcalc::scale(P.base.sig.eps[j], gamma[j][i]));
      worst = std::max(worst, max_coeff_norm(s, p));
    }
  return worst;
}

double omega_structure_residual(const FrameBundlePatch& P, const VectorXd& p) {
  auto omega = omega_forms(P);
  auto gamma = gamma_forms(P);
  double worst = 0.0;
  for (int i = 0; i < P.d; ++i) {
    extcalc::FormField F = extcalc::d(omega[i]);
    for (int j = 0; j < P.d; ++j)
      F = extcalc::add(F, extcalc::wedge(gamma[i][j], omega[j]));
    worst = std::max(worst, max_coeff_norm(F, p));
  }
  return worst;
}

metric::CurvatureData frame_curvature(const FrameBundlePatch& P,
                                      const VectorXd& p) {
  VectorXd x = p.head(P.d);
  metric::AdaptedFrame frame{phi_value(P, p), x};
  return metric::riemann(P.base, x, frame);
}

double gamma_structure_residual(const FrameBundlePatch& P, const VectorXd& p) {
  auto omega = omega_forms(P);
  auto gamma = gamma_forms(P);
  metric::CurvatureData C = frame_curvature(P, p);
  double worst = 0.0;
  for (int i = 0; i < P.d; ++i)
    for (int j = 0; j < P.d; ++j) {
      extcalc::FormField F = extcalc::d(gamma[i][j]);
      for (int k = 0; k < P.d; ++k)
        F = extcalc::add(F, extcalc::wedge(gamma[i][k], gamma[k][j]));
      for (int k = 0; k < P.d; ++k)
        for (int l = 0; l < P.d; ++l)
          F = extcalc::add(F,
                           extcalc::scale(-0.5 * C.Riem(i, j, k, l),
                                          extcalc::wedge(omega[k], omega[l])));
      worst = std::max(worst, max_coeff_norm(F, p));
    }
  return worst;
}

LambdaForms lambda_forms(const FrameBundlePatch& P) {
  auto omega = omega_forms(P);
  auto gamma = gamma_forms(P);
  LambdaForms L;
  L.lambda0 = extcalc::scale(0.5, omega[0]);
  for (int i = 1; i < P.d; ++i)
    L.lambda.push_back(extcalc::scale(
        0.5, extcalc::add(omega[i], extcalc::scale(-I, gamma[i][0]))));
  return L;
}

double lambda0_residual(const FrameBundlePatch& P, const VectorXd& p) {
  LambdaForms L = lambda_forms(P);
  extcalc::FormField F = extcalc::d(L.lambda0);
  for (int i = 1; i < P.d; ++i)
    F = extcalc::add(
        F, extcalc::scale(-I * P.base.sig.eps[i],
                          extcalc::wedge(L.lambda[i - 1],
                                         extcalc::conj(L.lambda[i - 1]))));
  return max_coeff_norm(F, p);
}

double lambda_residual(const FrameBundlePatch& P, const VectorXd& p) {
  auto omega = omega_forms(P);
  auto gamma = gamma_forms(P);
  LambdaForms L = lambda_forms(P);
  metric::CurvatureData C = frame_curvature(P, p);
  double worst = 0.0;
  for (int i = 1; i < P.d; ++i) {
    extcalc::FormField F = extcalc::d(L.lambda[i - 1]);
    // + (gamma^i_0 + i R^i_{0k0} omega^k) ^ lambda^0
    extcalc::FormField xi = gamma[i][0];
    for (int k = 1; k < P.d; ++k)
      xi = extcalc::add(xi, extcalc::scale(I * C.Riem(i, 0, k, 0), omega[k]));
    F = extcalc::add(F, extcalc::wedge(xi, L.lambda0));
    for (int j = 1; j < P.d; ++j)
      F = extcalc::add(F, extcalc::wedge(gamma[i][j], L.lambda[j - 1]));
    for (int k = 1; k < P.d; ++k)
      for (int l = 1; l < P.d; ++l)
        F = extcalc::add(F, extcalc::scale(0.25 * I * C.Riem(i, 0, k, l),
                                           extcalc::wedge(omega[k], omega[l])));
    worst = std::max(worst, max_coeff_norm(F, p));
  }
  return worst;
}

FiberCoord fiber_coord(complex<double> a) {
  FiberCoord fc;
  fc.a = a;
  fc.r = std::abs(a);
  fc.z_plus = 1.0 - I * fc.r + a;
  fc.z_minus = 1.0 - I * fc.r - a;
  return fc;
}

EtaForms eta_forms(const FrameBundlePatch& P) {
  LambdaForms L = lambda_forms(P);
  auto a = a_coeff(P), r = r_coeff(P);
  extcalc::Coeff one_minus_ir = [r](const HD2Vec& p) {
    return CHD2(1.0) - CHD2(I) * r(p);
  };
  EtaForms E;
  E.eta0 = L.lambda0;
  for (int i = 0; i < P.n; ++i)
    E.eta.push_back(extcalc::sub(
        extcalc::mul(one_minus_ir, L.lambda[i]),
        extcalc::mul(a, extcalc::conj(L.lambda[i]))));
  return E;
}

Pseudoconnection pseudoconnection(const FrameBundlePatch& P,
                                  const VectorXd& anchor, bool ricci_shift) {
  EtaForms E = eta_forms(P);
  auto omega = omega_forms(P);
  auto gamma = gamma_forms(P);
  metric::CurvatureData C = frame_curvature(P, anchor);
  auto a = a_coeff(P), zm = zminus_coeff(P), zp = zplus_coeff(P);
  extcalc::Coeff abar = [a](const HD2Vec& p) { return conj(a(p)); };
  extcalc::Coeff zm_abs2 = [zm](const HD2Vec& p) {
    CHD2 z = zm(p);
    return z * conj(z);
  };
  extcalc::Coeff zm_sq = [zm](const HD2Vec& p) {
    CHD2 z = zm(p);
    return z * z;
  };
  extcalc::Coeff zp_cube = [zp](const HD2Vec& p) {
    CHD2 z = zp(p);
    return z * z * z;
  };
  extcalc::FormField da = da_form(P, false), dabar = da_form(P, true);
  extcalc::FormField dr = dr_form(P);

  Pseudoconnection pc;
  pc.ricci_shift = ricci_shift;

  pc.sigma = form_sum(
      P.dim, 1,
      {extcalc::scale(-I, dr),
       extcalc::scale(0.5, extcalc::sub(extcalc::mul(a, dabar),
                                        extcalc::mul(abar, da))),
       extcalc::scale(0.5 * I, extcalc::mul(zm_abs2, E.eta0))});

  extcalc::Coeff one_minus_ir = [P](const HD2Vec& p) {
    return CHD2(1.0) - CHD2(I) * r_coeff(P)(p);
  };
  pc.kappa = form_sum(
      P.dim, 1,
      {extcalc::scale(-I, extcalc::mul(a, dr)),
       extcalc::scale(-1.0, extcalc::mul(one_minus_ir, da)),
       extcalc::scale(-0.5 * I, extcalc::mul(zm_sq, E.eta0))});
  if (ricci_shift) {
    extcalc::FormField ric = extcalc::zero_form(P.dim, 1);
    for (int k = 1; k < P.d; ++k)
      ric = extcalc::add(ric, extcalc::scale(C.RicScaled(0, k),
                                             extcalc::conj(E.eta[k - 1])));
    pc.kappa = extcalc::add(
        pc.kappa, extcalc::scale(-0.25 * I, extcalc::mul(zp_cube, ric)));
  }

  for (int i = 1; i < P.d; ++i) {
    extcalc::FormField rw = extcalc::zero_form(P.dim, 1);
    for (int k = 1; k < P.d; ++k)
      rw = extcalc::add(rw, extcalc::scale(C.Riem(i, 0, k, 0), omega[k]));
    extcalc::FormField z = form_sum(
        P.dim, 1,
        {extcalc::scale(0.5 * I, extcalc::mul(zm_abs2, E.eta[i - 1])),
         extcalc::scale(-0.5 * I,
                        extcalc::mul(zm_sq, extcalc::conj(E.eta[i - 1]))),
         extcalc::scale(-1.0, extcalc::mul(zm, gamma[i][0])),
         extcalc::scale(-I, extcalc::mul(zp, rw))});
    pc.zeta.push_back(z);
  }
  return pc;
}

double eta0_residual(const FrameBundlePatch& P, const VectorXd& p) {
  EtaForms E = eta_forms(P);
  Pseudoconnection pc = pseudoconnection(P, p, true);
  extcalc::FormField F = extcalc::d(E.eta0);
  F = extcalc::sub(
      F, extcalc::wedge(extcalc::add(pc.sigma, extcalc::conj(pc.sigma)),
                        E.eta0));
  for (int i = 1; i < P.d; ++i)
    F = extcalc::add(
        F, extcalc::scale(-I * P.base.sig.eps[i],
                          extcalc::wedge(E.eta[i - 1],
                                         extcalc::conj(E.eta[i - 1]))));
  return max_coeff_norm(F, p);
}

std::vector<extcalc::FormField> eta_coframe(const FrameBundlePatch& P) {
  EtaForms E = eta_forms(P);
  auto gamma = gamma_forms(P);
  std::vector<extcalc::FormField> co;
  co.push_back(E.eta0);
  for (int i = 0; i < P.n; ++i) co.push_back(E.eta[i]);
  for (int i = 0; i < P.n; ++i) co.push_back(extcalc::conj(E.eta[i]));
  for (int i = 1; i < P.d; ++i)
    for (int j = i + 1; j < P.d; ++j) co.push_back(gamma[i][j]);
  co.push_back(da_form(P, false));
  co.push_back(da_form(P, true));
  return co;
}

CArr3 zero_arr3(int n) {
  return CArr3(n, std::vector<std::vector<complex<double>>>(
                      n, std::vector<complex<double>>(n, 0.0)));
}

double arr3_norm(const CArr3& a) {
  double s = 0.0;
  for (const auto& m : a)
    for (const auto& row : m)
      for (auto v : row) s += std::norm(v);
  return std::sqrt(s);
}

static CArr3 antisymmetrize(const CArr3& a) {
  int n = static_cast<int>(a.size());
  CArr3 out = zero_arr3(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) out[i][k][l] = 0.5 * (a[i][k][l] - a[i][l][k]);
  return out;
}

static CArr3 arr3_sub(const CArr3& a, const CArr3& b) {
  int n = static_cast<int>(a.size());
  CArr3 out = zero_arr3(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) out[i][k][l] = a[i][k][l] - b[i][k][l];
  return out;
}

OPQ closed_form_torsion(const FrameBundlePatch& P, const VectorXd& p,
                        bool ricci_shift) {
  metric::CurvatureData C = frame_curvature(P, p);
  FiberCoord fc = fiber_coord({p[P.d + P.D], p[P.d + P.D + 1]});
  complex<double> zp = fc.z_plus, zpb = std::conj(zp);
  OPQ t{zero_arr3(P.n), zero_arr3(P.n), zero_arr3(P.n)};
  for (int i = 0; i < P.n; ++i)
    for (int k = 0; k < P.n; ++k)
      for (int l = 0; l < P.n; ++l) {
        double R = C.Riem(i + 1, 0, k + 1, l + 1);
        double Cw = ricci_shift ? C.CAdjusted(i + 1, 0, k + 1, l + 1) : R;
        t.O[i][k][l] = -0.25 * I * zp * zpb * zpb * R;
        t.P[i][k][l] = -0.5 * I * zp * zp * zpb * R;
        t.Q[i][k][l] = -0.25 * I * zp * zp * zp * Cw;
      }
  return t;
}

TorsionReport torsion_oracle(const FrameBundlePatch& P, const VectorXd& p,
                             bool ricci_shift) {
  EtaForms E = eta_forms(P);
  auto gamma = gamma_forms(P);
  Pseudoconnection pc = pseudoconnection(P, p, ricci_shift);
  std::vector<extcalc::FormField> co = eta_coframe(P);

  TorsionReport rep;
  rep.point = p;
  rep.fc = fiber_coord({p[P.d + P.D], p[P.d + P.D + 1]});
  rep.O_num = zero_arr3(P.n);
  rep.P_num = zero_arr3(P.n);
  rep.Q_num = zero_arr3(P.n);

  int n = P.n;
  for (int i = 1; i < P.d; ++i) {
    extcalc::FormField F = extcalc::d(E.eta[i - 1]);
    F = extcalc::sub(F, extcalc::wedge(pc.zeta[i - 1], E.eta0));
    F = extcalc::sub(F, extcalc::wedge(pc.sigma, E.eta[i - 1]));
    for (int j = 1; j < P.d; ++j)
      F = extcalc::add(F, extcalc::wedge(gamma[i][j], E.eta[j - 1]));
    F = extcalc::sub(F, extcalc::wedge(pc.kappa, extcalc::conj(E.eta[i - 1])));

    MatrixXcd c = extcalc::expand_2form(F, co, p);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        if (k < l) {
          rep.O_num[i - 1][k][l] = 0.5 * c(1 + k, 1 + l);
          rep.O_num[i - 1][l][k] = -0.5 * c(1 + k, 1 + l);
          rep.Q_num[i - 1][k][l] = 0.5 * c(1 + n + k, 1 + n + l);
          rep.Q_num[i - 1][l][k] = -0.5 * c(1 + n + k, 1 + n + l);
        }
        rep.P_num[i - 1][k][l] = c(1 + k, 1 + n + l);
      }
    double leak = 0.0;
    for (int a = 0; a < P.dim; ++a)
      for (int b = a + 1; b < P.dim; ++b)
        if (a == 0 || b > 2 * n) leak += std::norm(c(a, b));
    rep.leakage += std::sqrt(leak);
  }

  OPQ f = closed_form_torsion(P, p, ricci_shift);
  rep.O_formula = f.O;
  rep.P_formula = f.P;
  rep.Q_formula = f.Q;
  rep.dO = arr3_norm(arr3_sub(rep.O_num, antisymmetrize(f.O)));
  rep.dP = arr3_norm(arr3_sub(rep.P_num, f.P));
  rep.dQ = arr3_norm(arr3_sub(rep.Q_num, antisymmetrize(f.Q)));
  return rep;
}

OPQ se2_torsion(const CArr3& M, const CArr3& N, const CArr3& R,
                const FiberCoord& fc) {
  int n = static_cast<int>(M.size());
  complex<double> a = fc.a, ab = std::conj(a);
  double r = fc.r, r2 = r * r;
  complex<double> a0 = 1.0 + I * r, a0b = 1.0 - I * r;
  double n0 = std::norm(a0);  // |a0|^2
  OPQ t{zero_arr3(n), zero_arr3(n), zero_arr3(n)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        complex<double> Mv = M[i][k][l], Mlk = M[i][l][k];
        complex<double> Nv = N[i][k][l], Nlk = N[i][l][k];
        complex<double> Rv = R[i][k][l];
        t.O[i][k][l] = -0.5 * I * (1.0 + 2.0 * r2) * (a0 * Rv + ab * std::conj(Rv)) +
                       ab * n0 * Mv + a0b * ab * ab * Nv - a0 * r2 * std::conj(Mv) -
                       a * a0 * a0 * std::conj(Nv);
        t.P[i][k][l] =
            -0.5 * I * (1.0 + 2.0 * r2) * (a0b * std::conj(Rv) + a * Rv) +
            a0b * n0 * Mv - a0b * r2 * Mlk + 2.0 * ab * a0b * a0b * Nv +
            a * n0 * std::conj(Mlk) - a * r2 * std::conj(Mv) +
            2.0 * a0 * a * a * std::conj(Nlk) -
            I * a * (a0 * Rv + ab * std::conj(Rv));
        t.Q[i][k][l] = a * a0b * a0b * Mv + a0b * a0b * a0b * Nv -
                       a0b * a * a * std::conj(Mv) - a * a * a * std::conj(Nv) -
                       I * a * (a0b * std::conj(Rv) + a * Rv);
      }
  return t;
}

OPQ slgse_torsion(const CArr3& M, const CArr3& N, const MatrixXcd& A,
                  const VectorXd& eps) {
  int n = static_cast<int>(M.size());
  if (A.rows() != n || A.cols() != n || eps.size() != n)
    throw std::invalid_argument("slgse_torsion: shape mismatch");
  if ((A - A.transpose()).norm() > 1e-10)
    throw std::invalid_argument("slgse_torsion: A must be symmetric");
  MatrixXcd S = MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i) S(k, l) += eps[i] * A(i, k) * std::conj(A(i, l));
  double r2 = (eps[0] * S(0, 0)).real();
  MatrixXcd target = MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) target(k, k) = r2 * eps[k];
  if ((S - target).norm() > 1e-8)
    throw std::invalid_argument(
        "slgse_torsion: A violates eps A conj(A) = r^2 eps");
  double r = std::sqrt(std::max(0.0, r2));
  complex<double> a0 = 1.0 + I * r, a0b = 1.0 - I * r;
  double n0 = std::norm(a0);
  OPQ t{zero_arr3(n), zero_arr3(n), zero_arr3(n)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        complex<double> O = 0.0, Pv = 0.0, Q = 0.0;
        for (int m = 0; m < n; ++m) {
          O += n0 * M[i][k][m] * std::conj(A(m, l));
          Q += a0b * a0b * M[i][m][l] * A(m, k);
          Pv += 2.0 * a0b * a0b * N[i][m][l] * std::conj(A(m, k));
          for (int mm = 0; mm < n; ++mm) {
            O += a0b * N[i][m][mm] * std::conj(A(m, k)) * std::conj(A(mm, l));
            Pv += -a0b * M[i][m][mm] * A(m, l) * std::conj(A(mm, k));
          }
        }
        Q += a0b * a0b * a0b * N[i][k][l];
        Pv += a0b * n0 * M[i][k][l];
        for (int j = 0; j < n; ++j) {
          O -= a0 * A(i, j) * a0 * std::conj(N[j][k][l]);
          Pv += A(i, j) * n0 * std::conj(M[j][l][k]);
          for (int m = 0; m < n; ++m) {
            O -= a0 * A(i, j) * std::conj(M[j][m][l]) * std::conj(A(m, k));
            Pv += A(i, j) * 2.0 * a0 * std::conj(N[j][m][k]) * A(m, l);
            Q -= A(i, j) * A(m, l) * a0b * std::conj(M[j][k][m]);
            for (int mm = 0; mm < n; ++mm) {
              Pv -= A(i, j) * std::conj(M[j][m][mm]) * std::conj(A(m, k)) * A(mm, l);
              Q -= A(i, j) * A(mm, l) * std::conj(N[j][m][mm]) * A(m, k);
            }
          }
        }
        t.O[i][k][l] = O;
        t.P[i][k][l] = Pv;
        t.Q[i][k][l] = Q;
      }
  return t;
}

static double tensor4_norm(const metric::Tensor4& T) {
  double s = 0.0;
  for (double v : T.v) s += v * v;
  return std::sqrt(s);
}

ConformalRow conformal_flatness_report(const std::string& name,
                                       const metric::MetricField& M,
                                       int samples, std::uint64_t seed) {
  FrameBundlePatch P = make_patch(M);
  SplitMix64 rng(seed);
  ConformalRow row;
  row.name = name;
  for (int s = 0; s < samples; ++s) {
    VectorXd p = sample_point(P, rng);
    TorsionReport rep = torsion_oracle(P, p, true);
    metric::CurvatureData C = frame_curvature(P, p);
    row.q_num = std::max(row.q_num, arr3_norm(rep.Q_num));
    row.q_formula = std::max(row.q_formula, arr3_norm(antisymmetrize(rep.Q_formula)));
    double cs = 0.0;
    for (int i = 0; i < P.d; ++i)
      for (int k = 1; k < P.d; ++k)
        for (int l = 1; l < P.d; ++l) {
          double v = C.CAdjusted(i, 0, k, l);
          cs += v * v;
        }
    row.c_adjusted = std::max(row.c_adjusted, std::sqrt(cs));
    row.weyl = std::max(row.weyl, tensor4_norm(C.Weyl));
  }
  return row;
}

QuatSkeleton quaternionic_skeleton(const metric::MetricField& M,
                                   const VectorXd& p) {
  if (M.sig.q != M.sig.p_plus_1 - 1)
    throw std::invalid_argument("quaternionic skeleton needs signature (p+1,p)");
  int half = M.sig.q;
  int n = 2 * half;
  FrameBundlePatch P = make_patch(M);

  QuatSkeleton out;
  // abstract block maps on (X_1..X_n, V_1..V_n)
  MatrixXd J = MatrixXd::Zero(2 * n, 2 * n), K = MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    J(n + i, i) = 1.0;
    J(i, n + i) = -1.0;
  }
  for (int i = 0; i < half; ++i) {
    K(half + i, i) = 1.0;           // X_i -> X_{p+i}
    K(i, half + i) = -1.0;          // X_{p+i} -> -X_i
    K(n + half + i, n + i) = -1.0;  // V_i -> -V_{p+i}
    K(n + i, n + half + i) = 1.0;   // V_{p+i} -> V_i
  }
  out.K2_residual = (K * K + MatrixXd::Identity(2 * n, 2 * n)).norm();
  out.JK_residual = (J * K + K * J).norm();

  out.dlambda0_residual = lambda0_residual(P, p);

  // quaternionic tautological forms with diagonal fiber coordinate
  LambdaForms L = lambda_forms(P);
  auto a = a_coeff(P), r = r_coeff(P);
  extcalc::Coeff inv1r2 = [r](const HD2Vec& q) {
    CHD2 rr = r(q);
    return CHD2(1.0) / (CHD2(1.0) + rr * rr);
  };
  extcalc::FormField eta0 = extcalc::mul(inv1r2, L.lambda0);
  std::vector<extcalc::FormField> eta(n);
  for (int i = 0; i < half; ++i) {
    eta[i] = extcalc::mul(
        inv1r2, extcalc::add(L.lambda[i],
                             extcalc::mul(a, extcalc::conj(L.lambda[half + i]))));
    eta[half + i] = extcalc::mul(
        inv1r2, extcalc::sub(L.lambda[half + i],
                             extcalc::mul(a, extcalc::conj(L.lambda[i]))));
  }
  extcalc::Coeff fiber_factor = [r](const HD2Vec& q) {
    CHD2 rr = r(q);
    return CHD2(-2.0) * rr / (CHD2(1.0) + rr * rr);
  };
  extcalc::FormField F = extcalc::d(eta0);
  F = extcalc::sub(
      F, extcalc::wedge(extcalc::mul(fiber_factor, dr_form(P)), eta0));
  for (int i = 0; i < n; ++i) {
    double eps = (i < half) ? 1.0 : -1.0;
    F = extcalc::add(F, extcalc::scale(-I * eps,
                                       extcalc::wedge(eta[i],
                                                      extcalc::conj(eta[i]))));
  }
  out.deta0_residual = max_coeff_norm(F, p);
  return out;
}

VectorXd sample_point(const FrameBundlePatch& P, SplitMix64& rng) {
  VectorXd p = VectorXd::Zero(P.dim);
  for (int i = 0; i < P.d; ++i) {
    auto [lo, hi] = P.base.chart[i];
    double margin = 0.25 * (hi - lo);
    p[i] = rng.uniform(lo + margin, hi - margin);
  }
  for (int a = 0; a < P.D; ++a) p[P.d + a] = rng.uniform(-0.3, 0.3);
  for (int tries = 0; tries < 100; ++tries) {
    double re = rng.uniform(-0.6, 0.6), im = rng.uniform(-0.6, 0.6);
    double r = std::hypot(re, im);
    if (r > 0.05 && r < 0.6) {
      p[P.d + P.D] = re;
      p[P.d + P.D + 1] = im;
      return p;
    }
  }
  throw std::runtime_error("sample_point: fiber sampling failed");
}

}  // namespace lcl::lcontact
