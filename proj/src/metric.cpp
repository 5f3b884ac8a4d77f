#include "lcl/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lcl/rng.hpp"

namespace lcl::metric {

Signature make_signature(int p_plus_1, int q) {
  if (p_plus_1 < 1 || q < 0)
    throw std::invalid_argument("make_signature: need p+1 >= 1, q >= 0");
  Signature s;
  s.p_plus_1 = p_plus_1;
  s.q = q;
  s.eps.resize(p_plus_1 + q);
  for (int i = 0; i < p_plus_1 + q; ++i) s.eps(i) = (i < p_plus_1) ? 1.0 : -1.0;
  return s;
}

bool MetricField::in_chart(const Eigen::VectorXd& x) const {
  if (x.size() != dim) return false;
  for (int i = 0; i < dim; ++i)
    if (x(i) <= chart[i][0] || x(i) >= chart[i][1]) return false;
  return true;
}

namespace {

std::vector<std::array<double, 2>> default_chart(int d) {
  return std::vector<std::array<double, 2>>(d, {-0.8, 0.8});
}

HD2Mat eval(const MetricField& M, const HD2Vec& x) {
  HD2Mat g = M.components(x);
  if (static_cast<int>(g.size()) != M.dim)
    throw std::runtime_error("metric components returned wrong dimension");
  return g;
}

void require_chart(const MetricField& M, const Eigen::VectorXd& x) {
  if (!M.in_chart(x))
    throw std::out_of_range("metric: point outside the chart box");
}

std::vector<double> to_std(const Eigen::VectorXd& x) {
  return {x.data(), x.data() + x.size()};
}

}  // namespace

Eigen::MatrixXd metric_at(const MetricField& M, const Eigen::VectorXd& x) {
  require_chart(M, x);
  HD2Mat g = eval(M, lift_point(to_std(x)));
  Eigen::MatrixXd out(M.dim, M.dim);
  for (int i = 0; i < M.dim; ++i)
    for (int j = 0; j < M.dim; ++j) out(i, j) = g[i][j].v;
  return out;
}

Eigen::MatrixXd metric_partial(const MetricField& M, const Eigen::VectorXd& x,
                               int a) {
  require_chart(M, x);
  HD2Mat g = eval(M, lift_coordinate(to_std(x), a, a));
  Eigen::MatrixXd out(M.dim, M.dim);
  for (int i = 0; i < M.dim; ++i)
    for (int j = 0; j < M.dim; ++j) out(i, j) = g[i][j].d1;
  return out;
}

// -------------------------------------------------------------------------
// catalog

namespace {

HD2 poly_eval(const std::vector<double>& c, const HD2Vec& x) {
  // c = (constant, linear terms, optional squares)
  int d = static_cast<int>(x.size());
  HD2 f(c.empty() ? 0.0 : c[0]);
  for (int i = 0; i < d && i + 1 < static_cast<int>(c.size()); ++i)
    f = f + HD2(c[i + 1]) * x[i];
  for (int i = 0; i < d && i + 1 + d < static_cast<int>(c.size()); ++i)
    f = f + HD2(c[i + 1 + d]) * x[i] * x[i];
  return f;
}

MetricField make_flat(const CatalogParams& P) {
  MetricField M;
  M.dim = P.dim;
  M.sig = make_signature(P.dim - P.q, P.q);
  M.chart = default_chart(P.dim);
  Eigen::VectorXd eps = M.sig.eps;
  int d = P.dim;
  M.components = [d, eps](const HD2Vec& x) {
    if (static_cast<int>(x.size()) != d)
      throw std::invalid_argument("flat metric: wrong point dimension");
    HD2Mat g(d, std::vector<HD2>(d, HD2(0.0)));
    for (int i = 0; i < d; ++i) g[i][i] = HD2(eps(i));
    return g;
  };
  return M;
}

MetricField make_conformal(const CatalogParams& P) {
  MetricField M = make_flat(P);
  Eigen::VectorXd eps = M.sig.eps;
  int d = P.dim;
  std::vector<double> c = P.poly;
  if (c.empty()) c = {0.0, 0.1, -0.05};  // mild default exponent
  M.components = [d, eps, c](const HD2Vec& x) {
    HD2 w = lcl::exp(HD2(2.0) * poly_eval(c, x));
    HD2Mat g(d, std::vector<HD2>(d, HD2(0.0)));
    for (int i = 0; i < d; ++i) g[i][i] = w * HD2(eps(i));
    return g;
  };
  return M;
}

// Stereographic round metric 4r^4/(r^2 + s|x|^2)^2 * id with s = +1 for the
// sphere and -1 for hyperbolic space; definite signature.
MetricField make_stereographic(const CatalogParams& P, double s) {
  if (P.q != 0)
    throw std::invalid_argument("stereographic metrics are definite");
  MetricField M = make_flat(P);
  int d = P.dim;
  double r2 = P.radius * P.radius;
  if (r2 <= 0) throw std::invalid_argument("radius must be positive");
  M.components = [d, r2, s](const HD2Vec& x) {
    HD2 n2(0.0);
    for (auto& xi : x) n2 = n2 + xi * xi;
    HD2 den = HD2(r2) + HD2(s) * n2;
    HD2 w = HD2(4.0 * r2 * r2) / (den * den);
    HD2Mat g(d, std::vector<HD2>(d, HD2(0.0)));
    for (int i = 0; i < d; ++i) g[i][i] = w;
    return g;
  };
  return M;
}

MetricField make_product_spheres(const CatalogParams& P) {
  int d1 = P.dim;
  int d2 = P.dim2 > 0 ? P.dim2 : P.dim;
  CatalogParams P1 = P;
  P1.q = 0;
  MetricField S1 = make_stereographic(P1, +1.0);
  CatalogParams P2 = P1;
  P2.dim = d2;
  MetricField S2 = make_stereographic(P2, +1.0);
  MetricField M;
  M.dim = d1 + d2;
  M.sig = make_signature(d1 + d2, 0);
  M.chart = default_chart(d1 + d2);
  M.components = [d1, d2, S1, S2](const HD2Vec& x) {
    HD2Vec x1(x.begin(), x.begin() + d1);
    HD2Vec x2(x.begin() + d1, x.end());
    HD2Mat g1 = S1.components(x1);
    HD2Mat g2 = S2.components(x2);
    int d = d1 + d2;
    HD2Mat g(d, std::vector<HD2>(d, HD2(0.0)));
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j) g[i][j] = g1[i][j];
    for (int i = 0; i < d2; ++i)
      for (int j = 0; j < d2; ++j) g[d1 + i][d1 + j] = g2[i][j];
    return g;
  };
  return M;
}

MetricField make_random_poly(const CatalogParams& P) {
  MetricField M = make_flat(P);
  int d = P.dim;
  Eigen::VectorXd eps = M.sig.eps;
  SplitMix64 rng(P.seed);
  // symmetric quadratic perturbation: p_ij(x) = a + b.x + x^t Q x
  int nterm = 1 + d + d * d;
  std::vector<std::vector<double>> coeff(d * d);
  double scale = P.amplitude / (1.0 + d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      std::vector<double> c(nterm);
      for (auto& v : c) v = rng.uniform(-scale, scale);
      coeff[i * d + j] = c;
      coeff[j * d + i] = c;
    }
  M.components = [d, eps, coeff](const HD2Vec& x) {
    HD2Mat g(d, std::vector<HD2>(d, HD2(0.0)));
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        const auto& c = coeff[i * d + j];
        HD2 p(c[0]);
        for (int a = 0; a < d; ++a) p = p + HD2(c[1 + a]) * x[a];
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            p = p + HD2(c[1 + d + a * d + b]) * x[a] * x[b];
        g[i][j] = p;
        g[j][i] = p;
        if (i == j) g[i][i] = g[i][i] + HD2(eps(i));
      }
    return g;
  };
  // nondegeneracy sweep over the chart
  SplitMix64 sweep(P.seed ^ 0x5DEECE66Dull);
  for (int s = 0; s < 100; ++s) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i)
      x(i) = sweep.uniform(M.chart[i][0] + 1e-6, M.chart[i][1] - 1e-6);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(metric_at(M, x));
    if (es.eigenvalues().cwiseAbs().minCoeff() < 0.3)
      throw std::runtime_error("random_poly: metric nearly degenerate on chart");
  }
  return M;
}

}  // namespace

MetricField catalog(const std::string& name, const CatalogParams& P) {
  if (P.dim < 2) throw std::invalid_argument("catalog: need dim >= 2");
  if (name == "flat") return make_flat(P);
  if (name == "conformal") return make_conformal(P);
  if (name == "sphere") return make_stereographic(P, +1.0);
  if (name == "hyperbolic") return make_stereographic(P, -1.0);
  if (name == "product_spheres") return make_product_spheres(P);
  if (name == "random_poly") return make_random_poly(P);
  throw std::invalid_argument("catalog: unknown metric '" + name + "'");
}

MetricField metric_from_json(const nlohmann::json& cfg) {
  CatalogParams P;
  std::string name = cfg.at("name").get<std::string>();
  P.dim = cfg.at("dim").get<int>();
  if (cfg.contains("signature")) {
    auto sig = cfg.at("signature");
    int pp1 = sig.at(0).get<int>();
    P.q = sig.at(1).get<int>();
    if (pp1 + P.q != P.dim)
      throw std::invalid_argument("metric_from_json: signature vs dim mismatch");
  }
  if (cfg.contains("params")) {
    const auto& pr = cfg.at("params");
    if (pr.contains("poly")) P.poly = pr.at("poly").get<std::vector<double>>();
    if (pr.contains("radius")) P.radius = pr.at("radius").get<double>();
    if (pr.contains("dim2")) P.dim2 = pr.at("dim2").get<int>();
    if (pr.contains("seed")) P.seed = pr.at("seed").get<std::uint64_t>();
    if (pr.contains("amplitude"))
      P.amplitude = pr.at("amplitude").get<double>();
  }
  MetricField M = catalog(name, P);
  if (cfg.contains("chart")) {
    auto box = cfg.at("chart").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(box.size()) != M.dim)
      throw std::invalid_argument("metric_from_json: chart box wrong size");
    for (int i = 0; i < M.dim; ++i) {
      if (box[i].size() != 2 || box[i][0] >= box[i][1])
        throw std::invalid_argument("metric_from_json: bad chart interval");
      M.chart[i] = {box[i][0], box[i][1]};
    }
  }
  return M;
}

// -------------------------------------------------------------------------
// Levi-Civita data

namespace {

struct MetricJet {
  Eigen::MatrixXd g;
  Eigen::MatrixXd ginv;
  std::vector<Eigen::MatrixXd> dg;                 // dg[a](i,j) = d_a g_ij
  std::vector<std::vector<Eigen::MatrixXd>> ddg;   // ddg[a][b] = d_a d_b g
  std::vector<Eigen::MatrixXd> dginv;              // d_a g^{-1}
};

MetricJet metric_jet(const MetricField& M, const Eigen::VectorXd& x,
                     bool second) {
  require_chart(M, x);
  int d = M.dim;
  MetricJet J;
  J.g.resize(d, d);
  J.dg.assign(d, Eigen::MatrixXd::Zero(d, d));
  if (second) J.ddg.assign(d, std::vector<Eigen::MatrixXd>(d));
  auto xs = to_std(x);
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      if (!second && b > a) break;
      HD2Mat g = eval(M, lift_coordinate(xs, a, b));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          if (a == 0 && b == a) J.g(i, j) = g[i][j].v;
          if (b == a) J.dg[a](i, j) = g[i][j].d1;
        }
      if (second) {
        Eigen::MatrixXd h(d, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) h(i, j) = g[i][j].d12;
        J.ddg[a][b] = h;
        J.ddg[b][a] = h;
      }
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(J.g);
  if (!lu.isInvertible())
    throw std::runtime_error("metric singular at the requested point");
  J.ginv = lu.inverse();
  if (second) {
    J.dginv.assign(d, Eigen::MatrixXd());
    for (int a = 0; a < d; ++a) J.dginv[a] = -J.ginv * J.dg[a] * J.ginv;
  }
  return J;
}

std::vector<Eigen::MatrixXd> christoffel_from_jet(const MetricJet& J, int d) {
  std::vector<Eigen::MatrixXd> G(d, Eigen::MatrixXd::Zero(d, d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l)
          s += J.ginv(k, l) *
               (J.dg[i](j, l) + J.dg[j](i, l) - J.dg[l](i, j));
        G[k](i, j) = 0.5 * s;
      }
  return G;
}

}  // namespace

std::vector<Eigen::MatrixXd> christoffel(const MetricField& M,
                                         const Eigen::VectorXd& x) {
  MetricJet J = metric_jet(M, x, false);
  return christoffel_from_jet(J, M.dim);
}

Tensor4 riemann_coord(const MetricField& M, const Eigen::VectorXd& x) {
  int d = M.dim;
  MetricJet J = metric_jet(M, x, true);
  std::vector<Eigen::MatrixXd> G = christoffel_from_jet(J, d);
  // dG[m][k](i,j) = d_m Gamma^k_ij
  std::vector<std::vector<Eigen::MatrixXd>> dG(
      d, std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(d, d)));
  for (int m = 0; m < d; ++m)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) {
            s += J.dginv[m](k, l) *
                 (J.dg[i](j, l) + J.dg[j](i, l) - J.dg[l](i, j));
            s += J.ginv(k, l) * (J.ddg[m][i](j, l) + J.ddg[m][j](i, l) -
                                 J.ddg[m][l](i, j));
          }
          dG[m][k](i, j) = 0.5 * s;
        }
  Tensor4 R(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = dG[k][i](l, j) - dG[l][i](k, j);
          for (int m = 0; m < d; ++m)
            s += G[i](k, m) * G[m](l, j) - G[i](l, m) * G[m](k, j);
          R(i, j, k, l) = s;
        }
  return R;
}

AdaptedFrame adapt_frame(const MetricField& M, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& u) {
  int d = M.dim;
  Eigen::MatrixXd g = metric_at(M, x);
  double uu = u.dot(g * u);
  if (std::abs(uu - 1.0) > 1e-10)
    throw std::invalid_argument("adapt_frame: u is not a unit vector");

  // Seed order: u first, then coordinate directions; on breakdown retry with
  // the coordinate seeds rotated.
  for (int attempt = 0; attempt < d; ++attempt) {
    std::vector<Eigen::VectorXd> seeds;
    seeds.push_back(u);
    for (int i = 0; i < d; ++i)
      seeds.push_back(Eigen::VectorXd::Unit(d, (i + attempt) % d));

    std::vector<Eigen::VectorXd> pos, neg;
    std::vector<Eigen::VectorXd> done;
    for (auto& s : seeds) {
      if (static_cast<int>(done.size()) == d) break;
      Eigen::VectorXd v = s;
      for (auto& e : done) {
        double ee = e.dot(g * e);  // +-1
        v -= (v.dot(g * e)) * ee * e;
      }
      double vv = v.dot(g * v);
      if (std::abs(vv) < 1e-9) continue;  // null intermediate, drop the seed
      v /= std::sqrt(std::abs(vv));
      done.push_back(v);
      if (vv > 0)
        pos.push_back(v);
      else
        neg.push_back(v);
    }
    if (static_cast<int>(done.size()) != d) continue;
    if (static_cast<int>(pos.size()) != M.sig.p_plus_1 ||
        static_cast<int>(neg.size()) != M.sig.q)
      continue;  // signature mismatch: numerically marginal seed, retry
    // Order columns to match sig.eps: positives first (u is positive since
    // g(u,u) = 1), then negatives.
    AdaptedFrame F;
    F.x = x;
    F.e.resize(d, d);
    int col = 0;
    for (auto& v : pos) F.e.col(col++) = v;
    for (auto& v : neg) F.e.col(col++) = v;
    return F;
  }
  throw std::runtime_error("adapt_frame: Gram-Schmidt breakdown");
}

CurvatureData riemann(const MetricField& M, const Eigen::VectorXd& x,
                      const AdaptedFrame& frame) {
  int d = M.dim;
  if ((frame.x - x).norm() > 1e-14)
    throw std::invalid_argument("riemann: frame based at a different point");
  CurvatureData C;
  C.point = x;
  MetricJet J = metric_jet(M, x, true);
  C.Gamma = christoffel_from_jet(J, d);
  Tensor4 Rc = riemann_coord(M, x);

  const Eigen::MatrixXd& e = frame.e;
  // e^t g e = diag(eps)  =>  e^{-1} = diag(eps) e^t g
  Eigen::MatrixXd einv =
      M.sig.eps.asDiagonal() * e.transpose() * J.g;
  Tensor4 R(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
              for (int c = 0; c < d; ++c)
                for (int f = 0; f < d; ++f)
                  s += einv(i, a) * Rc(a, b, c, f) * e(b, j) * e(c, k) *
                       e(f, l);
          R(i, j, k, l) = s;
        }
  C.Riem = R;

  const Eigen::VectorXd& eps = M.sig.eps;
  C.RicStd.setZero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double s = 0.0;
      for (int m = 0; m < d; ++m) s += R(m, j, m, k);
      C.RicStd(j, k) = s;
    }
  C.scalar = 0.0;
  for (int j = 0; j < d; ++j) C.scalar += eps(j) * C.RicStd(j, j);
  C.RicScaled.setZero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double s = 0.0;
      for (int m = 0; m < d; ++m) s += eps(m) * R(m, j, m, k);
      C.RicScaled(j, k) = s / d;  // base dim = n + 1, normalization 1/(n+1)
    }
  C.CAdjusted = Tensor4(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          C.CAdjusted(i, j, k, l) =
              R(i, j, k, l) - (i == k ? eps(i) * C.RicScaled(j, l) : 0.0);

  // Standard Weyl (frame components, indefinite signature):
  // W_ijkl = R_ijkl - (h_ik S_jl - h_il S_jk + h_jl S_ik - h_jk S_il)
  //          with S the Schouten-like combination.
  C.Weyl = Tensor4(d);
  if (d >= 3) {
    auto h = [&](int i, int j) { return i == j ? eps(i) : 0.0; };
    Eigen::MatrixXd Ric = C.RicStd;
    double S = C.scalar;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            double Rl = eps(i) * R(i, j, k, l);  // lower first index
            double t =
                Rl -
                (h(i, k) * Ric(j, l) - h(i, l) * Ric(j, k) +
                 h(j, l) * Ric(i, k) - h(j, k) * Ric(i, l)) /
                    (d - 2) +
                S * (h(i, k) * h(j, l) - h(i, l) * h(j, k)) /
                    ((d - 1) * (d - 2));
            C.Weyl(i, j, k, l) = eps(i) * t;  // raise it back
          }
  }
  return C;
}

}  // namespace lcl::metric
