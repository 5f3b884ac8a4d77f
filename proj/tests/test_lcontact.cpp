#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>

#include "doctest.h"
#include "lcl/lcontact.hpp"
#include "lcl/utbundle.hpp"

using namespace lcl;
using lcontact::FrameBundlePatch;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using std::complex;

namespace {

const complex<double> I(0.0, 1.0);

double eval1(const extcalc::FormField& F, const VectorXd& p, int m) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(p.size());
  e(m) = 1.0;
  return std::abs(extcalc::evaluate(F, p, {e}));
}

double one_form_gap(const extcalc::FormField& F, const extcalc::FormField& G,
                    const VectorXd& p) {
  double worst = 0.0;
  for (int m = 0; m < p.size(); ++m)
    worst = std::max(worst, std::abs(eval1(F, p, m) - eval1(G, p, m)));
  return worst;
}

MatrixXd eps_diag(const metric::MetricField& M) {
  MatrixXd E = MatrixXd::Zero(M.dim, M.dim);
  for (int i = 0; i < M.dim; ++i) E(i, i) = M.sig.eps[i];
  return E;
}

lcontact::CArr3 random_arr3(int n, SplitMix64& rng) {
  auto a = lcontact::zero_arr3(n);
  for (auto& m : a)
    for (auto& row : m)
      for (auto& v : row) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return a;
}

double arr3_gap(const lcontact::CArr3& a, const lcontact::CArr3& b) {
  double s = 0.0;
  int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) s = std::max(s, std::abs(a[i][k][l] - b[i][k][l]));
  return s;
}

}  // namespace

TEST_CASE("frame map is orthonormal and invertible") {
  metric::CatalogParams cp;
  cp.poly = {0.0, 0.3, -0.2, 0.1, 0.05, 0.1, -0.08};
  for (const char* name : {"flat", "conformal", "sphere"}) {
    metric::CatalogParams use = cp;
    if (std::string(name) == "conformal") use.q = 1;
    FrameBundlePatch P = lcontact::make_patch(metric::catalog(name, use));
    SplitMix64 rng(7);
    for (int s = 0; s < 4; ++s) {
      VectorXd p = lcontact::sample_point(P, rng);
      MatrixXd phi = lcontact::phi_value(P, p);
      MatrixXd g = metric::metric_at(P.base, p.head(P.d));
      CHECK((phi.transpose() * g * phi - eps_diag(P.base)).norm() ==
            doctest::Approx(0.0).epsilon(1e-10));
      std::vector<double> pv(p.data(), p.data() + p.size());
      MatrixXd inv(P.d, P.d);
      for (int i = 0; i < P.d; ++i)
        for (int j = 0; j < P.d; ++j)
          inv(i, j) = lcontact::phi_inv_entry(P, i, j)(lift_point(pv))
                          .value()
                          .real();
      CHECK((inv * phi - MatrixXd::Identity(P.d, P.d)).norm() ==
            doctest::Approx(0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("connection forms satisfy skewness and the structure equations") {
  metric::CatalogParams cp;
  cp.poly = {0.0, 0.3, -0.2, 0.1, 0.05, 0.1, -0.08};
  for (const char* name : {"flat", "sphere", "conformal"}) {
    CAPTURE(name);
    metric::CatalogParams use = cp;
    if (std::string(name) == "conformal") use.q = 1;
    FrameBundlePatch P = lcontact::make_patch(metric::catalog(name, use));
    SplitMix64 rng(11);
    for (int s = 0; s < 3; ++s) {
      VectorXd p = lcontact::sample_point(P, rng);
      CHECK(lcontact::gamma_skew_residual(P, p) < 1e-10);
      CHECK(lcontact::omega_structure_residual(P, p) < 1e-8);
      CHECK(lcontact::gamma_structure_residual(P, p) < 1e-7);
    }
  }
}

TEST_CASE("structure equations hold on a four-dimensional product base") {
  metric::CatalogParams cp;
  cp.dim = 2;
  cp.dim2 = 2;
  FrameBundlePatch P =
      lcontact::make_patch(metric::catalog("product_spheres", cp));
  REQUIRE(P.d == 4);
  SplitMix64 rng(3);
  VectorXd p = lcontact::sample_point(P, rng);
  CHECK(lcontact::gamma_skew_residual(P, p) < 1e-10);
  CHECK(lcontact::omega_structure_residual(P, p) < 1e-8);
  CHECK(lcontact::gamma_structure_residual(P, p) < 1e-7);
}

TEST_CASE("tautological coframe structure equations") {
  metric::CatalogParams cp;
  FrameBundlePatch Pf = lcontact::make_patch(metric::catalog("flat", cp));
  SplitMix64 rng(5);
  for (int s = 0; s < 3; ++s) {
    VectorXd p = lcontact::sample_point(Pf, rng);
    CHECK(lcontact::lambda0_residual(Pf, p) < 1e-9);
    CHECK(lcontact::lambda_residual(Pf, p) < 1e-9);
  }
  FrameBundlePatch Ps = lcontact::make_patch(metric::catalog("sphere", cp));
  for (int s = 0; s < 3; ++s) {
    VectorXd p = lcontact::sample_point(Ps, rng);
    CHECK(lcontact::lambda0_residual(Ps, p) < 1e-8);
    CHECK(lcontact::lambda_residual(Ps, p) < 1e-7);
  }
}

TEST_CASE("projection matches the tangent-bundle contact form") {
  metric::CatalogParams cp;
  for (const char* name : {"flat", "sphere"}) {
    CAPTURE(name);
    FrameBundlePatch P = lcontact::make_patch(metric::catalog(name, cp));
    utbundle::TangentPatch T = utbundle::make_tangent_patch(P.base);
    extcalc::FormField theta = utbundle::contact_form(T);
    // (x, t, a) -> (x, phi(x, t) e_0)
    extcalc::MapFn proj = [P](const HD2Vec& p) {
      HD2Vec out(2 * P.d, HD2{});
      for (int i = 0; i < P.d; ++i) out[i] = p[i];
      for (int k = 0; k < P.d; ++k)
        out[P.d + k] = lcontact::phi_entry(P, k, 0)(p).re;
      return out;
    };
    extcalc::FormField pulled = extcalc::pullback(theta, proj, P.dim);
    extcalc::FormField omega0 = lcontact::omega_forms(P)[0];
    SplitMix64 rng(13);
    for (int s = 0; s < 3; ++s) {
      VectorXd p = lcontact::sample_point(P, rng);
      CHECK(one_form_gap(pulled, omega0, p) < 1e-9);
    }
  }
}

TEST_CASE("fiber coordinate identities") {
  lcontact::FiberCoord fc = lcontact::fiber_coord({0.3, -0.2});
  double r = fc.r;
  complex<double> a = fc.a;
  CHECK(std::abs(fc.z_plus - (1.0 - I * r + a)) < 1e-15);
  CHECK(std::abs(fc.z_minus - (1.0 - I * r - a)) < 1e-15);
  double want_p = 1.0 + 2.0 * r * r +
                  2.0 * ((1.0 - I * r) * std::conj(a)).real();
  double want_m = 1.0 + 2.0 * r * r -
                  2.0 * ((1.0 - I * r) * std::conj(a)).real();
  CHECK(std::norm(fc.z_plus) == doctest::Approx(want_p).epsilon(1e-12));
  CHECK(std::norm(fc.z_minus) == doctest::Approx(want_m).epsilon(1e-12));
}

TEST_CASE("fiber-extended coframe") {
  metric::CatalogParams cp;
  FrameBundlePatch P = lcontact::make_patch(metric::catalog("sphere", cp));
  SplitMix64 rng(17);

  SUBCASE("eta reduces to lambda at the fiber origin") {
    VectorXd p = lcontact::sample_point(P, rng);
    p[P.d + P.D] = 1e-12;
    p[P.d + P.D + 1] = 0.0;
    lcontact::LambdaForms L = lcontact::lambda_forms(P);
    lcontact::EtaForms E = lcontact::eta_forms(P);
    CHECK(one_form_gap(E.eta0, L.lambda0, p) < 1e-11);
    for (int i = 0; i < P.n; ++i)
      CHECK(one_form_gap(E.eta[i], L.lambda[i], p) < 1e-10);
  }

  SUBCASE("structure equation for eta0 and real part of sigma") {
    for (int s = 0; s < 2; ++s) {
      VectorXd p = lcontact::sample_point(P, rng);
      CHECK(lcontact::eta0_residual(P, p) < 1e-8);
      lcontact::Pseudoconnection pc = lcontact::pseudoconnection(P, p);
      extcalc::FormField re_sigma =
          extcalc::add(pc.sigma, extcalc::conj(pc.sigma));
      for (int m = 0; m < P.dim; ++m) CHECK(eval1(re_sigma, p, m) < 1e-12);
    }
  }

  SUBCASE("coframe is well conditioned") {
    VectorXd p = lcontact::sample_point(P, rng);
    auto co = lcontact::eta_coframe(P);
    REQUIRE(static_cast<int>(co.size()) == P.dim);
    extcalc::FormField probe =
        extcalc::wedge(co[1], co[2]);  // any 2-form will do
    CHECK_NOTHROW(extcalc::expand_2form(probe, co, p, 1e6));
  }
}

TEST_CASE("torsion vanishes on flat space") {
  metric::CatalogParams cp;
  FrameBundlePatch P = lcontact::make_patch(metric::catalog("flat", cp));
  SplitMix64 rng(19);
  VectorXd p = lcontact::sample_point(P, rng);
  lcontact::TorsionReport rep = lcontact::torsion_oracle(P, p);
  CHECK(lcontact::arr3_norm(rep.O_num) < 1e-9);
  CHECK(lcontact::arr3_norm(rep.P_num) < 1e-9);
  CHECK(lcontact::arr3_norm(rep.Q_num) < 1e-9);
  CHECK(lcontact::arr3_norm(rep.O_formula) == 0.0);
  CHECK(rep.leakage < 1e-9);
}

TEST_CASE("torsion on the round sphere stays within the closed form") {
  metric::CatalogParams cp;
  FrameBundlePatch P = lcontact::make_patch(metric::catalog("sphere", cp));
  SplitMix64 rng(23);
  VectorXd p = lcontact::sample_point(P, rng);
  p[P.d + P.D] = 0.3;
  p[P.d + P.D + 1] = 0.1;
  lcontact::TorsionReport rep = lcontact::torsion_oracle(P, p);
  CHECK(rep.dO < 1e-7);
  CHECK(rep.dP < 1e-7);
  CHECK(rep.dQ < 1e-7);
  // constant curvature leaves no contact-plane curvature slice
  CHECK(lcontact::arr3_norm(rep.Q_num) < 1e-7);
  CHECK(rep.leakage < 1e-7);
}

TEST_CASE("torsion detects curvature anisotropy and the ricci toggle") {
  metric::CatalogParams cp;
  cp.dim = 2;
  cp.dim2 = 2;
  FrameBundlePatch P =
      lcontact::make_patch(metric::catalog("product_spheres", cp));
  SplitMix64 rng(29);
  VectorXd p = lcontact::sample_point(P, rng);
  lcontact::TorsionReport shifted = lcontact::torsion_oracle(P, p, true);
  lcontact::TorsionReport plain = lcontact::torsion_oracle(P, p, false);
  CHECK(shifted.dO < 1e-6);
  CHECK(shifted.dP < 1e-6);
  CHECK(shifted.dQ < 1e-6);
  CHECK(plain.dQ < 1e-6);
  CHECK(lcontact::arr3_norm(shifted.Q_num) > 1e-3);
  // the toggle only moves the kappa term, i.e. the Q block
  CHECK(arr3_gap(shifted.O_formula, plain.O_formula) < 1e-14);
  CHECK(arr3_gap(shifted.P_formula, plain.P_formula) < 1e-14);
}

TEST_CASE("closed-form torsion polynomial evaluators") {
  SplitMix64 rng(31);
  int n = 2;
  auto M = random_arr3(n, rng), N = random_arr3(n, rng),
       R = random_arr3(n, rng);

  SUBCASE("all coefficient inputs zero") {
    auto Z = lcontact::zero_arr3(n);
    lcontact::OPQ t = lcontact::se2_torsion(Z, Z, Z, lcontact::fiber_coord({0.2, 0.1}));
    CHECK(lcontact::arr3_norm(t.O) == 0.0);
    CHECK(lcontact::arr3_norm(t.P) == 0.0);
    CHECK(lcontact::arr3_norm(t.Q) == 0.0);
  }

  SUBCASE("fiber origin reduces to the bare coefficients") {
    lcontact::OPQ t = lcontact::se2_torsion(M, N, R, lcontact::fiber_coord(0.0));
    CHECK(lcontact::arr3_norm(t.O) ==
          doctest::Approx(0.5 * lcontact::arr3_norm(R)).epsilon(1e-12));
    CHECK(arr3_gap(t.Q, N) < 1e-14);
    lcontact::OPQ g = lcontact::slgse_torsion(M, N, MatrixXcd::Zero(n, n),
                                              VectorXd::Ones(n));
    CHECK(lcontact::arr3_norm(g.O) < 1e-14);
    CHECK(arr3_gap(g.P, M) < 1e-14);
    CHECK(arr3_gap(g.Q, N) < 1e-14);
  }

  SUBCASE("diagonal fiber matrix matches the scalar evaluator") {
    complex<double> a{0.3, 0.2};
    MatrixXcd A = a * MatrixXcd::Identity(n, n);
    auto Z = lcontact::zero_arr3(n);
    lcontact::OPQ g = lcontact::slgse_torsion(M, N, A, VectorXd::Ones(n));
    lcontact::OPQ s = lcontact::se2_torsion(M, N, Z, lcontact::fiber_coord(a));
    CHECK(arr3_gap(g.O, s.O) < 1e-12);
    CHECK(arr3_gap(g.P, s.P) < 1e-12);
    CHECK(arr3_gap(g.Q, s.Q) < 1e-12);
  }

  SUBCASE("invalid fiber matrices are rejected") {
    MatrixXcd bad(n, n);
    bad << 0.0, 0.3, -0.3, 0.0;  // skew, not symmetric
    CHECK_THROWS_AS(lcontact::slgse_torsion(M, N, bad, VectorXd::Ones(n)),
                    std::invalid_argument);
    MatrixXcd uneven = MatrixXcd::Zero(n, n);
    uneven(0, 0) = 0.3;
    uneven(1, 1) = 0.6;
    CHECK_THROWS_AS(lcontact::slgse_torsion(M, N, uneven, VectorXd::Ones(n)),
                    std::invalid_argument);
  }
}

TEST_CASE("conformal flatness report separates flat, round, and product bases") {
  metric::CatalogParams flat3;
  lcontact::ConformalRow f =
      lcontact::conformal_flatness_report("flat", metric::catalog("flat", flat3), 2, 41);
  CHECK(f.q_num < 1e-9);
  CHECK(f.q_formula < 1e-12);
  CHECK(f.weyl < 1e-12);

  metric::CatalogParams s4;
  s4.dim = 4;
  lcontact::ConformalRow s =
      lcontact::conformal_flatness_report("sphere4", metric::catalog("sphere", s4), 1, 43);
  CHECK(s.weyl < 1e-8);
  CHECK(s.q_num < 1e-6);
  CHECK(s.q_formula < 1e-10);

  metric::CatalogParams ps;
  ps.dim = 2;
  ps.dim2 = 2;
  lcontact::ConformalRow r = lcontact::conformal_flatness_report(
      "product", metric::catalog("product_spheres", ps), 1, 47);
  CHECK(r.weyl > 1e-3);
  CHECK(r.q_num > 1e-4);
  CHECK(r.q_formula > 1e-4);
}

TEST_CASE("quaternionic skeleton") {
  metric::CatalogParams cp;
  cp.q = 1;  // signature (2, 1)
  metric::MetricField M = metric::catalog("flat", cp);
  FrameBundlePatch P = lcontact::make_patch(M);
  SplitMix64 rng(53);
  VectorXd p = lcontact::sample_point(P, rng);
  lcontact::QuatSkeleton sk = lcontact::quaternionic_skeleton(M, p);
  CHECK(sk.K2_residual == 0.0);
  CHECK(sk.JK_residual == 0.0);
  CHECK(sk.dlambda0_residual < 1e-9);
  CHECK(sk.deta0_residual < 1e-8);

  metric::CatalogParams cp5;
  cp5.dim = 5;
  cp5.q = 2;  // signature (3, 2)
  metric::MetricField M5 = metric::catalog("flat", cp5);
  FrameBundlePatch P5 = lcontact::make_patch(M5);
  VectorXd p5 = lcontact::sample_point(P5, rng);
  lcontact::QuatSkeleton sk5 = lcontact::quaternionic_skeleton(M5, p5);
  CHECK(sk5.K2_residual == 0.0);
  CHECK(sk5.JK_residual == 0.0);
  CHECK(sk5.dlambda0_residual < 1e-9);
  CHECK(sk5.deta0_residual < 1e-8);

  metric::CatalogParams bad;  // signature (3, 0)
  CHECK_THROWS_AS(
      lcontact::quaternionic_skeleton(metric::catalog("flat", bad), p),
      std::invalid_argument);
}
