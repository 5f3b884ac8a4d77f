#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcl/extcalc.hpp"
#include "lcl/rng.hpp"

using namespace lcl::extcalc;
using lcl::CHD2;
using lcl::HD2;
using lcl::HD2Vec;
using lcl::SplitMix64;
using Complex = std::complex<double>;

namespace {

// random complex polynomial of degree <= 2 in the coordinates
Coeff random_poly(int dim, SplitMix64& rng) {
  std::vector<Complex> lin(dim), quad(dim * dim);
  Complex c0(rng.uniform(-1, 1), rng.uniform(-1, 1));
  for (auto& v : lin) v = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  for (auto& v : quad) v = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return [dim, c0, lin, quad](const HD2Vec& x) {
    CHD2 f{c0};
    for (int i = 0; i < dim; ++i) {
      f = f + CHD2(lin[i]) * CHD2{x[i]};
      for (int j = 0; j < dim; ++j)
        f = f + CHD2(quad[i * dim + j]) * CHD2{x[i]} * CHD2{x[j]};
    }
    return f;
  };
}

FormField random_form(int dim, int degree, SplitMix64& rng) {
  FormField F = zero_form(dim, degree);
  std::vector<int> idx(degree);
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (k == degree) {
      F.terms[idx] = random_poly(dim, rng);
      return;
    }
    for (int i = start; i < dim; ++i) {
      idx[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
  return F;
}

Eigen::VectorXd random_pt(int dim, SplitMix64& rng) {
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x(i) = rng.uniform(-0.7, 0.7);
  return x;
}

std::vector<Eigen::VectorXcd> random_vectors(int dim, int k, SplitMix64& rng) {
  std::vector<Eigen::VectorXcd> v(k, Eigen::VectorXcd(dim));
  for (auto& w : v)
    for (int i = 0; i < dim; ++i)
      w(i) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return v;
}

double form_dist(const FormField& a, const FormField& b, SplitMix64& rng,
                 int samples = 10) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd x = random_pt(a.dim, rng);
    auto v = random_vectors(a.dim, a.degree, rng);
    worst = std::max(worst, std::abs(evaluate(a, x, v) - evaluate(b, x, v)));
  }
  return worst;
}

}  // namespace

TEST_CASE("basic d and wedge identities") {
  int dim = 3;
  // d(x0 dx1) = dx0 ^ dx1
  FormField a = mul([](const HD2Vec& x) { return CHD2{x[0]}; }, dx(dim, 1));
  FormField da = d(a);
  FormField expect = wedge(dx(dim, 0), dx(dim, 1));
  SplitMix64 rng(51);
  CHECK(form_dist(da, expect, rng) < 1e-14);

  CHECK(wedge(dx(dim, 0), dx(dim, 0)).terms.empty());
  FormField s = wedge(add(dx(dim, 0), dx(dim, 1)), dx(dim, 1));
  CHECK(form_dist(s, expect, rng) < 1e-14);

  // antisymmetry of the wedge on 1-forms
  FormField w01 = wedge(dx(dim, 1), dx(dim, 0));
  CHECK(form_dist(w01, scale(-1.0, expect), rng) < 1e-14);
}

TEST_CASE("theta_flat on a tangent-style patch") {
  // coordinates (x0, x1, y0, y1); theta = sum_i y^i dx^i
  int dim = 4;
  FormField theta = zero_form(dim, 1);
  for (int i = 0; i < 2; ++i)
    theta = add(theta, mul(
                           [i](const HD2Vec& x) {
                             return CHD2{x[2 + i]};
                           },
                           dx(dim, i)));
  FormField dtheta = d(theta);
  FormField expect = zero_form(dim, 2);
  for (int i = 0; i < 2; ++i)
    expect = add(expect, wedge(dx(dim, 2 + i), dx(dim, i)));
  SplitMix64 rng(52);
  CHECK(form_dist(dtheta, expect, rng) < 1e-14);
}

TEST_CASE("d squared vanishes on random forms") {
  SplitMix64 rng(53);
  for (int dim : {3, 4}) {
    for (int degree : {0, 1, 2}) {
      FormField F = random_form(dim, degree, rng);
      FormField dd = d(d(F));
      FormField zero = zero_form(dim, dd.degree);
      CHECK(form_dist(dd, zero, rng, 8) < 1e-11);
    }
  }
}

TEST_CASE("leibniz rule") {
  SplitMix64 rng(54);
  int dim = 4;
  for (auto [ka, kb] : {std::pair{0, 1}, std::pair{1, 1}, std::pair{1, 2}}) {
    FormField a = random_form(dim, ka, rng);
    FormField b = random_form(dim, kb, rng);
    FormField lhs = d(wedge(a, b));
    FormField rhs = add(wedge(d(a), b),
                        scale(ka % 2 == 0 ? 1.0 : -1.0, wedge(a, d(b))));
    CHECK(form_dist(lhs, rhs, rng, 8) < 1e-11);
  }
}

TEST_CASE("graded commutativity") {
  SplitMix64 rng(55);
  int dim = 4;
  for (auto [ka, kb] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    FormField a = random_form(dim, ka, rng);
    FormField b = random_form(dim, kb, rng);
    double sgn = (ka * kb) % 2 == 0 ? 1.0 : -1.0;
    CHECK(form_dist(wedge(a, b), scale(sgn, wedge(b, a)), rng, 6) < 1e-11);
  }
}

TEST_CASE("third derivative through partial throws") {
  Coeff f = [](const HD2Vec& x) { return CHD2{x[0] * x[0] * x[1]}; };
  Coeff ddd = partial(partial(partial(f, 0), 0), 1);
  HD2Vec x = lcl::lift_point({0.3, 0.7});
  CHECK_THROWS_AS(ddd(x), std::domain_error);
  // two levels are fine and exact
  Coeff dd = partial(partial(f, 0), 1);
  CHECK(dd(x).value().real() == doctest::Approx(2 * 0.3).epsilon(1e-14));
}

TEST_CASE("pullback commutes with d") {
  SplitMix64 rng(56);
  int src = 3, dst = 2;
  // phi(x) = (x0*x1 + 0.3 x2, x2*x2 - x0)
  MapFn phi = [](const HD2Vec& x) {
    HD2Vec y(2);
    y[0] = x[0] * x[1] + HD2(0.3) * x[2];
    y[1] = x[2] * x[2] - x[0];
    return y;
  };
  for (int degree : {0, 1}) {
    FormField a = random_form(dst, degree, rng);
    FormField lhs = pullback(d(a), phi, src);
    FormField rhs = d(pullback(a, phi, src));
    CHECK(form_dist(lhs, rhs, rng, 8) < 1e-10);
  }
  // evaluation consistency: (phi^* a)(v) = a(dphi v)
  FormField a = random_form(dst, 1, rng);
  FormField pa = pullback(a, phi, src);
  Eigen::VectorXd x = random_pt(src, rng);
  auto v = random_vectors(src, 1, rng);
  Eigen::MatrixXcd Jac(2, 3);
  Jac << x(1), x(0), 0.3, -1.0, 0.0, 2 * x(2);
  HD2Vec xp = lcl::lift_point({x(0), x(1), x(2)});
  Eigen::VectorXd y(2);
  {
    HD2Vec yv = phi(xp);
    y << yv[0].v, yv[1].v;
  }
  Eigen::VectorXcd pushed = Jac * v[0];
  CHECK(std::abs(evaluate(pa, x, v) - evaluate(a, y, {pushed})) < 1e-12);
}

TEST_CASE("expand and assemble round trip") {
  SplitMix64 rng(57);
  int dim = 4;
  // a mildly skewed constant coframe plus a coordinate-dependent twist
  std::vector<FormField> coframe;
  for (int a = 0; a < dim; ++a) {
    FormField th = dx(dim, a);
    th = add(th, scale(Complex(0.2, 0.1 * a),
                       dx(dim, (a + 1) % dim)));
    coframe.push_back(th);
  }
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      Complex v(rng.uniform(-1, 1), rng.uniform(-1, 1));
      c(a, b) = v;
      c(b, a) = -v;
    }
  FormField F = assemble(c, coframe);
  Eigen::VectorXd x = random_pt(dim, rng);
  Eigen::MatrixXcd back = expand_2form(F, coframe, x);
  CHECK((back - c).norm() < 1e-12);

  // simple case: F = theta0 ^ theta1
  FormField F01 = wedge(coframe[0], coframe[1]);
  Eigen::MatrixXcd c01 = expand_2form(F01, coframe, x);
  CHECK(std::abs(c01(0, 1) - Complex(1.0)) < 1e-13);
  CHECK(c01.cwiseAbs().sum() == doctest::Approx(2.0).epsilon(1e-12));

  // degenerate coframe rejected
  std::vector<FormField> bad = coframe;
  bad[1] = bad[0];
  CHECK_THROWS_AS(expand_2form(F, bad, x), std::runtime_error);
}

TEST_CASE("patch construction validates input") {
  CHECK_THROWS_AS(make_patch({"x", "x"}, {{{-1, 1}}, {{-1, 1}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_patch({"x"}, {{{1, -1}}}), std::invalid_argument);
  Patch P = make_patch({"x", "y"}, {{{-1, 1}}, {{0, 2}}});
  CHECK(P.dim == 2);
}
