#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>

#include "doctest.h"
#include "lcl/futuretube.hpp"
#include "lcl/metric.hpp"

using namespace lcl;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

TEST_CASE("defining function and futurity flag") {
  VectorXcd z(2);
  z << complex<double>(1.0, 0.0), complex<double>(0.0, 5.0);
  CHECK(futuretube::rho(z) == doctest::Approx(2.0));
  CHECK_FALSE(futuretube::futurity(z));
  z << 1.0, 1.0;
  CHECK(futuretube::rho(z) == doctest::Approx(0.0));
  CHECK(futuretube::futurity(z));
}

TEST_CASE("ambient Levi form") {
  MatrixXcd L = futuretube::ambient_levi(2);
  MatrixXcd want = MatrixXcd::Identity(3, 3);
  want(2, 2) = -1.0;
  CHECK((L - want).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(futuretube::ambient_levi(4));
  int pos = 0, neg = 0;
  for (int i = 0; i < 5; ++i) (es.eigenvalues()(i) > 0 ? pos : neg)++;
  CHECK(pos == 4);
  CHECK(neg == 1);
}

TEST_CASE("null field is tangent and Levi-null") {
  SplitMix64 rng(3);
  for (int s = 0; s < 100; ++s) {
    int m = 2 + static_cast<int>(s % 3);
    VectorXcd z = futuretube::sample_surface(m, rng);
    CHECK(std::abs(futuretube::rho(z)) < 1e-12);
    VectorXcd X = futuretube::null_field(z);
    CHECK(std::abs(futuretube::del_rho(z).dot(X)) < 1e-11);
    complex<double> lXX = (X.adjoint() * futuretube::ambient_levi(m) * X)(0);
    CHECK(std::abs(lXX) < 1e-11);
  }
}

TEST_CASE("leaf inclusion lands on the cone") {
  VectorXd t = VectorXd::Zero(2), u(2);
  u << 1.0, 0.0;
  VectorXcd z = futuretube::leaf_inclusion(t, u);
  CHECK(std::abs(z(0) - 1.0) == 0.0);
  CHECK(std::abs(z(1)) == 0.0);
  CHECK(std::abs(z(2) - 1.0) == 0.0);
  CHECK(futuretube::rho(z) == doctest::Approx(0.0));

  SplitMix64 rng(5);
  for (int s = 0; s < 1000; ++s) {
    VectorXcd w = futuretube::sample_surface(3, rng);
    CHECK(std::abs(futuretube::rho(w)) < 1e-12);
    CHECK(futuretube::futurity(w));
  }

  u << 0.5, 0.5;
  CHECK_THROWS_AS(futuretube::leaf_inclusion(t, u), std::invalid_argument);
}

TEST_CASE("leaf action scales and composes") {
  SplitMix64 rng(7);
  VectorXcd z = futuretube::sample_surface(2, rng);
  CHECK((futuretube::leaf_action(z, 1.0) - z).norm() == 0.0);
  VectorXcd z2 = futuretube::leaf_action(z, 2.0);
  for (int k = 0; k < 3; ++k) {
    CHECK(z2(k).real() == doctest::Approx(2.0 * z(k).real()));
    CHECK(z2(k).imag() == doctest::Approx(z(k).imag()));
  }
  CHECK(std::abs(futuretube::rho(z2)) < 1e-12);

  for (int s = 0; s < 100; ++s) {
    VectorXcd w = futuretube::sample_surface(3, rng);
    complex<double> c1(rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0));
    complex<double> c2(rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0));
    VectorXcd lhs = futuretube::leaf_action(futuretube::leaf_action(w, c2), c1);
    complex<double> comp(c1.real() * c2.real(),
                         c1.imag() * c2.real() + c2.imag());
    CHECK((lhs - futuretube::leaf_action(w, comp)).norm() < 1e-12);
  }
  CHECK_THROWS_AS(futuretube::leaf_action(z, {-1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("leaf coordinates invert the orbit map") {
  VectorXcd z(3);
  z << 1.0, 0.0, 1.0;
  futuretube::LeafCoord lc = futuretube::leaf_coordinates(z);
  CHECK(lc.t.norm() == 0.0);
  CHECK(lc.u(0) == doctest::Approx(1.0));
  CHECK(std::abs(lc.c - 1.0) == 0.0);

  SplitMix64 rng(11);
  for (int s = 0; s < 200; ++s) {
    VectorXd t(3), u(3);
    for (int k = 0; k < 3; ++k) {
      t(k) = rng.uniform(-2.0, 2.0);
      u(k) = rng.uniform(-1.0, 1.0);
    }
    u.normalize();
    complex<double> c(3.0, 2.0);
    VectorXcd w = futuretube::leaf_action(futuretube::leaf_inclusion(t, u), c);
    futuretube::LeafCoord back = futuretube::leaf_coordinates(w);
    CHECK((back.t - t).norm() < 1e-12);
    CHECK((back.u - u).norm() < 1e-12);
    CHECK(std::abs(back.c - c) < 1e-12);
    CHECK(back.u.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("constant along orbits") {
    for (int s = 0; s < 50; ++s) {
      VectorXcd w = futuretube::sample_surface(2, rng);
      futuretube::LeafCoord a = futuretube::leaf_coordinates(w);
      complex<double> c(rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0));
      futuretube::LeafCoord b =
          futuretube::leaf_coordinates(futuretube::leaf_action(w, c));
      CHECK((a.t - b.t).norm() < 1e-12);
      CHECK((a.u - b.u).norm() < 1e-12);
    }
  }

  VectorXcd bad(3);
  bad << 1.0, 0.0, -1.0;
  CHECK_THROWS_AS(futuretube::leaf_coordinates(bad), std::invalid_argument);
}

TEST_CASE("transverse Levi form is positive definite") {
  SplitMix64 rng(13);
  for (int m : {2, 3, 4}) {
    for (int s = 0; s < 30; ++s) {
      VectorXcd z = futuretube::sample_surface(m, rng);
      VectorXd ev = futuretube::transverse_levi_eigenvalues(z);
      REQUIRE(ev.size() == m - 1);
      CHECK(ev.minCoeff() > 1e-8);
    }
  }
}

TEST_CASE("leaf motion matches the generator flow to first order") {
  SplitMix64 rng(17);
  VectorXcd z = futuretube::sample_surface(3, rng);
  double r3 = futuretube::flow_residual(z, 1e-3);
  double r4 = futuretube::flow_residual(z, 1e-4);
  CHECK(r3 > 0.0);
  CHECK(r3 / r4 == doctest::Approx(100.0).epsilon(0.05));
}

TEST_CASE("leaf-space signature matches the flat unit tangent bundle") {
  // flat R^m in definite signature: the contact-plane pairing has m-1
  // positive directions, exactly the transverse Levi eigenvalue count
  int m = 3;
  metric::CatalogParams cp;
  cp.dim = m;
  metric::MetricField M = metric::catalog("flat", cp);
  int positives = 0;
  for (int i = 1; i < m; ++i)
    if (M.sig.eps[i] > 0) ++positives;
  SplitMix64 rng(19);
  VectorXcd z = futuretube::sample_surface(m, rng);
  VectorXd ev = futuretube::transverse_levi_eigenvalues(z);
  CHECK(static_cast<int>(ev.size()) == positives);
  CHECK(ev.minCoeff() > 0.0);
}
