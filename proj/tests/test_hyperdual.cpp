#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcl/hyperdual.hpp"
#include "lcl/rng.hpp"

using lcl::CHD2;
using lcl::HD2;
using lcl::HD2Vec;

namespace {

// Central finite differences used as an independent check on the propagated
// derivatives.  Step chosen for ~1e-8 accuracy on second differences.
template <class F>
double fd1(F f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2 * h);
}
template <class F>
double fd2(F f, double x, double h = 1e-4) {
  return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

TEST_CASE("ring axioms on random values") {
  lcl::SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    HD2 a(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
          rng.uniform(-2, 2));
    HD2 b(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
          rng.uniform(-2, 2));
    HD2 c(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
          rng.uniform(-2, 2));
    HD2 lhs = (a * b) * c;
    HD2 rhs = a * (b * c);
    CHECK(std::abs(lhs.v - rhs.v) < 1e-13);
    CHECK(std::abs(lhs.d12 - rhs.d12) < 1e-12);
    HD2 comm = a * b - b * a;
    CHECK(std::abs(comm.v) < 1e-14);
    CHECK(std::abs(comm.d12) < 1e-13);
    HD2 dist = a * (b + c) - (a * b + a * c);
    CHECK(std::abs(dist.d12) < 1e-12);
  }
}

TEST_CASE("division inverts multiplication") {
  lcl::SplitMix64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    HD2 a(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
          rng.uniform(-2, 2));
    HD2 b(rng.uniform(0.5, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
          rng.uniform(-2, 2));
    HD2 r = (a / b) * b - a;
    CHECK(std::abs(r.v) < 1e-13);
    CHECK(std::abs(r.d1) < 1e-12);
    CHECK(std::abs(r.d2) < 1e-12);
    CHECK(std::abs(r.d12) < 1e-11);
  }
  CHECK_THROWS_AS(HD2(1) / HD2(0, 1, 0, 0), std::domain_error);
}

TEST_CASE("elementary functions against finite differences") {
  auto probe = [](auto hd, auto scalar, double x) {
    HD2 r = hd(HD2(x, 1, 1, 0));
    CHECK(r.v == doctest::Approx(scalar(x)).epsilon(1e-12));
    CHECK(r.d1 == doctest::Approx(fd1(scalar, x)).epsilon(1e-6));
    CHECK(r.d12 == doctest::Approx(fd2(scalar, x)).epsilon(1e-5));
  };
  probe([](HD2 x) { return lcl::sqrt(x); },
        [](double x) { return std::sqrt(x); }, 1.7);
  probe([](HD2 x) { return lcl::exp(x); }, [](double x) { return std::exp(x); },
        0.4);
  probe([](HD2 x) { return lcl::sin(x); }, [](double x) { return std::sin(x); },
        1.1);
  probe([](HD2 x) { return lcl::cos(x); }, [](double x) { return std::cos(x); },
        -0.6);
  probe([](HD2 x) { return lcl::pow(x, 3.5); },
        [](double x) { return std::pow(x, 3.5); }, 1.3);
  CHECK_THROWS_AS(lcl::sqrt(HD2(-1.0)), std::domain_error);
}

TEST_CASE("mixed second derivative of a two-variable function") {
  // f(x, y) = sin(x y) + x^2 y, d^2 f / dx dy known in closed form.
  auto f = [](const HD2& x, const HD2& y) {
    return lcl::sin(x * y) + x * x * y;
  };
  double x0 = 0.7, y0 = -0.3;
  HD2 r = f(HD2(x0, 1, 0, 0), HD2(y0, 0, 1, 0));
  double c = std::cos(x0 * y0), s = std::sin(x0 * y0);
  CHECK(r.d1 == doctest::Approx(y0 * c + 2 * x0 * y0).epsilon(1e-13));
  CHECK(r.d2 == doctest::Approx(x0 * c + x0 * x0).epsilon(1e-13));
  CHECK(r.d12 ==
        doctest::Approx(c - x0 * y0 * s + 2 * x0).epsilon(1e-13));
}

TEST_CASE("coordinate lifts seed the right slots") {
  HD2Vec x = lcl::lift_point({0.1, 0.2, 0.3});
  for (auto& c : x) {
    CHECK(c.d1 == 0.0);
    CHECK(c.d2 == 0.0);
  }
  HD2Vec y = lcl::lift_coordinate({0.1, 0.2, 0.3}, 0, 2);
  CHECK(y[0].d1 == 1.0);
  CHECK(y[2].d2 == 1.0);
  CHECK(y[1].d1 == 0.0);
  CHECK_THROWS_AS(lcl::lift_coordinate({0.1}, 0, 3), std::out_of_range);
}

TEST_CASE("complex pairs multiply like complex numbers") {
  lcl::SplitMix64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    CHD2 a{HD2(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
               rng.uniform(-1, 1)),
           HD2(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
               rng.uniform(-1, 1))};
    CHD2 b{HD2(rng.uniform(-1, 1)), HD2(rng.uniform(-1, 1))};
    CHD2 p = a * b;
    auto za = a.value();
    auto zb = b.value();
    auto zp = za * zb;
    CHECK(p.value().real() == doctest::Approx(zp.real()).epsilon(1e-13));
    CHECK(p.value().imag() == doctest::Approx(zp.imag()).epsilon(1e-13));
    CHD2 q = lcl::conj(a) * a;
    CHECK(std::abs(q.im.v) < 1e-14);
    CHECK(q.re.v >= -1e-14);
  }
}

TEST_CASE("prng is deterministic and in range") {
  lcl::SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  lcl::SplitMix64 c(43);
  CHECK(c.next() != lcl::SplitMix64(42).next());
}
