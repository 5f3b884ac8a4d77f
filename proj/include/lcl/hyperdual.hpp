#pragma once

// Truncated second-order dual scalars: value plus two directional first
// derivatives and the mixed second derivative along the two seed directions.
// Seeds are nilpotent, so arithmetic propagates the chain rule exactly to
// rounding.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace lcl {

struct HD2 {
  double v = 0.0;    // value
  double d1 = 0.0;   // derivative along seed direction 1
  double d2 = 0.0;   // derivative along seed direction 2
  double d12 = 0.0;  // mixed second derivative

  constexpr HD2() = default;
  constexpr HD2(double value) : v(value) {}
  constexpr HD2(double value, double a, double b, double ab)
      : v(value), d1(a), d2(b), d12(ab) {}

  constexpr HD2 operator-() const { return {-v, -d1, -d2, -d12}; }

  friend constexpr HD2 operator+(const HD2& x, const HD2& y) {
    return {x.v + y.v, x.d1 + y.d1, x.d2 + y.d2, x.d12 + y.d12};
  }
  friend constexpr HD2 operator-(const HD2& x, const HD2& y) {
    return {x.v - y.v, x.d1 - y.d1, x.d2 - y.d2, x.d12 - y.d12};
  }
  friend constexpr HD2 operator*(const HD2& x, const HD2& y) {
    return {x.v * y.v,
            x.d1 * y.v + x.v * y.d1,
            x.d2 * y.v + x.v * y.d2,
            x.d12 * y.v + x.d1 * y.d2 + x.d2 * y.d1 + x.v * y.d12};
  }
  friend HD2 operator/(const HD2& x, const HD2& y) {
    if (y.v == 0.0) throw std::domain_error("HD2: division by zero value");
    double inv = 1.0 / y.v;
    double w = x.v * inv;
    double a = (x.d1 - w * y.d1) * inv;
    double b = (x.d2 - w * y.d2) * inv;
    double ab = (x.d12 - a * y.d2 - b * y.d1 - w * y.d12) * inv;
    return {w, a, b, ab};
  }

  HD2& operator+=(const HD2& o) { return *this = *this + o; }
  HD2& operator-=(const HD2& o) { return *this = *this - o; }
  HD2& operator*=(const HD2& o) { return *this = *this * o; }
  HD2& operator/=(const HD2& o) { return *this = *this / o; }
};

// f(x) lifted through the chain rule: needs f, f', f'' at the value.
inline HD2 lift_unary(const HD2& x, double f, double fp, double fpp) {
  return {f, fp * x.d1, fp * x.d2, fp * x.d12 + fpp * x.d1 * x.d2};
}

inline HD2 sqrt(const HD2& x) {
  if (x.v <= 0.0) throw std::domain_error("HD2: sqrt of non-positive value");
  double s = std::sqrt(x.v);
  return lift_unary(x, s, 0.5 / s, -0.25 / (s * x.v));
}
inline HD2 exp(const HD2& x) {
  double e = std::exp(x.v);
  return lift_unary(x, e, e, e);
}
inline HD2 sin(const HD2& x) {
  return lift_unary(x, std::sin(x.v), std::cos(x.v), -std::sin(x.v));
}
inline HD2 cos(const HD2& x) {
  return lift_unary(x, std::cos(x.v), -std::sin(x.v), -std::cos(x.v));
}
inline HD2 pow(const HD2& x, double e) {
  if (e == 0.0) return HD2{1.0};
  if (e == 1.0) return x;
  if (e == 2.0) return x * x;
  double f = std::pow(x.v, e);
  double fp = e * std::pow(x.v, e - 1.0);
  double fpp = e * (e - 1.0) * std::pow(x.v, e - 2.0);
  return lift_unary(x, f, fp, fpp);
}

using HD2Vec = std::vector<HD2>;

// Lift a real point with unit seeds on coordinates i (slot 1) and j (slot 2);
// evaluating a C^2 scalar on the result yields f, df/dx_i, df/dx_j and the
// mixed second derivative in the four slots.
inline HD2Vec lift_coordinate(const std::vector<double>& x, int i, int j) {
  int d = static_cast<int>(x.size());
  if (i < 0 || i >= d || j < 0 || j >= d)
    throw std::out_of_range("lift_coordinate: index out of range");
  HD2Vec out(x.size());
  for (int k = 0; k < d; ++k) {
    out[k] = HD2{x[k]};
    if (k == i) out[k].d1 = 1.0;
    if (k == j) out[k].d2 = 1.0;
  }
  return out;
}

inline HD2Vec lift_point(const std::vector<double>& x) {
  HD2Vec out(x.size());
  for (size_t k = 0; k < x.size(); ++k) out[k] = HD2{x[k]};
  return out;
}

// Complex combination of two real hyperduals; enough arithmetic for the
// complex-valued form coefficients used throughout.
struct CHD2 {
  HD2 re, im;

  CHD2() = default;
  CHD2(const HD2& r) : re(r) {}
  CHD2(const HD2& r, const HD2& i) : re(r), im(i) {}
  CHD2(double r) : re(HD2{r}) {}
  CHD2(std::complex<double> c) : re(HD2{c.real()}), im(HD2{c.imag()}) {}

  std::complex<double> value() const { return {re.v, im.v}; }
  std::complex<double> deriv1() const { return {re.d1, im.d1}; }
  std::complex<double> deriv2() const { return {re.d2, im.d2}; }

  CHD2 operator-() const { return {-re, -im}; }
  friend CHD2 operator+(const CHD2& x, const CHD2& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend CHD2 operator-(const CHD2& x, const CHD2& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend CHD2 operator*(const CHD2& x, const CHD2& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend CHD2 operator/(const CHD2& x, const CHD2& y) {
    HD2 n = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
  }
  CHD2& operator+=(const CHD2& o) { return *this = *this + o; }
  CHD2& operator-=(const CHD2& o) { return *this = *this - o; }
  CHD2& operator*=(const CHD2& o) { return *this = *this * o; }
};

inline CHD2 conj(const CHD2& x) { return {x.re, -x.im}; }

}  // namespace lcl
