#pragma once

// Forward-mode dual scalar with a fixed four-slot gradient, one slot per
// phase-space coordinate (x1, x2, p1, p2).
//
// The math functions below are declared for both double and Dual inside
// namespace cubint, so generic code in this namespace can call `sin(x)`
// unqualified and get the right overload for either scalar type.

#include <array>
#include <cmath>
#include <cstddef>

namespace cubint {

struct alignas(32) Grad4 {
  std::array<double, 4> d{};

  constexpr double& operator[](std::size_t i) { return d[i]; }
  constexpr double operator[](std::size_t i) const { return d[i]; }
};

constexpr Grad4 operator+(const Grad4& a, const Grad4& b) {
  Grad4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = a[i] + b[i];
  return r;
}
constexpr Grad4 operator-(const Grad4& a, const Grad4& b) {
  Grad4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = a[i] - b[i];
  return r;
}
constexpr Grad4 operator-(const Grad4& a) {
  Grad4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = -a[i];
  return r;
}
constexpr Grad4 operator*(double s, const Grad4& a) {
  Grad4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = s * a[i];
  return r;
}
/// s*a + t*b, the workhorse of the product and quotient rules.
constexpr Grad4 combine(double s, const Grad4& a, double t, const Grad4& b) {
  Grad4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = s * a[i] + t * b[i];
  return r;
}

struct Dual {
  double value = 0.0;
  Grad4 grad{};

  constexpr Dual() = default;
  constexpr Dual(double v) : value(v) {}  // NOLINT: implicit constant lift
  constexpr Dual(double v, const Grad4& g) : value(v), grad(g) {}

  /// Independent variable number `slot` (0..3) with value v.
  static constexpr Dual variable(double v, std::size_t slot) {
    Dual r(v);
    r.grad[slot] = 1.0;
    return r;
  }

  constexpr Dual& operator+=(const Dual& o) {
    value += o.value;
    grad = grad + o.grad;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    value -= o.value;
    grad = grad - o.grad;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    grad = combine(o.value, grad, value, o.grad);
    value *= o.value;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.value;
    const double q = value * inv;
    grad = combine(inv, grad, -q * inv, o.grad);
    value = q;
    return *this;
  }
};

constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }
constexpr Dual operator-(const Dual& a) { return {-a.value, -a.grad}; }
constexpr Dual operator+(const Dual& a) { return a; }

constexpr Dual operator+(Dual a, double b) { a.value += b; return a; }
constexpr Dual operator+(double a, Dual b) { b.value += a; return b; }
constexpr Dual operator-(Dual a, double b) { a.value -= b; return a; }
constexpr Dual operator-(double a, const Dual& b) { return {a - b.value, -b.grad}; }
constexpr Dual operator*(const Dual& a, double b) { return {a.value * b, b * a.grad}; }
constexpr Dual operator*(double a, const Dual& b) { return {a * b.value, a * b.grad}; }
constexpr Dual operator/(const Dual& a, double b) { return {a.value / b, (1.0 / b) * a.grad}; }
constexpr Dual operator/(double a, const Dual& b) {
  const double q = a / b.value;
  return {q, (-q / b.value) * b.grad};
}

constexpr bool operator<(const Dual& a, const Dual& b) { return a.value < b.value; }
constexpr bool operator>(const Dual& a, const Dual& b) { return a.value > b.value; }

/// Plain value of a double or Dual.
constexpr double value_of(double x) { return x; }
constexpr double value_of(const Dual& x) { return x.value; }

// Chain rule helper: f(x) with f'(x) = slope.
constexpr Dual chain(const Dual& x, double fx, double slope) {
  return {fx, slope * x.grad};
}

inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double tan(double x) { return std::tan(x); }
inline double sinh(double x) { return std::sinh(x); }
inline double cosh(double x) { return std::cosh(x); }
inline double tanh(double x) { return std::tanh(x); }
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double cbrt(double x) { return std::cbrt(x); }
inline double asin(double x) { return std::asin(x); }

inline Dual sin(const Dual& x) { return chain(x, std::sin(x.value), std::cos(x.value)); }
inline Dual cos(const Dual& x) { return chain(x, std::cos(x.value), -std::sin(x.value)); }
inline Dual tan(const Dual& x) {
  const double t = std::tan(x.value);
  return chain(x, t, 1.0 + t * t);
}
inline Dual sinh(const Dual& x) { return chain(x, std::sinh(x.value), std::cosh(x.value)); }
inline Dual cosh(const Dual& x) { return chain(x, std::cosh(x.value), std::sinh(x.value)); }
inline Dual tanh(const Dual& x) {
  const double t = std::tanh(x.value);
  return chain(x, t, 1.0 - t * t);
}
inline Dual exp(const Dual& x) {
  const double e = std::exp(x.value);
  return chain(x, e, e);
}
inline Dual log(const Dual& x) { return chain(x, std::log(x.value), 1.0 / x.value); }
inline Dual sqrt(const Dual& x) {
  const double r = std::sqrt(x.value);
  return chain(x, r, 0.5 / r);
}
/// Real cube root; odd, so cbrt(-8) = -2.
inline Dual cbrt(const Dual& x) {
  const double r = std::cbrt(x.value);
  return chain(x, r, 1.0 / (3.0 * r * r));
}
inline Dual asin(const Dual& x) {
  return chain(x, std::asin(x.value), 1.0 / std::sqrt(1.0 - x.value * x.value));
}

template <class T>
constexpr T square(const T& x) { return x * x; }
template <class T>
constexpr T cube(const T& x) { return x * x * x; }

}  // namespace cubint
