#include "cubint/elliptic.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "cubint/errors.hpp"

namespace cubint {
namespace {

constexpr double kModulusCutoff = 1e-15;
constexpr int kMaxLanden = 40;

void check_parameter(double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw DomainError("elliptic parameter m must lie in [0, 1]");
}

// sn, cn for u >= 0, 0 < m < 1.
std::array<double, 2> landen_sn_cn(double u, double m) {
  std::array<double, kMaxLanden + 1> a{};
  std::array<double, kMaxLanden + 1> c{};
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double b = std::sqrt(1.0 - m);
  int n = 0;
  while (std::abs(c[n]) > kModulusCutoff * a[n] && n < kMaxLanden) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  return {std::sin(phi), std::cos(phi)};
}

}  // namespace

double complete_elliptic_k(double m) {
  if (!(m >= 0.0 && m < 1.0)) throw DomainError("complete_elliptic_k requires 0 <= m < 1");
  if (m == 0.0) return 0.5 * std::numbers::pi;
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int i = 0; i < kMaxLanden && std::abs(a - b) > kModulusCutoff * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * std::numbers::pi / a;
}

JacobiTriple jacobi(double u, double m) {
  if (!std::isfinite(u)) throw ArgumentError("jacobi: argument u must be finite");
  check_parameter(m);
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  // sn is odd, cn and dn even; sn and cn have real period 4K.
  const double sign = u < 0.0 ? -1.0 : 1.0;
  double r = std::abs(u);
  const double period = 4.0 * complete_elliptic_k(m);
  if (r >= period) r = std::fmod(r, period);
  const auto [sn, cn] = landen_sn_cn(r, m);
  // 1 - m sn^2 written as a sum of non-negative terms.
  const double dn = std::sqrt(cn * cn + (1.0 - m) * sn * sn);
  return {sign * sn, cn, dn};
}

BasicJacobiTriple<Dual> jacobi(const Dual& u, double m) {
  const auto [sn, cn, dn] = jacobi(u.value, m);
  return {chain(u, sn, cn * dn), chain(u, cn, -sn * dn), chain(u, dn, -m * sn * cn)};
}

}  // namespace cubint
