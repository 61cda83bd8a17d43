#include "cubint/lemma.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cubint/errors.hpp"

namespace cubint {
namespace {

// Truncated Taylor series in (zeta - zeta_i); n counts the trustworthy
// coefficients, and drops by one with each derivative.
struct Jet {
  static constexpr int N = 6;
  std::array<double, N> c{};
  int n = N;

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  static Jet variable(double z) {
    Jet j;
    j.c[0] = z;
    j.c[1] = 1.0;
    return j;
  }
  double value() const { return c[0]; }
};

Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  r.n = std::min(a.n, b.n);
  for (int k = 0; k < Jet::N; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}
Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  r.n = std::min(a.n, b.n);
  for (int k = 0; k < Jet::N; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}
Jet operator*(double s, Jet a) {
  for (double& x : a.c) x *= s;
  return a;
}
Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.n = std::min(a.n, b.n);
  for (int k = 0; k < r.n; ++k)
    for (int i = 0; i <= k; ++i) r.c[k] += a.c[i] * b.c[k - i];
  return r;
}
Jet inverse(const Jet& a) {
  Jet r;
  r.n = a.n;
  r.c[0] = 1.0 / a.c[0];
  for (int k = 1; k < r.n; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += a.c[i] * r.c[k - i];
    r.c[k] = -s / a.c[0];
  }
  return r;
}
Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }
Jet sqrt(const Jet& a) {
  Jet r;
  r.n = a.n;
  r.c[0] = std::sqrt(a.c[0]);
  for (int k = 1; k < r.n; ++k) {
    double s = a.c[k];
    for (int i = 1; i < k; ++i) s -= r.c[i] * r.c[k - i];
    r.c[k] = s / (2.0 * r.c[0]);
  }
  return r;
}
Jet derivative(const Jet& a) {
  Jet r;
  r.n = a.n - 1;
  for (int k = 0; k + 1 < Jet::N; ++k) r.c[k] = (k + 1) * a.c[k + 1];
  return r;
}

Jet cubic(const CubicPoly& f, const Jet& z) {
  return ((Jet::constant(f.c[3]) * z + Jet::constant(f.c[2])) * z + Jet::constant(f.c[1])) * z +
         Jet::constant(f.c[0]);
}

// The six relations, in the order of LemmaResiduals::names.
std::array<double, 6> relations(const Jet& zdot, const Jet& chi, const Jet& f, const Jet& g,
                                const Jet& beta, const Jet& gamma, const Jet& a, double p,
                                double q) {
  auto D = [&](const Jet& x) { return zdot * derivative(x); };
  const Jet df = D(f);
  return {
      (D(chi) + q * f).value(),
      (chi * df - gamma * f).value(),
      (chi * D(g) - beta * f).value(),
      (D(gamma) + chi * a - 2.0 * q * df).value(),
      (a * gamma + 0.5 * (chi * D(a)) - 3.0 * (Jet::constant(p) + q * a) * f).value(),
      (D(beta) - 2.0 * q * D(g)).value(),
  };
}

}  // namespace

double LemmaResiduals::max() const { return *std::max_element(max_abs.begin(), max_abs.end()); }

LemmaResiduals residual_lemma1(const Model& model, const LemmaOptions& options) {
  const Family fam = model.spec.family;
  if (fam != Family::Q0Zeta && fam != Family::PposZeta && fam != Family::PnegZeta)
    throw ArgumentError("residual_lemma1 needs a zeta-chart family, got " +
                        std::string(to_string(fam)));
  if (options.grid_points < 1) throw ArgumentError("residual_lemma1: grid_points must be >= 1");
  const auto& p = model.spec.params;
  const bool q0 = fam == Family::Q0Zeta;
  CubicPoly F;
  if (q0) F = q0_cubic(p.c0, p.rho0);
  else if (fam == Family::PposZeta) F = {{p.c0, p.c1, p.c2, 1.0}};
  else F = {{-p.c0, -p.c1, -p.c2, -1.0}};

  const Interval w = model.domain.x1_window;
  LemmaResiduals res;
  res.points = static_cast<std::size_t>(options.grid_points);
  for (int i = 0; i < options.grid_points; ++i) {
    const double z0 = w.lo + (w.hi - w.lo) * (i + 1) / (options.grid_points + 1);
    const double weighted = (q0 ? 1.0 : z0) * F(z0);
    if (!(weighted > 0.0))
      throw DomainError("residual_lemma1: weighted F is not positive at zeta = " +
                        std::to_string(z0));
    const Jet z = Jet::variable(z0);
    const Jet fz = cubic(F, z);
    std::array<double, 6> r;
    if (q0) {
      // chi, beta constant; dzeta/dtheta = -sqrt(F/3).
      const double chi0 = p.chi0 != 0.0 ? p.chi0 : 1.0;
      const Jet zdot = -1.0 * sqrt((1.0 / 3.0) * fz);
      auto D = [&](const Jet& x) { return zdot * derivative(x); };
      const Jet chi = Jet::constant(chi0);
      const Jet beta = Jet::constant(p.beta0);
      const Jet f = (chi0 / (6.0 * std::sqrt(3.0))) * sqrt(fz);
      const Jet g = (-p.beta0 / 6.0) * z;
      const Jet gamma0 = chi0 * (D(f) / f);
      const Jet a = (-1.0 / chi0) * D(gamma0);
      const Jet gamma = gamma0 + Jet::constant(options.gamma_offset);
      r = relations(zdot, chi, f, g, beta, gamma, a, 1.0, 0.0);
    } else {
      // q = 1 and p = eps so that F carries the leading coefficient p / q.
      const double q = 1.0;
      const double pp = F.c[3];
      const double beta0 = 2.0 * p.beta;
      const Jet zdot = -1.0 * sqrt(fz / z);
      const Jet chi = sqrt(z);
      const Jet f = sqrt(fz) / ((2.0 * q) * z);
      const Jet g = Jet::constant(beta0 / (2.0 * q)) / z;
      const Jet beta = Jet::constant(beta0) / z;
      auto Dchi = [&](const Jet& x) { return (2.0 * chi) * derivative(x); };
      const Jet f1 = Dchi(f);
      const Jet f2 = Dchi(f1);
      const Jet gamma = (-q) * (chi * f1) + Jet::constant(options.gamma_offset);
      const Jet a = (-q * q) * (f * f2 + 3.0 * (f * f1) / chi);
      r = relations(zdot, chi, f, g, beta, gamma, a, pp, q);
    }
    for (std::size_t k = 0; k < 6; ++k) res.max_abs[k] = std::max(res.max_abs[k], std::abs(r[k]));
  }
  return res;
}

}  // namespace cubint
