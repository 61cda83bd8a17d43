#include "families.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "cubint/elliptic.hpp"
#include "cubint/errors.hpp"
#include "cubint/polynomials.hpp"

namespace cubint::detail {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUnboundedWindow = 4.0;

template <class T>
struct Triple {
  T g1, g2, g3;
};

// so(3) generators on (theta, phi, P_theta, P_phi).
template <class T>
Triple<T> so3(const Coords<T>& z) {
  const T s = sin(z.x2), c = cos(z.x2);
  const T cot = cos(z.x1) / sin(z.x1);
  return {s * z.p1 + c * cot * z.p2, c * z.p1 - s * cot * z.p2, z.p2};
}

// so(2,1) generators on (u, phi, P_u, P_phi).
template <class T>
Triple<T> so21(const Coords<T>& z) {
  const T s = sin(z.x2), c = cos(z.x2);
  const T coth = cosh(z.x1) / sinh(z.x1);
  return {s * z.p1 + c * coth * z.p2, c * z.p1 - s * coth * z.p2, z.p2};
}

// Pieces shared by the elliptic u-charts.
template <class T>
struct EllipticPieces {
  T sn, P, D, dlogP;
};

template <class T>
EllipticPieces<T> elliptic_pieces(const T& u, double k2) {
  const auto [s, c, d] = jacobi(u, k2);
  const T s2 = s * s, c2 = c * c, d2 = d * d;
  const T s4 = s2 * s2;
  const T P = s * c * d;
  const T D = square(1.0 - k2 * s4) - 4.0 * k2 * s4 * c2 * d2;
  const T dlogP = (c2 * d2 - s2 * d2 - k2 * s2 * c2) / P;
  return {s, P, D, dlogP};
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const ModelSpec& spec, const std::string& what, double got) {
  throw BuildError(std::string(to_string(spec.family)) + " requires " + what + " (got " + num(got) +
                   ")");
}

void require_finite(const ModelSpec& spec) {
  for (auto name : parameter_names(spec.family)) {
    const double v = spec.params.field(name);
    if (!std::isfinite(v)) fail(spec, std::string(name) + " finite", v);
  }
}

void require_k2(const ModelSpec& spec) {
  const double k2 = spec.params.k2;
  if (!(k2 > 0.0 && k2 < 1.0)) fail(spec, "0 < k2 < 1", k2);
}

Zeta0Input trig_roots(const ModelParams& p) {
  switch (p.trig_roots) {
    case TrigRoots::RealPair: return RealRootPair{p.zeta1, p.zeta2};
    case TrigRoots::Degenerate: return DoubleRoot{p.zeta1};
    case TrigRoots::ComplexPair: return ComplexRootPair{p.re, p.im};
  }
  return RealRootPair{p.zeta1, p.zeta2};
}

// S and P of the normalized quadratic x^2 - S x + P of the trig chart.
std::pair<double, double> trig_sp(const ModelParams& p) {
  switch (p.trig_roots) {
    case TrigRoots::RealPair:
      return {(p.zeta1 + p.zeta2) / p.zeta0, p.zeta1 * p.zeta2 / (p.zeta0 * p.zeta0)};
    case TrigRoots::Degenerate:
      return {2.0 * p.zeta1 / p.zeta0, p.zeta1 * p.zeta1 / (p.zeta0 * p.zeta0)};
    case TrigRoots::ComplexPair:
      return {2.0 * p.re / p.zeta0, (p.re * p.re + p.im * p.im) / (p.zeta0 * p.zeta0)};
  }
  return {0.0, 0.0};
}

CubicPoly zeta_cubic(const ModelSpec& spec) {
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::Q0Zeta: return q0_cubic(p.c0, p.rho0);
    case Family::PposZeta: return {{p.c0, p.c1, p.c2, 1.0}};
    case Family::PnegZeta: return {{-p.c0, -p.c1, -p.c2, -1.0}};
    default: throw ArgumentError("family has no zeta-chart cubic");
  }
}

template <class Fh, class Fq>
Terms terms(const ModelSpec& spec, Fh h, Fq q) {
  const Chart chart = chart_of(spec.family);
  const std::string src(equation_tag(spec.family));
  return {Observable(chart, "H", src, h), Observable(chart, "Q", src, q)};
}

Terms q0_zeta(const ModelSpec& spec, const Scalings& sc) {
  const auto& p = spec.params;
  const CubicPoly F = q0_cubic(p.c0, p.rho0);
  const CubicPoly dF = F.derivative();
  const QuarticPoly G = companion_g(F);
  const double chi0 = p.chi0, beta0 = p.beta0;
  auto h = [=](const auto& z) {
    const auto f = F(z.x1);
    const auto kin = 0.5 * (f * square(z.p1) + G(z.x1) / (4.0 * f) * square(z.p2));
    return sc.kinetic * kin + chi0 * sqrt(f) * cos(z.x2) - beta0 * z.x1;
  };
  auto q = [=](const auto& z) {
    const auto f = F(z.x1);
    const auto sf = sqrt(f);
    const auto qa = -2.0 * chi0 * (sf * sin(z.x2) * z.p1 + dF(z.x1) / (2.0 * sf) * cos(z.x2) * z.p2);
    return cube(z.p2) + sc.alpha * qa + sc.beta * (2.0 * beta0 * z.p2);
  };
  return terms(spec, h, q);
}

Terms q0_sphere(const ModelSpec& spec, const Scalings& sc) {
  const double k2 = spec.params.k2, chi0 = spec.params.chi0, beta0 = spec.params.beta0;
  auto h = [=](const auto& z) {
    const auto e = elliptic_pieces(z.x1, k2);
    const auto kin = 0.5 * (square(z.p1) + e.D / square(e.P) * square(z.p2));
    return sc.kinetic * kin + chi0 * k2 * e.P * cos(z.x2) - beta0 * k2 * square(e.sn);
  };
  auto q = [=](const auto& z) {
    const auto e = elliptic_pieces(z.x1, k2);
    const auto qa = -chi0 * (sin(z.x2) * z.p1 + e.dlogP * cos(z.x2) * z.p2);
    return 4.0 * cube(z.p2) + sc.alpha * qa + sc.beta * (2.0 * beta0 * z.p2);
  };
  return terms(spec, h, q);
}

Terms q0_hyperbolic(const ModelSpec& spec, const Scalings& sc) {
  const double chi0 = spec.params.chi0, beta0 = spec.params.beta0;
  auto h = [=](const auto& z) {
    const auto m = so21(z);
    const auto t = tanh(z.x1);
    const auto kin = square(m.g1) + square(m.g2) - (1.0 - 3.0 / square(cosh(z.x1))) * square(m.g3);
    return sc.kinetic * kin + chi0 * t * (1.0 - t * t) * cos(z.x2) - beta0 * t * t;
  };
  auto q = [=](const auto& z) {
    const auto m = so21(z);
    const auto t = tanh(z.x1);
    const auto qa = -chi0 * (m.g1 - 3.0 * t * cos(z.x2) * m.g3);
    return 4.0 * cube(m.g3) + sc.alpha * qa + sc.beta * (2.0 * beta0 * m.g3);
  };
  return terms(spec, h, q);
}

Terms p0_hyperbolic(const ModelSpec& spec, const Scalings& sc) {
  const double rho = spec.params.rho, alpha = spec.params.alpha, beta = spec.params.beta;
  auto h = [=](const auto& z) {
    const auto m = so21(z);
    const auto w = rho + cosh(z.x1);
    const auto kin = 0.5 * (square(m.g1) + square(m.g2) - square(m.g3)) / w;
    return sc.kinetic * kin + (alpha * sinh(z.x1) * cos(z.x2) + beta) / w;
  };
  auto q = [=](const auto& z) { return h(z) * so21(z).g3 + sc.alpha * (-alpha * so21(z).g1); };
  return terms(spec, h, q);
}

Terms p0_sphere(const ModelSpec& spec, const Scalings& sc) {
  const double rho = spec.params.rho, alpha = spec.params.alpha, beta = spec.params.beta;
  auto h = [=](const auto& z) {
    const auto l = so3(z);
    const auto w = 1.0 + rho * cos(z.x1);
    const auto kin = 0.5 * (square(l.g1) + square(l.g2) + square(l.g3)) / w;
    return sc.kinetic * kin + (alpha * rho * sin(z.x1) * cos(z.x2) + beta) / w;
  };
  auto q = [=](const auto& z) {
    const auto l = so3(z);
    return h(z) * l.g3 + sc.alpha * (alpha * l.g1);
  };
  return terms(spec, h, q);
}

Terms p0_plane(const ModelSpec& spec, const Scalings& sc) {
  const double rho = spec.params.rho, alpha = spec.params.alpha, beta = spec.params.beta;
  const double r2 = rho * rho;
  auto h = [=](const auto& z) {
    const auto w = 1.0 + r2 * (square(z.x1) + square(z.x2));
    const auto kin = 0.5 * (square(z.p1) + square(z.p2)) / w;
    return sc.kinetic * kin + (2.0 * alpha * r2 * z.x1 + beta) / w;
  };
  auto q = [=](const auto& z) {
    return h(z) * (z.x1 * z.p2 - z.x2 * z.p1) + sc.alpha * (-alpha * z.p2);
  };
  return terms(spec, h, q);
}

Terms p_zeta(const ModelSpec& spec, const Scalings& sc, double eps) {
  const CubicPoly F = zeta_cubic(spec);
  const CubicPoly dF = F.derivative();
  const QuarticPoly G = companion_g(F);
  const double alpha = spec.params.alpha, beta = spec.params.beta;
  auto h = [=](const auto& z) {
    const auto f = F(z.x1);
    const auto kin = (f * square(z.p1) + G(z.x1) / (4.0 * f) * square(z.p2)) / (2.0 * z.x1);
    return sc.kinetic * kin + alpha * sqrt(f) / z.x1 * cos(z.x2) + beta / z.x1;
  };
  auto q = [=](const auto& z) {
    const auto sf = sqrt(F(z.x1));
    const auto qa = -2.0 * alpha * (sf * sin(z.x2) * z.p1 + dF(z.x1) / (2.0 * sf) * cos(z.x2) * z.p2);
    return eps * cube(z.p2) + 2.0 * h(z) * z.p2 + sc.alpha * qa;
  };
  return terms(spec, h, q);
}

// Elliptic u-chart with conformal factor zeta(u) = rho + k2 sn^2 (sign +1)
// or k2 (rho - sn^2) (sign -1).
Terms p_sphere_elliptic(const ModelSpec& spec, const Scalings& sc, double sign) {
  const double k2 = spec.params.k2, rho = spec.params.rho;
  const double alpha = spec.params.alpha, beta = spec.params.beta;
  auto zeta = [=](const auto& sn) {
    return sign > 0.0 ? rho + k2 * square(sn) : k2 * (rho - square(sn));
  };
  auto h = [=](const auto& z) {
    const auto e = elliptic_pieces(z.x1, k2);
    const auto w = zeta(e.sn);
    const auto kin = (square(z.p1) + e.D / square(e.P) * square(z.p2)) / (2.0 * w);
    return sc.kinetic * kin + alpha * k2 * e.P / w * cos(z.x2) + beta / w;
  };
  auto q = [=](const auto& z) {
    const auto e = elliptic_pieces(z.x1, k2);
    const auto qa = -sign * alpha * (sin(z.x2) * z.p1 + e.dlogP * cos(z.x2) * z.p2);
    return sign * 4.0 * cube(z.p2) + 2.0 * h(z) * z.p2 + sc.alpha * qa;
  };
  return terms(spec, h, q);
}

// so(2,1) chart with conformal factor rho + tanh^2 (sign +1) or rho - tanh^2.
Terms p_hyperbolic_cubic(const ModelSpec& spec, const Scalings& sc, double sign) {
  const double rho = spec.params.rho, alpha = spec.params.alpha, beta = spec.params.beta;
  auto h = [=](const auto& z) {
    const auto m = so21(z);
    const auto t = tanh(z.x1);
    const auto w = rho + sign * t * t;
    const auto kin = (square(m.g1) + square(m.g2) - (1.0 - 3.0 / square(cosh(z.x1))) * square(m.g3)) /
                     (2.0 * w);
    return sc.kinetic * kin + alpha * t * (1.0 - t * t) / w * cos(z.x2) + beta / w;
  };
  auto q = [=](const auto& z) {
    const auto m = so21(z);
    const auto t = tanh(z.x1);
    const auto qa = -sign * alpha * (m.g1 - 3.0 * t * cos(z.x2) * m.g3);
    return sign * 4.0 * cube(m.g3) + 2.0 * h(z) * m.g3 + sc.alpha * qa;
  };
  return terms(spec, h, q);
}

Terms pneg_sphere_trig(const ModelSpec& spec, const Scalings& sc) {
  const auto [S, P] = trig_sp(spec.params);
  const double alpha = spec.params.alpha, beta = spec.params.beta;
  auto pieces = [=](const auto& theta) {
    const auto mu = cos(theta);
    const auto x = cbrt(square(mu));  // mu^(2/3), real and even in mu
    const auto den = square(x) + x + 1.0;
    const auto num = square(x) - S * x + P;
    const auto f = num / den;
    const auto hh = -square(mu) + (4.0 / 3.0) * (1.0 + S) * square(x) - 2.0 * (S + P) * x + 4.0 * P;
    const auto fx = ((2.0 * x - S) * den - num * (2.0 * x + 1.0)) / square(den);
    return std::array{mu, x, f, hh, fx};
  };
  auto h = [=](const auto& z) {
    const auto [mu, x, f, hh, fx] = pieces(z.x1);
    (void)fx;
    const auto l = so3(z);
    const auto st = sin(z.x1);
    const auto kin = 0.5 * f * (square(l.g1) + square(l.g2)) +
                     0.5 * (hh / (3.0 * f) - square(mu) * f) * square(l.g3) / square(st);
    return sc.kinetic * kin + alpha * st * sqrt(f) / x * cos(z.x2) + beta / x;
  };
  auto q = [=](const auto& z) {
    const auto [mu, x, f, hh, fx] = pieces(z.x1);
    (void)x;
    (void)hh;
    const auto l = so3(z);
    const auto st = sin(z.x1);
    const auto sf = sqrt(f);
    const auto qa = 3.0 * alpha * cbrt(mu) * sf * l.g1 - alpha * st * fx / sf * cos(z.x2) * l.g3;
    return (-4.0 / 9.0) * cube(l.g3) + 2.0 * h(z) * l.g3 + sc.alpha * qa;
  };
  return terms(spec, h, q);
}

Terms dullin_matveev(const ModelSpec& spec, const Scalings& sc) {
  const double rho = spec.params.rho, alpha = spec.params.alpha, beta = spec.params.beta;
  auto h = [=](const auto& z) {
    const auto mu = cos(z.x1);
    const auto st = sin(z.x1);
    const auto u = rho + mu;
    const auto gm = (3.0 * square(mu) + 4.0 * rho * mu + 1.0) / (4.0 * square(u));
    const auto kin = 0.5 * (square(z.p1) + (1.0 / square(st) + gm) * square(z.p2));
    return sc.kinetic * kin + alpha * st / sqrt(u) * cos(z.x2) + beta / u;
  };
  auto q = [=](const auto& z) {
    const auto mu = cos(z.x1);
    const auto st = sin(z.x1);
    const auto su = sqrt(rho + mu);
    const auto dw = mu * su - square(st) / (2.0 * su);  // d/dtheta of sin(theta) sqrt(rho + cos(theta))
    const auto qa = 2.0 * alpha * (su * sin(z.x2) * z.p1 + dw / st * cos(z.x2) * z.p2);
    return -cube(z.p2) + 2.0 * h(z) * z.p2 + sc.alpha * qa;
  };
  return terms(spec, h, q);
}

Terms goryachev_chaplygin(const ModelSpec& spec, const Scalings& sc) {
  const double alpha = spec.params.alpha, beta = spec.params.beta;
  auto h = [=](const auto& z) {
    const auto l = so3(z);
    const auto kin = 0.5 * (square(l.g1) + square(l.g2) + 4.0 * square(l.g3));
    return sc.kinetic * kin + alpha * sin(z.x1) * cos(z.x2) + beta / square(cos(z.x1));
  };
  auto q = [=](const auto& z) {
    const auto l = so3(z);
    const auto qa = alpha * (cos(z.x1) * l.g1 - 2.0 * sin(z.x1) * cos(z.x2) * l.g3);
    return -4.0 * cube(l.g3) + 2.0 * h(z) * l.g3 + sc.alpha * qa;
  };
  return terms(spec, h, q);
}

Terms goryachev(const ModelSpec& spec, const Scalings& sc) {
  const double alpha = spec.params.alpha, beta = spec.params.beta;
  auto h = [=](const auto& z) {
    const auto l = so3(z);
    const auto x = cbrt(square(cos(z.x1)));
    const auto kin = 0.5 * (square(l.g1) + square(l.g2) + (4.0 / 3.0) * square(l.g3));
    return sc.kinetic * kin + alpha * sin(z.x1) / x * cos(z.x2) + beta / x;
  };
  auto q = [=](const auto& z) {
    const auto l = so3(z);
    const auto qa = 3.0 * alpha * cbrt(cos(z.x1)) * l.g1;
    return (-4.0 / 9.0) * cube(z.p2) + 2.0 * h(z) * z.p2 + sc.alpha * qa;
  };
  return terms(spec, h, q);
}

Interval window_of(const Interval& iv) {
  if (iv.bounded()) return iv;
  if (std::isfinite(iv.lo)) return {iv.lo, iv.lo + kUnboundedWindow};
  if (std::isfinite(iv.hi)) return {iv.hi - kUnboundedWindow, iv.hi};
  return {-kUnboundedWindow / 2.0, kUnboundedWindow / 2.0};
}

}  // namespace

void validate(const ModelSpec& spec) {
  require_finite(spec);
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::Q0Zeta:
    case Family::PposZeta:
    case Family::PnegZeta:
    case Family::Q0Hyperbolic:
    case Family::Goryachev:
    case Family::GoryachevChaplygin:
      break;
    case Family::Q0Sphere:
      require_k2(spec);
      break;
    case Family::P0Hyperbolic:
      if (!(p.rho > -1.0)) fail(spec, "rho > -1", p.rho);
      break;
    case Family::P0Sphere:
      if (!(p.rho > 0.0 && p.rho < 1.0)) fail(spec, "0 < rho < 1", p.rho);
      break;
    case Family::P0Plane:
      if (!(p.rho > 0.0)) fail(spec, "rho > 0", p.rho);
      break;
    case Family::PposSphere:
      require_k2(spec);
      if (!(p.rho > 0.0)) fail(spec, "rho > 0", p.rho);
      break;
    case Family::PposHyperbolic:
      if (!(p.rho > 0.0)) fail(spec, "rho > 0", p.rho);
      break;
    case Family::PnegSphereElliptic:
      require_k2(spec);
      if (!(p.rho > 1.0)) fail(spec, "rho > 1", p.rho);
      break;
    case Family::DullinMatveev:
    case Family::PnegHyperbolic:
      if (!(p.rho > 1.0)) fail(spec, "rho > 1", p.rho);
      break;
    case Family::PnegSphereTrig: {
      if (!(p.zeta0 > 0.0)) fail(spec, "zeta0 > 0", p.zeta0);
      switch (p.trig_roots) {
        case TrigRoots::RealPair:
          if (!(p.zeta0 < p.zeta1)) fail(spec, "zeta0 < zeta1", p.zeta1);
          if (!(p.zeta1 < p.zeta2)) fail(spec, "zeta1 < zeta2", p.zeta2);
          break;
        case TrigRoots::Degenerate:
          if (!(p.zeta0 < p.zeta1)) fail(spec, "zeta0 < zeta1", p.zeta1);
          break;
        case TrigRoots::ComplexPair:
          if (!(p.im != 0.0)) fail(spec, "im != 0", p.im);
          break;
      }
      const CubicPoly f = pneg_cubic(p.zeta0, trig_roots(p));
      if (!g_vanishes_at_origin(f)) fail(spec, "G(0) = 0", f.c[1] * f.c[1] - 4.0 * f.c[0] * f.c[2]);
      break;
    }
  }
}

Terms make_terms(const ModelSpec& spec, const Scalings& s) {
  switch (spec.family) {
    case Family::Q0Zeta: return q0_zeta(spec, s);
    case Family::Q0Sphere: return q0_sphere(spec, s);
    case Family::Q0Hyperbolic: return q0_hyperbolic(spec, s);
    case Family::P0Hyperbolic: return p0_hyperbolic(spec, s);
    case Family::P0Sphere: return p0_sphere(spec, s);
    case Family::P0Plane: return p0_plane(spec, s);
    case Family::PposZeta: return p_zeta(spec, s, 1.0);
    case Family::PnegZeta: return p_zeta(spec, s, -1.0);
    case Family::PposSphere: return p_sphere_elliptic(spec, s, 1.0);
    case Family::PnegSphereElliptic: return p_sphere_elliptic(spec, s, -1.0);
    case Family::PposHyperbolic: return p_hyperbolic_cubic(spec, s, 1.0);
    case Family::PnegHyperbolic: return p_hyperbolic_cubic(spec, s, -1.0);
    case Family::PnegSphereTrig: return pneg_sphere_trig(spec, s);
    case Family::DullinMatveev: return dullin_matveev(spec, s);
    case Family::GoryachevChaplygin: return goryachev_chaplygin(spec, s);
    case Family::Goryachev: return goryachev(spec, s);
  }
  throw ArgumentError("unknown family");
}

DomainInfo make_domain(const ModelSpec& spec) {
  DomainInfo info;
  Domain& d = info.domain;
  d.x2 = {-kInf, kInf};
  d.x2_periodic = true;
  d.x2_window = {0.0, 2.0 * kPi};
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::Q0Zeta:
    case Family::PposZeta:
    case Family::PnegZeta: {
      const CubicPoly f = zeta_cubic(spec);
      const Weight w = spec.family == Family::Q0Zeta ? Weight::None : Weight::ZetaFactor;
      const auto pos = positivity_interval(f, companion_g(f), w);
      if (!pos.empty()) {
        d.x1 = pos.best.interval;
        if (!pos.best.regular())
          info.notes.push_back("zeta interval ends at a curvature or origin singularity");
      } else {
        const auto fpos = f_positive_intervals(f, w);
        if (fpos.empty())
          throw BuildError(std::string(to_string(spec.family)) +
                           " requires a zeta interval with weighted F > 0");
        d.x1 = fpos.front();
        info.riemannian = false;
        info.notes.push_back("no interval with G > 0: kinetic form is not positive definite");
      }
      break;
    }
    case Family::Q0Sphere:
    case Family::PposSphere:
    case Family::PnegSphereElliptic:
      d.x1 = {0.0, complete_elliptic_k(p.k2)};
      break;
    case Family::Q0Hyperbolic:
    case Family::P0Hyperbolic:
    case Family::PposHyperbolic:
    case Family::PnegHyperbolic:
      d.x1 = {0.0, kInf};
      break;
    case Family::P0Sphere:
    case Family::DullinMatveev:
      d.x1 = {0.0, kPi};
      break;
    case Family::GoryachevChaplygin:
      d.x1 = {0.0, p.half_domain ? kPi / 2.0 : kPi};
      if (!p.half_domain && p.beta != 0.0) d.singular_x1.push_back(kPi / 2.0);
      if (p.half_domain)
        info.notes.push_back("theta in (0, pi/2): RP2 reading; the beta term is singular on the equator");
      break;
    case Family::Goryachev:
    case Family::PnegSphereTrig:
      d.x1 = {0.0, kPi};
      d.singular_x1.push_back(kPi / 2.0);
      break;
    case Family::P0Plane:
      d.x1 = {-kInf, kInf};
      d.x2_periodic = false;
      d.x2_window = {-kUnboundedWindow / 2.0, kUnboundedWindow / 2.0};
      break;
  }
  d.x1_window = window_of(d.x1);
  return info;
}

std::function<double(double, double)> conformal_factor(const ModelSpec& spec) {
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::P0Hyperbolic: return [rho = p.rho](double u, double) { return rho + std::cosh(u); };
    case Family::P0Sphere:
      return [rho = p.rho](double t, double) { return 1.0 + rho * std::cos(t); };
    case Family::P0Plane:
      return [r2 = p.rho * p.rho](double x, double y) { return 1.0 + r2 * (x * x + y * y); };
    case Family::PposZeta:
    case Family::PnegZeta: return [](double z, double) { return z; };
    case Family::PposSphere:
      return [k2 = p.k2, rho = p.rho](double u, double) {
        const double s = jacobi(u, k2).sn;
        return rho + k2 * s * s;
      };
    case Family::PnegSphereElliptic:
      return [k2 = p.k2, rho = p.rho](double u, double) {
        const double s = jacobi(u, k2).sn;
        return k2 * (rho - s * s);
      };
    case Family::PposHyperbolic:
      return [rho = p.rho](double u, double) { return rho + std::tanh(u) * std::tanh(u); };
    case Family::PnegHyperbolic:
      return [rho = p.rho](double u, double) { return rho - std::tanh(u) * std::tanh(u); };
    case Family::DullinMatveev:
      return [rho = p.rho](double t, double) { return rho + std::cos(t); };
    case Family::PnegSphereTrig:
    case Family::Goryachev:
      return [](double t, double) { return std::cbrt(std::cos(t) * std::cos(t)); };
    default: return [](double, double) { return 1.0; };
  }
}

}  // namespace cubint::detail
