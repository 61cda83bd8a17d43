#include "cubint/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cubint/errors.hpp"
#include "cubint/simd.hpp"

namespace cubint {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kGridPoints = 10000;
constexpr double kMergeRelative = 1e-9;
constexpr double kOriginGTolerance = 1e-9;

double weight_at(Weight w, double z) { return w == Weight::ZetaFactor ? z : 1.0; }

double cauchy_bound(const double* c, int n) {
  int deg = n - 1;
  while (deg > 0 && c[deg] == 0.0) --deg;
  if (deg <= 0) return 0.0;
  double m = 0.0;
  for (int i = 0; i < deg; ++i) m = std::max(m, std::abs(c[i] / c[deg]));
  return 1.0 + m;
}

// Sign change of g bisected down to 1e-12 (relative beyond |z| = 1).
double bisect_g(const QuarticPoly& g, double a, double b) {
  double ga = g(a);
  while (b - a > 1e-12 * std::max(1.0, std::abs(a))) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double gm = g(m);
    if (gm == 0.0) return m;
    if (std::signbit(gm) == std::signbit(ga)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

struct Breakpoint {
  double value;
  int f_multiplicity = 0;  // 0: not a root of F
  bool origin = false;
};

EndpointKind label(const Breakpoint& b, const CubicPoly& f, Weight w) {
  if (!std::isfinite(b.value)) return EndpointKind::BoundaryAtInfinity;
  if (w == Weight::ZetaFactor && b.origin)
    return g_vanishes_at_origin(f) ? EndpointKind::RegularExtension
                                   : EndpointKind::OriginSingularity;
  if (b.f_multiplicity == 1) return EndpointKind::Pole;
  if (b.f_multiplicity >= 2) return EndpointKind::BoundaryAtInfinity;
  return EndpointKind::CurvatureSingularity;
}

double test_point(double a, double b) {
  if (std::isfinite(a) && std::isfinite(b)) return 0.5 * (a + b);
  if (std::isfinite(a)) return a + 1.0 + std::abs(a);
  if (std::isfinite(b)) return b - 1.0 - std::abs(b);
  return 0.0;
}

std::vector<Breakpoint> merge_breakpoints(std::vector<Breakpoint> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.value < b.value; });
  std::vector<Breakpoint> out;
  for (const auto& p : pts) {
    if (!out.empty() &&
        p.value - out.back().value <= kMergeRelative * (1.0 + std::abs(p.value))) {
      Breakpoint& q = out.back();
      // Origin wins the location, then a root of F, then a zero of G.
      if (p.origin) q.value = 0.0;
      else if (!q.origin && p.f_multiplicity > 0 && q.f_multiplicity == 0) q.value = p.value;
      q.origin = q.origin || p.origin;
      q.f_multiplicity = std::max(q.f_multiplicity, p.f_multiplicity);
      continue;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Breakpoint> f_breakpoints(const CubicPoly& f, Weight w) {
  std::vector<Breakpoint> pts;
  if (f.degree() > 0)
    for (const auto& r : cubic_real_roots(f).real) pts.push_back({r.value, r.multiplicity, false});
  if (w == Weight::ZetaFactor) pts.push_back({0.0, 0, true});
  return pts;
}

AdmissibleInterval make_interval(double lo, EndpointKind lk, double hi, EndpointKind hk) {
  return {{lo, hi}, lk, hk};
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Classification with_positivity(Classification c, const CubicPoly& f, Weight w) {
  const auto pos = positivity_interval(f, companion_g(f), w);
  c.interval = pos.empty() ? AdmissibleInterval{{0.0, 0.0}} : pos.best;
  if (pos.empty()) c.notes.push_back("no interval satisfies the positivity constraints");
  for (double z : pos.g_zeros)
    c.notes.push_back("curvature singularity where G vanishes at zeta = " + fmt_double(z));
  return c;
}

Classification base(double disc, const RootSet& roots) {
  Classification c;
  c.discriminant = disc;
  c.roots = roots;
  if (roots.complex) c.discriminant_sign = 1;
  else if (roots.has_multiple_root()) c.discriminant_sign = 0;
  else c.discriminant_sign = roots.real_count() == roots.degree && roots.degree >= 2 ? -1 : 1;
  c.regime = "none";
  return c;
}

void set_verdict(Classification& c, Manifold m, std::string regime, std::optional<Family> fam,
                 AdmissibleInterval iv) {
  c.manifold = m;
  c.regime = std::move(regime);
  c.family = fam;
  c.interval = iv;
}

Regime as_regime(const Classification& c) {
  return {c.regime, c.family, c.interval, c.chart_params};
}

}  // namespace

std::string_view to_string(EndpointKind kind) {
  switch (kind) {
    case EndpointKind::Pole: return "pole";
    case EndpointKind::CurvatureSingularity: return "curvature-singularity";
    case EndpointKind::BoundaryAtInfinity: return "boundary-at-infinity";
    case EndpointKind::OriginSingularity: return "origin-singularity";
    case EndpointKind::RegularExtension: return "regular-extension";
  }
  return "unknown";
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

bool AdmissibleInterval::regular() const {
  auto ok = [](EndpointKind k) {
    return k == EndpointKind::Pole || k == EndpointKind::BoundaryAtInfinity ||
           k == EndpointKind::RegularExtension;
  };
  return !interval.empty() && ok(lo_kind) && ok(hi_kind);
}

PositivityResult positivity_interval(const CubicPoly& f, const QuarticPoly& g, Weight weight) {
  if (f.degree() < 0) throw ArgumentError("positivity_interval: F is the zero polynomial");
  const double r = std::max({cauchy_bound(f.c.data(), 4), cauchy_bound(g.g.data(), 5), 1.0}) + 1.0;

  std::vector<Breakpoint> fpts = f_breakpoints(f, weight);
  std::vector<double> nodes(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i)
    nodes[static_cast<std::size_t>(i)] = -r + 2.0 * r * i / (kGridPoints - 1);
  for (const auto& b : fpts) nodes.push_back(b.value);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<double> gv(nodes.size());
  simd::kernels().horner(g.g, nodes, gv);

  PositivityResult res;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (gv[i] == 0.0) {
      res.g_zeros.push_back(nodes[i]);
    } else if (gv[i + 1] != 0.0 && std::signbit(gv[i]) != std::signbit(gv[i + 1])) {
      res.g_zeros.push_back(bisect_g(g, nodes[i], nodes[i + 1]));
    }
  }
  if (!nodes.empty() && gv.back() == 0.0) res.g_zeros.push_back(nodes.back());

  std::vector<Breakpoint> pts = fpts;
  for (double z : res.g_zeros) pts.push_back({z, 0, false});
  pts = merge_breakpoints(std::move(pts));
  // Report G zeros that are not roots of F and not the origin.
  res.g_zeros.clear();
  for (const auto& p : pts)
    if (p.f_multiplicity == 0 && !p.origin) res.g_zeros.push_back(p.value);

  std::vector<Breakpoint> ends;
  ends.push_back({-kInf});
  ends.insert(ends.end(), pts.begin(), pts.end());
  ends.push_back({kInf});
  for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
    const double a = ends[i].value;
    const double b = ends[i + 1].value;
    const double t = test_point(a, b);
    if (!(weight_at(weight, t) * f(t) > 0.0 && g(t) > 0.0)) continue;
    res.feasible.push_back(
        make_interval(a, label(ends[i], f, weight), b, label(ends[i + 1], f, weight)));
  }
  if (!res.feasible.empty()) {
    auto it = std::find_if(res.feasible.begin(), res.feasible.end(),
                           [](const AdmissibleInterval& iv) { return iv.regular(); });
    res.best = it != res.feasible.end() ? *it : res.feasible.front();
  } else {
    res.best = {{0.0, 0.0}};
  }
  return res;
}

std::vector<Interval> f_positive_intervals(const CubicPoly& f, Weight weight) {
  if (f.degree() < 0) throw ArgumentError("f_positive_intervals: F is the zero polynomial");
  std::vector<Breakpoint> ends{{-kInf}};
  for (const auto& b : merge_breakpoints(f_breakpoints(f, weight))) ends.push_back(b);
  ends.push_back({kInf});
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
    const double t = test_point(ends[i].value, ends[i + 1].value);
    if (weight_at(weight, t) * f(t) > 0.0) out.push_back({ends[i].value, ends[i + 1].value});
  }
  return out;
}

double cubic_discriminant(double c0, double c1, double c2) {
  // Standard discriminant of z^3 + a z^2 + b z + c is
  // 18abc - 4a^3 c + a^2 b^2 - 4 b^3 - 27 c^2; the sign is flipped and the
  // result divided by 108 so that z^3 + 3 c0 z - 2 rho0 gives c0^3 + rho0^2.
  const double a = c2, b = c1, c = c0;
  const double d = 18.0 * a * b * c - 4.0 * a * a * a * c + a * a * b * b - 4.0 * b * b * b -
                   27.0 * c * c;
  return -d / 108.0;
}

Classification classify_q0(double c0, double rho0) {
  const CubicPoly f = q0_cubic(c0, rho0);
  Classification c = base(discriminant_q0(c0, rho0), cubic_real_roots(f));
  const auto& rr = c.roots.real;
  if (rr.size() == 3) {
    const double z0 = rr[0].value, z1 = rr[1].value, z2 = rr[2].value;
    set_verdict(c, Manifold::S2, "q0-sphere", Family::Q0Sphere,
                make_interval(z0, EndpointKind::Pole, z1, EndpointKind::Pole));
    c.chart_params["k2"] = (z1 - z0) / (z2 - z0);
    return c;
  }
  if (rr.size() == 2) {
    const RealRoot& dbl = rr[0].multiplicity == 2 ? rr[0] : rr[1];
    const double z1 = dbl.value;
    c.chart_params["zeta1"] = z1;
    if (z1 > 0.0) {
      set_verdict(c, Manifold::H2, "q0-hyperbolic", Family::Q0Hyperbolic,
                  make_interval(-2.0 * z1, EndpointKind::Pole, z1,
                                EndpointKind::BoundaryAtInfinity));
      return c;
    }
    c.notes.push_back("double root zeta1 <= 0: the interval ends at a curvature singularity");
    return with_positivity(std::move(c), f, Weight::None);
  }
  if (rr.size() == 1 && rr[0].multiplicity == 3)
    c.notes.push_back("triple root at zero: excluded");
  return with_positivity(std::move(c), f, Weight::None);
}

Classification classify_p0(double c0, double c1, double c2) {
  const CubicPoly f{{c0, c1, c2, 0.0}};
  if (f.degree() < 1) {
    Classification c;
    c.discriminant = -(c1 * c1 - 4.0 * c0 * c2);
    c.regime = "none";
    c.notes.push_back("F is constant");
    return c;
  }
  Classification c = base(-(c1 * c1 - 4.0 * c0 * c2), cubic_real_roots(f));
  const auto& rr = c.roots.real;
  if (c2 != 0.0) {
    if (rr.size() != 2) {
      c.notes.push_back("G = c1^2 - 4 c0 c2 <= 0: positivity fails");
      return with_positivity(std::move(c), f, Weight::ZetaFactor);
    }
    const double z1 = rr[0].value, z2 = rr[1].value;
    if (c2 > 0.0 && z2 > 0.0) {
      set_verdict(c, Manifold::H2, "p0-hyperbolic", Family::P0Hyperbolic,
                  make_interval(z2, EndpointKind::Pole, kInf, EndpointKind::BoundaryAtInfinity));
      c.chart_params["rho"] = (z2 + z1) / (z2 - z1);
      return c;
    }
    if (c2 < 0.0 && (z1 > 0.0 || z2 < 0.0)) {
      set_verdict(c, Manifold::S2, "p0-sphere", Family::P0Sphere,
                  make_interval(z1, EndpointKind::Pole, z2, EndpointKind::Pole));
      c.chart_params["rho"] = (z2 - z1) / (z2 + z1);
      if (z2 < 0.0) c.notes.push_back("both roots negative: rho < 0, the metric is reversed in sign");
      return c;
    }
    c.notes.push_back("root ordering straddles zeta = 0, a curvature singularity");
    return with_positivity(std::move(c), f, Weight::ZetaFactor);
  }
  // c2 == 0: F = c0 + c1 z.
  const double z1 = rr.front().value;
  c.chart_params["zeta1"] = z1;
  if (c1 > 0.0 && z1 > 0.0) {
    set_verdict(c, Manifold::R2, "p0-plane", Family::P0Plane,
                make_interval(z1, EndpointKind::Pole, kInf, EndpointKind::BoundaryAtInfinity));
    return c;
  }
  if (c1 > 0.0 && z1 == 0.0)
    c.notes.push_back("zeta1 = 0 gives a half-angle potential that is not a function");
  else
    c.notes.push_back("zeta = 0 is a curvature singularity");
  return with_positivity(std::move(c), f, Weight::ZetaFactor);
}

Classification classify_general(int eps, double c0, double c1, double c2) {
  if (eps != 1 && eps != -1) throw ArgumentError("eps must be +1 or -1");
  const CubicPoly f{{eps * c0, eps * c1, eps * c2, static_cast<double>(eps)}};
  Classification c = base(cubic_discriminant(c0, c1, c2), cubic_real_roots(f));
  const auto& rr = c.roots.real;
  const bool g0 = g_vanishes_at_origin(f);

  if (eps == 1) {
    if (rr.size() == 3) {
      const double z0 = rr[0].value, z1 = rr[1].value, z2 = rr[2].value;
      if (z0 > 0.0) {
        set_verdict(c, Manifold::S2, "ppos-sphere", Family::PposSphere,
                    make_interval(z0, EndpointKind::Pole, z1, EndpointKind::Pole));
        c.chart_params["k2"] = (z1 - z0) / (z2 - z0);
        c.chart_params["rho"] = z0 / (z2 - z0);
        return c;
      }
      c.notes.push_back("smallest root is not positive");
    } else if (rr.size() == 2) {
      const bool first_double = rr[0].multiplicity == 2;
      const double d = first_double ? rr[0].value : rr[1].value;
      const double s = first_double ? rr[1].value : rr[0].value;
      if (0.0 < s && s < d) {
        set_verdict(c, Manifold::H2, "ppos-hyperbolic", Family::PposHyperbolic,
                    make_interval(s, EndpointKind::Pole, d, EndpointKind::BoundaryAtInfinity));
        c.chart_params["rho"] = s / (d - s);
        return c;
      }
      c.notes.push_back("double-root ordering does not give 0 < zeta0 < zeta1");
    }
    return with_positivity(std::move(c), f, Weight::ZetaFactor);
  }

  // eps == -1
  if (rr.size() == 3) {
    const double z0 = rr[0].value, z1 = rr[1].value, z2 = rr[2].value;
    if (c0 == 0.0 && z1 > 0.0 && std::abs(z0) <= 1e-12 * (1.0 + z2)) {
      set_verdict(c, Manifold::S2, "dullin-matveev", Family::DullinMatveev,
                  make_interval(z1, EndpointKind::Pole, z2, EndpointKind::Pole));
      c.chart_params["rho"] = (z2 + z1) / (z2 - z1);
      return c;
    }
    if (z1 > 0.0) {
      Classification ell = c;
      set_verdict(ell, Manifold::S2, "pneg-sphere-elliptic", Family::PnegSphereElliptic,
                  make_interval(z1, EndpointKind::Pole, z2, EndpointKind::Pole));
      ell.chart_params["k2"] = (z2 - z1) / (z2 - z0);
      ell.chart_params["rho"] = z2 / (z2 - z1);
      if (z0 > 0.0 && g0) {
        set_verdict(c, Manifold::S2, "pneg-sphere-trig-real", Family::PnegSphereTrig,
                    make_interval(0.0, EndpointKind::RegularExtension, z0, EndpointKind::Pole));
        c.chart_params["zeta0"] = z0;
        c.chart_params["zeta1"] = z1;
        c.chart_params["zeta2"] = z2;
        c.zeta0_candidates = solve_zeta0(RealRootPair{z1, z2});
        c.alternatives.push_back(as_regime(ell));
        return c;
      }
      return ell;
    }
    c.notes.push_back(
        "three real roots with zeta1 <= 0: no verdict is stated for this ordering");
    return with_positivity(std::move(c), f, Weight::ZetaFactor);
  }
  if (rr.size() == 2) {
    const bool first_double = rr[0].multiplicity == 2;
    const double d = first_double ? rr[0].value : rr[1].value;
    const double s = first_double ? rr[1].value : rr[0].value;
    if (c0 == 0.0 && c1 == 0.0 && s > 0.0) {
      set_verdict(c, Manifold::S2, "goryachev-chaplygin", Family::GoryachevChaplygin,
                  make_interval(0.0, EndpointKind::RegularExtension, s, EndpointKind::Pole));
      c.chart_params["zeta0"] = s;
      c.alternatives.push_back(
          {"goryachev-chaplygin-half", Family::GoryachevChaplygin, c.interval, c.chart_params});
      c.notes.push_back("with theta restricted to (0, pi/2) the manifold reads as RP2");
      return c;
    }
    if (d > 0.0 && s > d) {
      set_verdict(c, Manifold::H2, "pneg-hyperbolic", Family::PnegHyperbolic,
                  make_interval(d, EndpointKind::BoundaryAtInfinity, s, EndpointKind::Pole));
      c.chart_params["rho"] = s / (s - d);
      return c;
    }
    if (d > 0.0 && 0.0 < s && s < d && g0) {
      set_verdict(c, Manifold::S2, "pneg-sphere-trig-degenerate", Family::PnegSphereTrig,
                  make_interval(0.0, EndpointKind::RegularExtension, s, EndpointKind::Pole));
      c.chart_params["zeta0"] = s;
      c.chart_params["zeta1"] = d;
      c.zeta0_candidates = solve_zeta0(DoubleRoot{d});
      return c;
    }
    c.notes.push_back("double-root ordering matches no manifold regime");
    return with_positivity(std::move(c), f, Weight::ZetaFactor);
  }
  if (rr.size() == 1 && rr[0].multiplicity == 1 && c.roots.complex) {
    const double z0 = rr[0].value;
    const auto [re, im] = *c.roots.complex;
    if (z0 > 0.0 && g0) {
      const double m2 = re * re + im * im;
      const bool goryachev = std::abs(z0 + 2.0 * re) <= 1e-9 * (1.0 + z0) &&
                             std::abs(z0 * z0 - m2) <= 1e-9 * (1.0 + m2);
      set_verdict(c, Manifold::S2, goryachev ? "goryachev" : "pneg-sphere-trig-complex",
                  goryachev ? Family::Goryachev : Family::PnegSphereTrig,
                  make_interval(0.0, EndpointKind::RegularExtension, z0, EndpointKind::Pole));
      c.chart_params["zeta0"] = z0;
      c.chart_params["re"] = re;
      c.chart_params["im"] = im;
      c.zeta0_candidates = solve_zeta0(ComplexRootPair{re, im});
      if (goryachev)
        c.alternatives.push_back({"pneg-sphere-trig-complex", Family::PnegSphereTrig, c.interval,
                                  c.chart_params});
      return c;
    }
    c.notes.push_back(g0 ? "real root is not positive" : "G(0) != 0: zeta = 0 is singular");
  }
  return with_positivity(std::move(c), f, Weight::ZetaFactor);
}

bool g_vanishes_at_origin(const CubicPoly& f) {
  // G(0) is quadratic in the coefficients; compare against their squared size
  // so that near-zero c1 and c0 c2 do not make the test relative to noise.
  double size = 0.0;
  for (double c : f.c) size += std::abs(c);
  const double g0 = f.c[1] * f.c[1] - 4.0 * f.c[0] * f.c[2];
  return std::abs(g0) <= kOriginGTolerance * size * size;
}

std::vector<double> solve_zeta0(const Zeta0Input& roots) {
  std::vector<double> raw;
  if (const auto* rp = std::get_if<RealRootPair>(&roots)) {
    if (!(0.0 < rp->zeta1 && rp->zeta1 < rp->zeta2))
      throw ArgumentError("solve_zeta0: real pair requires 0 < zeta1 < zeta2");
    const double s = std::sqrt(rp->zeta1) + std::sqrt(rp->zeta2);
    raw.push_back(rp->zeta1 * rp->zeta2 / (s * s));
  } else if (const auto* dr = std::get_if<DoubleRoot>(&roots)) {
    if (!(dr->zeta1 > 0.0)) throw ArgumentError("solve_zeta0: double root requires zeta1 > 0");
    raw.push_back(dr->zeta1 / 4.0);
  } else {
    const auto& cp = std::get<ComplexRootPair>(roots);
    if (cp.im == 0.0 || !std::isfinite(cp.im) || !std::isfinite(cp.re))
      throw ArgumentError("solve_zeta0: complex pair requires a finite nonzero imaginary part");
    const double m = std::hypot(cp.re, cp.im), b2 = cp.im * cp.im;
    // m^2 / (2 re +- 2 m), with the cancelling denominator rationalised.
    raw.push_back(cp.re >= 0.0 ? m * m / (2.0 * (cp.re + m)) : m * m * (m - cp.re) / (2.0 * b2));
    raw.push_back(cp.re <= 0.0 ? m * m / (2.0 * (cp.re - m)) : -m * m * (m + cp.re) / (2.0 * b2));
  }
  std::vector<double> out;
  for (double z : raw) {
    if (!(z > 0.0) || !std::isfinite(z)) continue;
    const CubicPoly f = pneg_cubic(z, roots);
    if (g_vanishes_at_origin(f)) out.push_back(z);
  }
  return out;
}

CubicPoly pneg_cubic(double zeta0, const Zeta0Input& roots) {
  if (const auto* rp = std::get_if<RealRootPair>(&roots))
    return CubicPoly::from_roots(-1.0, zeta0, rp->zeta1, rp->zeta2);
  if (const auto* dr = std::get_if<DoubleRoot>(&roots))
    return CubicPoly::from_roots(-1.0, zeta0, dr->zeta1, dr->zeta1);
  const auto& cp = std::get<ComplexRootPair>(roots);
  return CubicPoly::from_real_and_complex(-1.0, zeta0, cp.re, cp.im);
}

}  // namespace cubint
