#include "cubint/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <utility>

#include "cubint/errors.hpp"

namespace cubint {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMergeRelative = 1e-8;

// Sum of products a_i * b_i with error-free product transformation and
// Neumaier summation; exact whenever the true sum is representable and
// the terms cancel in pairs.
double compensated_dot(std::initializer_list<std::pair<double, double>> terms) {
  double sum = 0.0;
  double comp = 0.0;
  auto add = [&](double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  };
  for (const auto& [a, b] : terms) {
    const double p = a * b;
    add(p);
    add(std::fma(a, b, -p));
  }
  return sum + comp;
}

// Bound on the rounding error of Horner evaluation at z.
double evaluation_tolerance(const CubicPoly& f, double z) {
  const double az = std::abs(z);
  double bound = 0.0;
  double zp = 1.0;
  for (double ci : f.c) {
    bound += std::abs(ci) * zp;
    zp *= az;
  }
  return 16.0 * kEps * bound;
}

struct QuadraticRoots {
  int count = 0;  // 0 (complex pair), 1 (double root), 2
  double lo = 0.0;
  double hi = 0.0;
  double re = 0.0;
  double im = 0.0;
};

// a z^2 + b z + c with a != 0.
QuadraticRoots solve_quadratic(double a, double b, double c) {
  const double bb = b * b;
  const double bb_err = std::fma(b, b, -bb);
  const double ac4 = 4.0 * a * c;
  const double ac4_err = std::fma(4.0 * a, c, -ac4);
  const double disc = (bb - ac4) + (bb_err - ac4_err);
  const double tol = 16.0 * kEps * (bb + std::abs(ac4));
  QuadraticRoots r;
  if (std::abs(disc) <= tol) {
    r.count = 1;
    r.lo = r.hi = -b / (2.0 * a);
    return r;
  }
  if (disc < 0.0) {
    r.count = 0;
    r.re = -b / (2.0 * a);
    r.im = std::sqrt(-disc) / (2.0 * std::abs(a));
    return r;
  }
  const double s = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(s, b));
  double r1 = q / a;
  double r2 = q != 0.0 ? c / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  r.count = 2;
  r.lo = r1;
  r.hi = r2;
  return r;
}

double polish(const CubicPoly& f, double x) {
  const CubicPoly df = f.derivative();
  double fx = std::abs(f(x));
  for (int i = 0; i < 4 && fx > 0.0; ++i) {
    const double d = df(x);
    if (d == 0.0) break;
    const double x1 = x - f(x) / d;
    const double f1 = std::abs(f(x1));
    if (!(f1 < fx)) break;
    x = x1;
    fx = f1;
  }
  return x;
}

// Root of f in (a, b) given a strict sign change.
double bisect(const CubicPoly& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 2000; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return polish(f, std::abs(f(a)) <= std::abs(f(b)) ? a : b);
}

struct Candidate {
  double value;
  int touch_multiplicity;  // 0 for a sign-change root
};

RootSet merge(std::vector<Candidate> cands, int degree) {
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& x, const Candidate& y) { return x.value < y.value; });
  double scale = 1.0;
  for (const auto& c : cands) scale = std::max(scale, 1.0 + std::abs(c.value));
  const double gap = kMergeRelative * scale;

  RootSet rs;
  rs.degree = degree;
  std::size_t i = 0;
  while (i < cands.size()) {
    std::size_t j = i + 1;
    while (j < cands.size() && cands[j].value - cands[j - 1].value < gap) ++j;
    int touch = 0;
    int touches = 0;
    int crossings = 0;
    double value = cands[i].value;
    for (std::size_t k = i; k < j; ++k) {
      if (cands[k].touch_multiplicity > 0) {
        // A critical point where F vanishes is the best location estimate.
        if (touches == 0) value = cands[k].value;
        touch = std::max(touch, cands[k].touch_multiplicity);
        ++touches;
      } else {
        ++crossings;
      }
    }
    if (touches == 0) value = cands[i + (j - i) / 2].value;
    int mult = std::max({touch, crossings, touches > 1 ? 3 : 0});
    mult = std::clamp(mult, 1, 3);
    rs.real.push_back({value, mult});
    i = j;
  }
  // Clusters can over-count only when rounding splits one root in several
  // ways; trim from the largest multiplicity.
  int total = 0;
  for (const auto& r : rs.real) total += r.multiplicity;
  while (total > degree) {
    auto it = std::max_element(rs.real.begin(), rs.real.end(),
                               [](const RealRoot& a, const RealRoot& b) {
                                 return a.multiplicity < b.multiplicity;
                               });
    --it->multiplicity;
    --total;
  }
  return rs;
}

}  // namespace

int CubicPoly::degree() const {
  for (int i = 3; i >= 0; --i)
    if (c[static_cast<std::size_t>(i)] != 0.0) return i;
  return -1;
}

CubicPoly CubicPoly::from_roots(double lead, double r0, double r1, double r2) {
  const double e1 = r0 + r1 + r2;
  const double e2 = r0 * r1 + r0 * r2 + r1 * r2;
  const double e3 = r0 * r1 * r2;
  return {{-lead * e3, lead * e2, -lead * e1, lead}};
}

CubicPoly CubicPoly::from_real_and_complex(double lead, double r0, double re, double im) {
  // (z - r0)(z^2 - 2 re z + |w|^2)
  const double s = 2.0 * re;
  const double p = re * re + im * im;
  return {{-lead * r0 * p, lead * (p + r0 * s), -lead * (s + r0), lead}};
}

int RootSet::real_count() const {
  int n = 0;
  for (const auto& r : real) n += r.multiplicity;
  return n;
}

std::vector<double> RootSet::values() const {
  std::vector<double> v;
  v.reserve(real.size());
  for (const auto& r : real) v.push_back(r.value);
  return v;
}

bool RootSet::has_multiple_root() const {
  return std::any_of(real.begin(), real.end(), [](const RealRoot& r) { return r.multiplicity > 1; });
}

RootSet cubic_real_roots(const CubicPoly& f) {
  const int deg = f.degree();
  if (deg < 0) throw ArgumentError("cubic_real_roots: zero polynomial");
  RootSet rs;
  rs.degree = deg;
  if (deg == 0) return rs;
  if (deg == 1) {
    rs.real.push_back({-f.c[0] / f.c[1], 1});
    return rs;
  }
  if (deg == 2) {
    const auto q = solve_quadratic(f.c[2], f.c[1], f.c[0]);
    if (q.count == 0) {
      rs.complex = ComplexPair{q.re, q.im};
      return rs;
    }
    if (q.count == 1) return merge({{q.lo, 2}}, 2);
    return merge({{polish(f, q.lo), 0}, {polish(f, q.hi), 0}}, 2);
  }

  const double lead = f.c[3];
  double bound = 0.0;
  for (int i = 0; i < 3; ++i) bound = std::max(bound, std::abs(f.c[static_cast<std::size_t>(i)] / lead));
  bound += 1.0;

  std::vector<double> breaks{-bound};
  std::vector<Candidate> cands;
  const CubicPoly df = f.derivative();
  const auto crit = solve_quadratic(df.c[2], df.c[1], df.c[0]);
  auto consider_critical = [&](double cp, bool double_cp) {
    breaks.push_back(cp);
    if (std::abs(f(cp)) <= evaluation_tolerance(f, cp)) {
      const double f2 = 6.0 * lead * cp + 2.0 * f.c[2];
      const double f2_tol = 16.0 * kEps * (std::abs(6.0 * lead * cp) + std::abs(2.0 * f.c[2]));
      cands.push_back({cp, (double_cp || std::abs(f2) <= f2_tol) ? 3 : 2});
    }
  };
  if (crit.count == 1) consider_critical(crit.lo, true);
  if (crit.count == 2) {
    consider_critical(crit.lo, false);
    consider_critical(crit.hi, false);
  }
  breaks.push_back(bound);

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const double fa = f(a);
    const double fb = f(b);
    if (fa != 0.0 && fb != 0.0 && std::signbit(fa) != std::signbit(fb))
      cands.push_back({bisect(f, a, b), 0});
  }

  rs = merge(std::move(cands), 3);
  if (rs.real_count() == 1) {
    const double r = rs.real.front().value;
    // Synthetic division by (z - r).
    const double q2 = f.c[3];
    const double q1 = f.c[2] + r * q2;
    const double q0 = f.c[1] + r * q1;
    const auto q = solve_quadratic(q2, q1, q0);
    rs.complex = ComplexPair{q.re, q.count == 0 ? q.im : 0.0};
  }
  return rs;
}

double discriminant_q0(double c0, double rho0) { return c0 * c0 * c0 + rho0 * rho0; }

CubicPoly q0_cubic(double c0, double rho0) { return {{-2.0 * rho0, 3.0 * c0, 0.0, 1.0}}; }

QuarticPoly companion_g(const CubicPoly& f) {
  const auto& c = f.c;
  // F' = d0 + d1 z + d2 z^2, F'' = e0 + e1 z.
  const double d0 = c[1], d1 = 2.0 * c[2], d2 = 3.0 * c[3];
  const double e0 = 2.0 * c[2], e1 = 6.0 * c[3];
  QuarticPoly g;
  g.g[0] = compensated_dot({{d0, d0}, {-2.0 * c[0], e0}});
  g.g[1] = compensated_dot({{2.0 * d0, d1}, {-2.0 * c[0], e1}, {-2.0 * c[1], e0}});
  g.g[2] = compensated_dot({{d1, d1}, {2.0 * d0, d2}, {-2.0 * c[1], e1}, {-2.0 * c[2], e0}});
  g.g[3] = compensated_dot({{2.0 * d1, d2}, {-2.0 * c[2], e1}, {-2.0 * c[3], e0}});
  g.g[4] = compensated_dot({{d2, d2}, {-2.0 * c[3], e1}});
  return g;
}

bool check_g_prime_identity(const CubicPoly& f, const QuarticPoly& g, int eps) {
  const CubicPoly dg = g.derivative();
  double scale = 0.0;
  std::array<double, 4> residual{};
  for (std::size_t k = 0; k < 4; ++k) {
    const double rhs = 12.0 * eps * f.c[k];
    residual[k] = dg.c[k] + rhs;
    scale = std::max({scale, std::abs(dg.c[k]), std::abs(rhs)});
  }
  if (scale == 0.0) return true;
  return std::all_of(residual.begin(), residual.end(),
                     [&](double r) { return std::abs(r) <= 1e-13 * scale; });
}

}  // namespace cubint
