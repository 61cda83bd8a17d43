#include "cubint/models.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cubint/errors.hpp"
#include "families.hpp"

namespace cubint {
namespace {

constexpr double kGateTolerance = 1e-9;
constexpr int kGateStates = 32;
constexpr int kFitStates = 10;
constexpr int kRetestStates = 1000;

struct FieldEntry {
  std::string_view name;
  double ModelParams::*member;
};

constexpr FieldEntry kFields[] = {
    {"c0", &ModelParams::c0},       {"c1", &ModelParams::c1},       {"c2", &ModelParams::c2},
    {"rho0", &ModelParams::rho0},   {"k2", &ModelParams::k2},       {"rho", &ModelParams::rho},
    {"alpha", &ModelParams::alpha}, {"beta", &ModelParams::beta},   {"chi0", &ModelParams::chi0},
    {"beta0", &ModelParams::beta0}, {"zeta0", &ModelParams::zeta0}, {"zeta1", &ModelParams::zeta1},
    {"zeta2", &ModelParams::zeta2}, {"re", &ModelParams::re},       {"im", &ModelParams::im},
};

double ModelParams::*find_field(std::string_view name) {
  for (const auto& f : kFields)
    if (f.name == name) return f.member;
  throw LookupError("unknown model parameter '" + std::string(name) + "'");
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Deterministic per-family seed so building stays a pure function of the spec.
std::uint64_t gate_seed(Family f, int salt) {
  return 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(f) + 1) + static_cast<std::uint64_t>(salt);
}

Model assemble(const ModelSpec& spec, const Scalings& s) {
  detail::validate(spec);
  auto terms = detail::make_terms(spec, s);
  auto dom = detail::make_domain(spec);
  Model m{spec,
          std::move(terms.H),
          std::move(terms.Q),
          std::move(dom.domain),
          detail::conformal_factor(spec),
          {},
          dom.riemannian};
  m.provenance.family = spec.family;
  m.provenance.equation = std::string(equation_tag(spec.family));
  m.provenance.scalings = s;
  m.provenance.notes = std::move(dom.notes);
  return m;
}

std::vector<PhaseState> states_for(const Model& m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PhaseState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(sample_state(m, rng));
  return out;
}

double max_scaled(const Model& m, const std::vector<PhaseState>& states) {
  double worst = 0.0;
  for (const auto& sb : scaled_brackets(m.H, m.Q, states)) worst = std::max(worst, sb.scaled());
  return worst;
}

Eigen::VectorXd residuals(const ModelSpec& spec, const Scalings& s,
                          const std::vector<PhaseState>& states) {
  const Model m = assemble(spec, s);
  Eigen::VectorXd r(static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto sb = scaled_bracket(m.H, m.Q, states[i]);
    r[static_cast<Eigen::Index>(i)] = sb.bracket / sb.scale;
  }
  return r;
}

// Gauss-Newton over the term groups selected by `mask` (bit 0 kinetic,
// bit 1 alpha, bit 2 beta), forward-difference Jacobian.
Scalings fit_scalings(const ModelSpec& spec, const std::vector<PhaseState>& states, int mask) {
  std::vector<int> free;
  for (int k = 0; k < 3; ++k)
    if (mask & (1 << k)) free.push_back(k);
  Eigen::Vector3d x(1.0, 1.0, 1.0);
  auto to_s = [](const Eigen::Vector3d& v) { return Scalings{v[0], v[1], v[2]}; };
  const auto nfree = static_cast<Eigen::Index>(free.size());
  for (int iter = 0; iter < 30; ++iter) {
    const Eigen::VectorXd r = residuals(spec, to_s(x), states);
    Eigen::MatrixXd J(r.size(), nfree);
    for (Eigen::Index c = 0; c < nfree; ++c) {
      const int k = free[static_cast<std::size_t>(c)];
      Eigen::Vector3d xp = x;
      const double h = 1e-6 * std::max(1.0, std::abs(x[k]));
      xp[k] += h;
      J.col(c) = (residuals(spec, to_s(xp), states) - r) / h;
    }
    const Eigen::VectorXd dx = J.colPivHouseholderQr().solve(-r);
    for (Eigen::Index c = 0; c < nfree; ++c) x[free[static_cast<std::size_t>(c)]] += dx[c];
    if (dx.norm() <= 1e-14 * (1.0 + x.norm())) break;
  }
  return to_s(x);
}

bool near_unit(const Scalings& s) {
  return std::abs(s.kinetic - 1.0) < 1e-6 && std::abs(s.alpha - 1.0) < 1e-6 &&
         std::abs(s.beta - 1.0) < 1e-6;
}

// Root-ordered monic cubic coefficients (c0, c1, c2) of (z - a)(z - b)(z - c).
std::array<double, 3> monic_from_roots(double a, double b, double c) {
  const auto f = CubicPoly::from_roots(1.0, a, b, c);
  return {f.c[0], f.c[1], f.c[2]};
}

ModelSpec from_classification(const Classification& c, double alpha, double beta) {
  if (!c.family) throw BuildError("classification has no model family: " + c.regime);
  ModelSpec spec;
  spec.family = *c.family;
  auto get = [&](const char* key) {
    auto it = c.chart_params.find(key);
    return it == c.chart_params.end() ? 0.0 : it->second;
  };
  spec.params.k2 = get("k2");
  spec.params.rho = get("rho");
  if (spec.family == Family::Q0Sphere || spec.family == Family::Q0Hyperbolic) {
    spec.params.chi0 = alpha;
    spec.params.beta0 = beta;
  } else {
    spec.params.alpha = alpha;
    spec.params.beta = beta;
  }
  return spec;
}

}  // namespace

std::string_view to_string(TrigRoots kind) {
  switch (kind) {
    case TrigRoots::RealPair: return "real-pair";
    case TrigRoots::Degenerate: return "degenerate";
    case TrigRoots::ComplexPair: return "complex-pair";
  }
  return "real-pair";
}

TrigRoots trig_roots_from_string(std::string_view name) {
  for (TrigRoots t : {TrigRoots::RealPair, TrigRoots::Degenerate, TrigRoots::ComplexPair})
    if (to_string(t) == name) return t;
  throw LookupError("unknown trig root kind '" + std::string(name) +
                    "'; valid: real-pair, degenerate, complex-pair");
}

double& ModelParams::field(std::string_view name) { return this->*find_field(name); }
double ModelParams::field(std::string_view name) const { return this->*find_field(name); }

std::vector<std::string_view> parameter_names(Family family) {
  switch (family) {
    case Family::Q0Zeta: return {"c0", "rho0", "chi0", "beta0"};
    case Family::Q0Sphere: return {"k2", "chi0", "beta0"};
    case Family::Q0Hyperbolic: return {"chi0", "beta0"};
    case Family::P0Hyperbolic:
    case Family::P0Sphere:
    case Family::P0Plane:
    case Family::PposHyperbolic:
    case Family::PnegHyperbolic:
    case Family::DullinMatveev: return {"rho", "alpha", "beta"};
    case Family::PposZeta:
    case Family::PnegZeta: return {"c0", "c1", "c2", "alpha", "beta"};
    case Family::PposSphere:
    case Family::PnegSphereElliptic: return {"k2", "rho", "alpha", "beta"};
    case Family::PnegSphereTrig: return {"zeta0", "zeta1", "zeta2", "re", "im", "alpha", "beta"};
    case Family::GoryachevChaplygin:
    case Family::Goryachev: return {"alpha", "beta"};
  }
  return {};
}

double Domain::margin(double x1v, double x2v) const {
  double m = std::min(x1v - x1.lo, x1.hi - x1v);
  for (double s : singular_x1) m = std::min(m, std::abs(x1v - s));
  if (!x2_periodic) m = std::min({m, x2v - x2.lo, x2.hi - x2v});
  return m;
}

bool Domain::admits(const PhaseState& s) const {
  return s.finite() && margin(s.x1, s.x2) > guard;
}

Model build_with_scalings(const ModelSpec& spec, const Scalings& scalings) {
  return assemble(spec, scalings);
}

Model build(const ModelSpec& spec) {
  Model literal = assemble(spec, Scalings{});
  const double gate = max_scaled(literal, states_for(literal, kGateStates, gate_seed(spec.family, 1)));
  literal.provenance.literal_gate = gate;
  if (gate <= kGateTolerance) return literal;

  // Scalings are only defined up to a momentum rescaling, so the fewest
  // scaled term groups that pass the gate win.
  const auto fit_states = states_for(literal, kFitStates, gate_seed(spec.family, 2));
  const auto retest_states_seed = gate_seed(spec.family, 3);
  double best_retest = std::numeric_limits<double>::infinity();
  Scalings best{};
  for (int mask : {1, 2, 4, 3, 5, 6, 7}) {
    const Scalings s = fit_scalings(spec, fit_states, mask);
    if (!std::isfinite(s.kinetic) || !std::isfinite(s.alpha) || !std::isfinite(s.beta)) continue;
    if (near_unit(s)) continue;
    Model fitted = assemble(spec, s);
    if (max_scaled(fitted, fit_states) > kGateTolerance) {
      continue;
    }
    const double retest = max_scaled(fitted, states_for(fitted, kRetestStates, retest_states_seed));
    if (retest <= kGateTolerance) {
      fitted.provenance.fitted = true;
      fitted.provenance.literal_gate = gate;
      return fitted;
    }
    if (retest < best_retest) {
      best_retest = retest;
      best = s;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                " fails the bracket gate (literal %.3g; best fitted retest %.3g at scalings %.6g, "
                "%.6g, %.6g)",
                gate, best_retest, best.kinetic, best.alpha, best.beta);
  throw BuildError(std::string(to_string(spec.family)) + buf);
}

Model build_perturbed(const ModelSpec& spec, double perturbation) {
  const Model base = build(spec);
  Scalings s = base.provenance.scalings;
  s.alpha *= 1.0 + perturbation;
  Model m = assemble(spec, s);
  m.provenance = base.provenance;
  m.provenance.scalings = s;
  m.provenance.notes.push_back("alpha term of Q deliberately perturbed");
  return m;
}

std::vector<std::string_view> preset_names() {
  return {"goryachev-chaplygin", "goryachev",          "dullin-matveev",
          "q0-sphere-demo",      "q0-hyperbolic-demo", "p0-sphere-demo",
          "ppos-sphere-demo",    "pneg-sphere-demo",   "pneg-hyperbolic-demo"};
}

ModelSpec preset(std::string_view name) {
  constexpr double alpha = 1.0, beta = 0.1;
  if (name == "goryachev-chaplygin" || name == "goryachev") {
    ModelSpec s;
    s.family = name == "goryachev" ? Family::Goryachev : Family::GoryachevChaplygin;
    s.params.alpha = alpha;
    s.params.beta = beta;
    return s;
  }
  if (name == "dullin-matveev") {
    const auto c = monic_from_roots(0.0, 1.0, 3.0);
    return from_classification(classify_general(-1, c[0], c[1], c[2]), alpha, beta);
  }
  if (name == "q0-sphere-demo") return from_classification(classify_q0(-1.0, 0.0), alpha, beta);
  if (name == "q0-hyperbolic-demo")
    return from_classification(classify_q0(-1.0, -1.0), alpha, beta);
  if (name == "p0-sphere-demo")  // F = -(z - 1)(z - 3)
    return from_classification(classify_p0(-3.0, 4.0, -1.0), alpha, beta);
  if (name == "ppos-sphere-demo") {
    const auto c = monic_from_roots(1.0, 2.0, 3.0);
    return from_classification(classify_general(1, c[0], c[1], c[2]), alpha, beta);
  }
  if (name == "pneg-sphere-demo") {
    const auto c = monic_from_roots(0.5, 1.0, 3.0);
    return from_classification(classify_general(-1, c[0], c[1], c[2]), alpha, beta);
  }
  if (name == "pneg-hyperbolic-demo") {
    const auto c = monic_from_roots(1.0, 1.0, 3.0);
    return from_classification(classify_general(-1, c[0], c[1], c[2]), alpha, beta);
  }
  std::string valid;
  for (auto n : preset_names()) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw LookupError("unknown preset '" + std::string(name) + "'; valid presets: " + valid);
}

PhaseState default_initial_state(const Model& model) {
  const Interval w = model.domain.x1_window;
  return {model.chart(), w.lo + 0.37 * (w.hi - w.lo), 0.5, 0.3, 0.2};
}

PhaseState preset_initial_state(std::string_view name) {
  const ModelSpec spec = preset(name);
  if (spec.family == Family::GoryachevChaplygin) return {Chart::ThetaPhi, 0.93, 3.18, 0.04, 0.03};
  // The Goryachev potential pulls generic orbits into the equator; this one
  // gets there after roughly two time units.
  if (spec.family == Family::Goryachev) return {Chart::ThetaPhi, 0.6, 0.2, 0.1, 0.05};
  return default_initial_state(build(spec));
}

std::array<Observable, 3> lie_generators(LieAlgebra kind) {
  if (kind == LieAlgebra::So3) {
    return {Observable(Chart::ThetaPhi, "L1", "genL",
                       [](const auto& z) {
                         return sin(z.x2) * z.p1 + cos(z.x2) * cos(z.x1) / sin(z.x1) * z.p2;
                       }),
            Observable(Chart::ThetaPhi, "L2", "genL",
                       [](const auto& z) {
                         return cos(z.x2) * z.p1 - sin(z.x2) * cos(z.x1) / sin(z.x1) * z.p2;
                       }),
            Observable(Chart::ThetaPhi, "L3", "genL", [](const auto& z) { return z.p2; })};
  }
  return {Observable(Chart::UPhi, "M1", "genM",
                     [](const auto& z) {
                       return sin(z.x2) * z.p1 + cos(z.x2) * cosh(z.x1) / sinh(z.x1) * z.p2;
                     }),
          Observable(Chart::UPhi, "M2", "genM",
                     [](const auto& z) {
                       return cos(z.x2) * z.p1 - sin(z.x2) * cosh(z.x1) / sinh(z.x1) * z.p2;
                     }),
          Observable(Chart::UPhi, "M3", "genM", [](const auto& z) { return z.p2; })};
}

PhaseState sample_state(const Model& model, std::mt19937_64& rng, double momentum_range) {
  const Domain& d = model.domain;
  PhaseState s;
  s.chart = model.chart();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    s.x1 = uniform(rng, d.x1_window.lo + d.guard, d.x1_window.hi - d.guard);
    s.x2 = uniform(rng, d.x2_window.lo + (d.x2_periodic ? 0.0 : d.guard),
                   d.x2_window.hi - (d.x2_periodic ? 0.0 : d.guard));
    if (d.margin(s.x1, s.x2) > d.guard) break;
  }
  s.p1 = uniform(rng, -momentum_range, momentum_range);
  s.p2 = uniform(rng, -momentum_range, momentum_range);
  return s;
}

ModelSpec random_spec(Family family, std::mt19937_64& rng, int variant) {
  ModelSpec spec;
  spec.family = family;
  auto& p = spec.params;
  auto coupling = [&] {
    const double v = uniform(rng, 0.2, 1.5);
    return std::bernoulli_distribution(0.5)(rng) ? v : -v;
  };
  p.alpha = coupling();
  p.beta = coupling();
  switch (family) {
    case Family::Q0Zeta: {
      // Three simple roots: |rho0| < (-c0)^(3/2).
      p.c0 = uniform(rng, -2.0, -0.5);
      const double lim = std::pow(-p.c0, 1.5);
      p.rho0 = uniform(rng, -0.9 * lim, 0.9 * lim);
      p.chi0 = coupling();
      p.beta0 = coupling();
      break;
    }
    case Family::Q0Sphere:
      p.k2 = uniform(rng, 0.1, 0.9);
      p.chi0 = coupling();
      p.beta0 = coupling();
      break;
    case Family::Q0Hyperbolic:
      p.chi0 = coupling();
      p.beta0 = coupling();
      break;
    case Family::P0Hyperbolic: p.rho = uniform(rng, -0.9, 3.0); break;
    case Family::P0Sphere: p.rho = uniform(rng, 0.1, 0.9); break;
    case Family::P0Plane: p.rho = uniform(rng, 0.3, 2.0); break;
    case Family::PposZeta: {
      const double r0 = uniform(rng, 0.2, 1.0);
      const double r1 = r0 + uniform(rng, 0.2, 1.5);
      const double r2 = r1 + uniform(rng, 0.2, 1.5);
      const auto c = monic_from_roots(r0, r1, r2);
      p.c0 = c[0];
      p.c1 = c[1];
      p.c2 = c[2];
      break;
    }
    case Family::PnegZeta: {
      const double r0 = uniform(rng, -1.0, 0.5);
      const double r1 = std::max(r0, 0.0) + uniform(rng, 0.2, 1.0);
      const double r2 = r1 + uniform(rng, 0.2, 1.5);
      const auto c = monic_from_roots(r0, r1, r2);
      p.c0 = c[0];
      p.c1 = c[1];
      p.c2 = c[2];
      break;
    }
    case Family::PposSphere:
      p.k2 = uniform(rng, 0.1, 0.9);
      p.rho = uniform(rng, 0.1, 2.0);
      break;
    case Family::PposHyperbolic: p.rho = uniform(rng, 0.1, 2.0); break;
    case Family::PnegSphereElliptic:
      p.k2 = uniform(rng, 0.1, 0.9);
      p.rho = uniform(rng, 1.1, 3.0);
      break;
    case Family::DullinMatveev:
    case Family::PnegHyperbolic: p.rho = uniform(rng, 1.1, 3.0); break;
    case Family::PnegSphereTrig: {
      switch (((variant % 3) + 3) % 3) {
        case 0:
          p.trig_roots = TrigRoots::RealPair;
          p.zeta1 = uniform(rng, 0.5, 2.0);
          p.zeta2 = p.zeta1 + uniform(rng, 0.2, 2.0);
          p.zeta0 = solve_zeta0(RealRootPair{p.zeta1, p.zeta2}).front();
          break;
        case 1:
          p.trig_roots = TrigRoots::Degenerate;
          p.zeta1 = uniform(rng, 0.5, 2.0);
          p.zeta0 = solve_zeta0(DoubleRoot{p.zeta1}).front();
          break;
        default:
          p.trig_roots = TrigRoots::ComplexPair;
          p.re = uniform(rng, -1.0, 1.0);
          p.im = uniform(rng, 0.3, 1.5);
          p.zeta0 = solve_zeta0(ComplexRootPair{p.re, p.im}).front();
          break;
      }
      break;
    }
    case Family::GoryachevChaplygin:
    case Family::Goryachev: break;
  }
  return spec;
}

std::array<double, 3> kinetic_form(const Model& model, const PhaseState& s) {
  auto h = [&](double p1, double p2) {
    PhaseState t = s;
    t.p1 = p1;
    t.p2 = p2;
    return model.H(t);
  };
  const double h0 = h(0.0, 0.0);
  const double a11 = h(1.0, 0.0) + h(-1.0, 0.0) - 2.0 * h0;
  const double a22 = h(0.0, 1.0) + h(0.0, -1.0) - 2.0 * h0;
  const double a12 = (h(1.0, 1.0) - h(1.0, -1.0) - h(-1.0, 1.0) + h(-1.0, -1.0)) / 4.0;
  return {a11, a12, a22};
}

}  // namespace cubint
