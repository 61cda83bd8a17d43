#include "cubint/simulator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>

#include "cubint/errors.hpp"
#include "cubint/simd.hpp"

namespace cubint {
namespace {

using Vec = std::array<double, 4>;

double inf_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

class MidpointSolver {
 public:
  MidpointSolver(const Model& m, const PhaseState& s, double dt)
      : model_(m), z0_(s.as_array()), chart_(s.chart), dt_(dt) {}

  Vec field_at_midpoint(const Vec& z1) const {
    Vec mid;
    for (std::size_t i = 0; i < 4; ++i) mid[i] = 0.5 * (z0_[i] + z1[i]);
    const double margin = model_.domain.margin(mid[0], mid[1]);
    if (!(margin > model_.domain.guard))
      throw BoundaryError(fmt("midpoint at x1 = %.17g is within the domain guard (distance %.3g)",
                              mid[0], margin),
                          margin);
    return hamiltonian_vector_field(model_.H, PhaseState::from_array(chart_, mid));
  }

  Vec map(const Vec& z1) const {
    const Vec x = field_at_midpoint(z1);
    Vec out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = z0_[i] + dt_ * x[i];
    return out;
  }

  Vec solve(const StepOptions& opt) const {
    Vec z = map(z0_);  // explicit Euler predictor
    double prev = kHuge;
    double damping = 1.0;
    for (int it = 0; it < opt.fixed_point_iterations; ++it) {
      const Vec g = map(z);
      Vec d;
      for (std::size_t i = 0; i < 4; ++i) d[i] = g[i] - z[i];
      const double res = inf_norm(d);
      if (res <= opt.tol * (1.0 + inf_norm(z))) return g;
      if (res > prev) damping = 0.5;
      prev = res;
      for (std::size_t i = 0; i < 4; ++i) z[i] += damping * d[i];
    }
    return newton(z, opt);
  }

 private:
  static constexpr double kHuge = 1e300;

  // Newton on R(z) = z - map(z) with a forward-difference Jacobian.
  Vec newton(Vec z, const StepOptions& opt) const {
    for (int it = 0; it < opt.newton_iterations; ++it) {
      const Vec g = map(z);
      Eigen::Vector4d r;
      for (int i = 0; i < 4; ++i) r[i] = z[static_cast<std::size_t>(i)] - g[static_cast<std::size_t>(i)];
      if (r.lpNorm<Eigen::Infinity>() <= opt.tol * (1.0 + inf_norm(z))) return g;
      Eigen::Matrix4d J;
      for (int k = 0; k < 4; ++k) {
        Vec zp = z;
        const double h = 1e-7 * (1.0 + std::abs(zp[static_cast<std::size_t>(k)]));
        zp[static_cast<std::size_t>(k)] += h;
        const Vec gp = map(zp);
        for (int i = 0; i < 4; ++i) {
          const auto ui = static_cast<std::size_t>(i);
          J(i, k) = ((zp[ui] - gp[ui]) - r[i]) / h;
        }
      }
      const Eigen::Vector4d dz = J.partialPivLu().solve(-r);
      for (int i = 0; i < 4; ++i) z[static_cast<std::size_t>(i)] += dz[i];
    }
    throw StepError(fmt("implicit midpoint solve did not converge (dt = %.3g, x1 = %.17g)", dt_,
                        z0_[0]));
  }

  const Model& model_;
  Vec z0_;
  Chart chart_;
  double dt_;
};

}  // namespace

PhaseState step(const Model& model, const PhaseState& s, double dt, const StepOptions& opt) {
  if (!(dt != 0.0) || !std::isfinite(dt)) throw ArgumentError("step: dt must be finite and nonzero");
  if (!(opt.tol > 0.0)) throw ArgumentError("step: tol must be positive");
  if (s.chart != model.chart()) throw ArgumentError("step: state chart does not match the model");
  const double margin = model.domain.margin(s.x1, s.x2);
  if (!(margin > model.domain.guard))
    throw BoundaryError(fmt("state at x1 = %.17g is outside the guarded domain (distance %.3g)",
                            s.x1, margin),
                        margin);
  const Vec z1 = MidpointSolver(model, s, dt).solve(opt);
  const PhaseState out = PhaseState::from_array(s.chart, z1);
  if (!out.finite()) throw StepError("implicit midpoint produced a non-finite state");
  return out;
}

Trajectory run(const Model& model, const PhaseState& s0, double dt, double t_end,
               const StepOptions& opt) {
  if (!(t_end >= 0.0)) throw ArgumentError("run: t_end must be non-negative");
  if (!(dt > 0.0)) throw ArgumentError("run: dt must be positive");
  Trajectory tr;
  auto record = [&](double t, const PhaseState& s) {
    tr.times.push_back(t);
    tr.states.push_back(s);
    tr.H_values.push_back(model.H(s));
    tr.Q_values.push_back(model.Q(s));
  };
  const double margin0 = model.domain.margin(s0.x1, s0.x2);
  if (!(margin0 > model.domain.guard)) {
    tr.halted = true;
    tr.halt_step = 0;
    tr.halt_distance = margin0;
    tr.halt_reason = fmt("initial state at x1 = %.17g is outside the guarded domain (distance %.3g)",
                         s0.x1, margin0);
    return tr;
  }
  record(0.0, s0);
  const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
  PhaseState s = s0;
  for (std::size_t i = 1; i <= n; ++i) {
    try {
      s = step(model, s, dt, opt);
    } catch (const BoundaryError& e) {
      tr.halted = true;
      tr.halt_step = i;
      tr.halt_distance = e.distance();
      tr.halt_reason = "step " + std::to_string(i) + ": " + e.what();
      return tr;
    } catch (const StepError& e) {
      throw StepError("step " + std::to_string(i) + ": " + e.what());
    }
    record(static_cast<double>(i) * dt, s);
  }
  return tr;
}

DriftReport drift_report(const Trajectory& traj) {
  if (traj.times.empty()) throw ArgumentError("drift_report: empty trajectory");
  DriftReport r;
  const auto& k = simd::kernels();
  r.max_abs_dH = k.max_abs_deviation(traj.H_values, traj.H_values.front());
  r.max_abs_dQ = k.max_abs_deviation(traj.Q_values, traj.Q_values.front());
  r.rel_dH = r.max_abs_dH / (1.0 + std::abs(traj.H_values.front()));
  r.rel_dQ = r.max_abs_dQ / (1.0 + std::abs(traj.Q_values.front()));
  r.steps = traj.times.size() - 1;
  r.rejected_steps = traj.halted ? 1 : 0;
  return r;
}

}  // namespace cubint
