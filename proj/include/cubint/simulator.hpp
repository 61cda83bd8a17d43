#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cubint/models.hpp"

namespace cubint {

struct StepOptions {
  /// Fixed-point residual target, relative to 1 + |z|_inf.
  double tol = 1e-13;
  /// Fixed-point iterations before switching to Newton.
  int fixed_point_iterations = 50;
  int newton_iterations = 20;
};

/// One implicit-midpoint step z' = z + dt X_H((z + z') / 2). dt may be
/// negative (backward integration) but not zero. Throws StepError when
/// the implicit solve does not converge and BoundaryError when the
/// midpoint comes within the domain guard of an excluded locus.
PhaseState step(const Model& model, const PhaseState& s, double dt, const StepOptions& opt = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  std::vector<double> H_values;
  std::vector<double> Q_values;
  bool halted = false;
  std::size_t halt_step = 0;
  double halt_distance = 0.0;
  std::string halt_reason;

  std::size_t size() const { return times.size(); }
};

/// Fixed-step integration to t_end, sampling H and Q after every step.
/// A boundary error ends the run early and is recorded in the trajectory;
/// step errors propagate tagged with the step index.
Trajectory run(const Model& model, const PhaseState& s0, double dt, double t_end,
               const StepOptions& opt = {});

struct DriftReport {
  double max_abs_dH = 0.0;
  double max_abs_dQ = 0.0;
  /// Drifts divided by 1 + |initial value|.
  double rel_dH = 0.0;
  double rel_dQ = 0.0;
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
};

/// Deviations from the t = 0 values. Throws ArgumentError when empty.
DriftReport drift_report(const Trajectory& traj);

}  // namespace cubint
