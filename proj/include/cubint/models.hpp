#pragma once

#include <array>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cubint/bracket.hpp"
#include "cubint/classifier.hpp"
#include "cubint/family.hpp"

namespace cubint {

enum class TrigRoots { RealPair, Degenerate, ComplexPair };

std::string_view to_string(TrigRoots kind);
TrigRoots trig_roots_from_string(std::string_view name);

/// Flat parameter record; each family reads the subset listed by
/// parameter_names(family).
struct ModelParams {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double rho0 = 0.0;
  double k2 = 0.0;
  double rho = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double chi0 = 0.0;
  double beta0 = 0.0;
  double zeta0 = 0.0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double re = 0.0;
  double im = 0.0;
  TrigRoots trig_roots = TrigRoots::RealPair;
  bool half_domain = false;  // GoryachevChaplygin only: theta in (0, pi/2)

  /// Access a real-valued field by name; throws LookupError.
  double& field(std::string_view name);
  double field(std::string_view name) const;
};

struct ModelSpec {
  Family family = Family::GoryachevChaplygin;
  ModelParams params;
};

/// Real-valued parameter names a family reads, in display order.
std::vector<std::string_view> parameter_names(Family family);

/// Per-coordinate admissible region of a model.
struct Domain {
  Interval x1;
  Interval x2;
  bool x2_periodic = true;
  /// Interior x1 values where the observables are singular.
  std::vector<double> singular_x1;
  double guard = 1e-6;
  /// Finite window used to sample unbounded coordinates.
  Interval x1_window;
  Interval x2_window;

  /// Signed distance of (x1, x2) to the excluded set; negative outside.
  double margin(double x1v, double x2v) const;
  /// margin > guard.
  bool admits(const PhaseState& s) const;
};

/// Global factors applied to the kinetic term of H and to the alpha and
/// beta term groups of Q.
struct Scalings {
  double kinetic = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
};

struct Provenance {
  Family family = Family::GoryachevChaplygin;
  std::string equation;
  Scalings scalings;
  bool fitted = false;
  /// Largest scaled bracket of the literal transcription at the gate states.
  double literal_gate = 0.0;
  std::vector<std::string> notes;
};

struct Model {
  ModelSpec spec;
  Observable H;
  Observable Q;
  Domain domain;
  std::function<double(double, double)> conformal_factor;
  Provenance provenance;
  bool riemannian = true;  // false only for a zeta-chart fallback domain

  Chart chart() const { return H.chart(); }
};

/// Validate, transcribe, and gate a model. A literal form failing the
/// bracket gate gets fitted scalings, re-tested on 1e3 fresh states.
/// Throws BuildError naming the violated constraint.
Model build(const ModelSpec& spec);

/// Build with fixed scalings and no gate.
Model build_with_scalings(const ModelSpec& spec, const Scalings& scalings);

/// Model whose Q alpha-term is multiplied by (1 + perturbation); used as a
/// negative control for verification.
Model build_perturbed(const ModelSpec& spec, double perturbation);

std::vector<std::string_view> preset_names();
/// Throws LookupError listing the valid names.
ModelSpec preset(std::string_view name);
/// Default starting point for simulating a preset. The Goryachev-Chaplygin
/// one is a small oscillation about the stable equilibrium, away from the
/// chart poles.
PhaseState preset_initial_state(std::string_view name);
/// Off-centre point of the position window with small momenta.
PhaseState default_initial_state(const Model& model);

enum class LieAlgebra { So3, So21 };
/// (L1, L2, L3) on theta-phi or (M1, M2, M3) on u-phi.
std::array<Observable, 3> lie_generators(LieAlgebra kind);

/// Uniform admissible state: positions in the guarded window, angles in
/// [0, 2 pi), momenta in [-momentum_range, momentum_range].
PhaseState sample_state(const Model& model, std::mt19937_64& rng, double momentum_range = 1.0);

/// Random admissible parameters for a family. For PnegSphereTrig, `variant`
/// picks the root data (0 real pair, 1 degenerate, 2 complex pair).
ModelSpec random_spec(Family family, std::mt19937_64& rng, int variant = 0);

/// The positive-definite momentum quadratic form of H at a position,
/// computed from second differences of H in the momenta: (a11, a12, a22).
std::array<double, 3> kinetic_form(const Model& model, const PhaseState& s);

}  // namespace cubint
