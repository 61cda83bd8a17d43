#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubint/dual.hpp"

namespace cubint {

enum class Chart { ZetaPhi, UPhi, ThetaPhi, Cartesian };

std::string_view to_string(Chart chart);
/// Inverse of to_string; throws ArgumentError for unknown names.
Chart chart_from_string(std::string_view name);

/// A point of T*M in one chart: positions (x1, x2) and conjugate momenta.
struct PhaseState {
  Chart chart = Chart::ThetaPhi;
  double x1 = 0.0;
  double x2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  std::array<double, 4> as_array() const { return {x1, x2, p1, p2}; }
  static PhaseState from_array(Chart chart, const std::array<double, 4>& z) {
    return {chart, z[0], z[1], z[2], z[3]};
  }
  bool finite() const;
};

/// Chart coordinates as seen by an evaluator, over double or Dual.
template <class T>
struct Coords {
  T x1;
  T x2;
  T p1;
  T p2;
};

/// A smooth scalar function on phase space in a fixed chart. The evaluator
/// is a generic callable accepting Coords<double> and Coords<Dual>.
class Observable {
 public:
  template <class Fn>
  Observable(Chart chart, std::string name, std::string source, Fn fn)
      : impl_(std::make_shared<Impl>(Impl{
            chart, std::move(name), std::move(source),
            [fn](const Coords<double>& z) -> double { return fn(z); },
            [fn](const Coords<Dual>& z) -> Dual { return fn(z); }})) {}

  Chart chart() const { return impl_->chart; }
  const std::string& name() const { return impl_->name; }
  /// Equation or construction the evaluator was transcribed from.
  const std::string& source() const { return impl_->source; }

  /// Checked evaluation: chart must match, result must be finite.
  double operator()(const PhaseState& s) const;
  /// Value and full phase-space gradient from one dual evaluation.
  Dual dual(const PhaseState& s) const;

  /// Unchecked evaluation, for composing observables.
  template <class T>
  T evaluate(const Coords<T>& z) const;

  Observable renamed(std::string name) const;

 private:
  struct Impl {
    Chart chart;
    std::string name;
    std::string source;
    std::function<double(const Coords<double>&)> plain;
    std::function<Dual(const Coords<Dual>&)> dual;
  };
  std::shared_ptr<const Impl> impl_;
};

template <>
inline double Observable::evaluate(const Coords<double>& z) const { return impl_->plain(z); }
template <>
inline Dual Observable::evaluate(const Coords<Dual>& z) const { return impl_->dual(z); }

Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
Observable operator*(const Observable& a, const Observable& b);
Observable operator*(double s, const Observable& a);

/// Coordinate and momentum observables: index 0..3 for x1, x2, p1, p2.
Observable coordinate(Chart chart, int index);

/// {f, g} = sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i), derivatives from one
/// dual evaluation of each observable.
double poisson_bracket(const Observable& f, const Observable& g, const PhaseState& s);

/// Same bracket from central finite differences with step h.
double poisson_bracket_oracle(const Observable& f, const Observable& g, const PhaseState& s,
                              double h);

/// (dH/dp1, dH/dp2, -dH/dx1, -dH/dx2).
std::array<double, 4> hamiltonian_vector_field(const Observable& h, const PhaseState& s);

/// A bracket value with the scale 1 + |grad f| |grad g| used for
/// scale-relative tolerances.
struct ScaledBracket {
  double bracket = 0.0;
  double scale = 1.0;
  double scaled() const;
};

ScaledBracket scaled_bracket(const Observable& f, const Observable& g, const PhaseState& s);
/// Batch form; gradients are contracted with the runtime-selected SIMD kernel.
std::vector<ScaledBracket> scaled_brackets(const Observable& f, const Observable& g,
                                           std::span<const PhaseState> states);
/// Finite-difference counterpart of scaled_bracket.
ScaledBracket scaled_bracket_oracle(const Observable& f, const Observable& g,
                                    const PhaseState& s, double h);

}  // namespace cubint
