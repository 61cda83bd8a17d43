#include "cubint/bracket.hpp"

#include <cmath>
#include <sstream>

#include "cubint/errors.hpp"
#include "cubint/simd.hpp"

namespace cubint {
namespace {

std::string describe(const PhaseState& s) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(s.chart) << " (" << s.x1 << ", " << s.x2 << ", " << s.p1 << ", " << s.p2 << ")";
  return os.str();
}

void require_chart(const Observable& f, const PhaseState& s) {
  if (f.chart() != s.chart)
    throw ArgumentError("observable '" + f.name() + "' lives on chart " +
                        std::string(to_string(f.chart())) + ", state is on chart " +
                        std::string(to_string(s.chart)));
}

[[noreturn]] void evaluation_failure(const Observable& f, const PhaseState& s,
                                     const std::string& why) {
  throw EvaluationError("cannot evaluate observable '" + f.name() + "' at " + describe(s) + ": " +
                        why);
}

Grad4 gradient(const Observable& f, const PhaseState& s) { return f.dual(s).grad; }

double norm(const Grad4& g) {
  return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
}

Grad4 central_differences(const Observable& f, const PhaseState& s, double h) {
  if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");
  Grad4 g;
  const auto z = s.as_array();
  for (std::size_t i = 0; i < 4; ++i) {
    auto zp = z;
    auto zm = z;
    zp[i] += h;
    zm[i] -= h;
    g[i] = (f(PhaseState::from_array(s.chart, zp)) - f(PhaseState::from_array(s.chart, zm))) /
           (2.0 * h);
  }
  return g;
}

double contract(const Grad4& a, const Grad4& b) {
  return (a[0] * b[2] - a[2] * b[0]) + (a[1] * b[3] - a[3] * b[1]);
}

}  // namespace

std::string_view to_string(Chart chart) {
  switch (chart) {
    case Chart::ZetaPhi:
      return "zeta-phi";
    case Chart::UPhi:
      return "u-phi";
    case Chart::ThetaPhi:
      return "theta-phi";
    case Chart::Cartesian:
      return "cartesian";
  }
  return "unknown";
}

Chart chart_from_string(std::string_view name) {
  for (Chart c : {Chart::ZetaPhi, Chart::UPhi, Chart::ThetaPhi, Chart::Cartesian})
    if (to_string(c) == name) return c;
  throw ArgumentError("unknown chart '" + std::string(name) + "'");
}

bool PhaseState::finite() const {
  return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(p1) && std::isfinite(p2);
}

double Observable::operator()(const PhaseState& s) const {
  require_chart(*this, s);
  double v;
  try {
    v = impl_->plain({s.x1, s.x2, s.p1, s.p2});
  } catch (const std::exception& e) {
    evaluation_failure(*this, s, e.what());
  }
  if (!std::isfinite(v)) evaluation_failure(*this, s, "non-finite value");
  return v;
}

Dual Observable::dual(const PhaseState& s) const {
  require_chart(*this, s);
  const Coords<Dual> z{Dual::variable(s.x1, 0), Dual::variable(s.x2, 1), Dual::variable(s.p1, 2),
                       Dual::variable(s.p2, 3)};
  Dual v;
  try {
    v = impl_->dual(z);
  } catch (const std::exception& e) {
    evaluation_failure(*this, s, e.what());
  }
  if (!std::isfinite(v.value)) evaluation_failure(*this, s, "non-finite value");
  for (double d : v.grad.d)
    if (!std::isfinite(d)) evaluation_failure(*this, s, "non-finite derivative");
  return v;
}

Observable Observable::renamed(std::string name) const {
  Observable r = *this;
  auto impl = std::make_shared<Impl>(*impl_);
  impl->name = std::move(name);
  r.impl_ = std::move(impl);
  return r;
}

Observable operator+(const Observable& a, const Observable& b) {
  return Observable(a.chart(), "(" + a.name() + " + " + b.name() + ")", "composition",
                    [a, b](const auto& z) { return a.evaluate(z) + b.evaluate(z); });
}

Observable operator-(const Observable& a, const Observable& b) {
  return Observable(a.chart(), "(" + a.name() + " - " + b.name() + ")", "composition",
                    [a, b](const auto& z) { return a.evaluate(z) - b.evaluate(z); });
}

Observable operator*(const Observable& a, const Observable& b) {
  return Observable(a.chart(), a.name() + "*" + b.name(), "composition",
                    [a, b](const auto& z) { return a.evaluate(z) * b.evaluate(z); });
}

Observable operator*(double s, const Observable& a) {
  std::ostringstream os;
  os.precision(17);
  os << s << "*" << a.name();
  return Observable(a.chart(), os.str(), "composition",
                    [s, a](const auto& z) { return s * a.evaluate(z); });
}

Observable coordinate(Chart chart, int index) {
  static constexpr const char* names[] = {"x1", "x2", "p1", "p2"};
  if (index < 0 || index > 3) throw ArgumentError("coordinate index must be 0..3");
  return Observable(chart, names[index], "canonical coordinate", [index](const auto& z) {
    switch (index) {
      case 0:
        return z.x1;
      case 1:
        return z.x2;
      case 2:
        return z.p1;
      default:
        return z.p2;
    }
  });
}

double poisson_bracket(const Observable& f, const Observable& g, const PhaseState& s) {
  if (f.chart() != g.chart())
    throw ArgumentError("bracket of observables on different charts: '" + f.name() + "' and '" +
                        g.name() + "'");
  return contract(gradient(f, s), gradient(g, s));
}

double poisson_bracket_oracle(const Observable& f, const Observable& g, const PhaseState& s,
                              double h) {
  if (f.chart() != g.chart())
    throw ArgumentError("bracket of observables on different charts: '" + f.name() + "' and '" +
                        g.name() + "'");
  return contract(central_differences(f, s, h), central_differences(g, s, h));
}

std::array<double, 4> hamiltonian_vector_field(const Observable& h, const PhaseState& s) {
  const Grad4 g = gradient(h, s);
  return {g[2], g[3], -g[0], -g[1]};
}

double ScaledBracket::scaled() const { return std::abs(bracket) / scale; }

ScaledBracket scaled_bracket(const Observable& f, const Observable& g, const PhaseState& s) {
  if (f.chart() != g.chart())
    throw ArgumentError("bracket of observables on different charts");
  const Grad4 a = gradient(f, s);
  const Grad4 b = gradient(g, s);
  return {contract(a, b), 1.0 + norm(a) * norm(b)};
}

std::vector<ScaledBracket> scaled_brackets(const Observable& f, const Observable& g,
                                           std::span<const PhaseState> states) {
  if (f.chart() != g.chart())
    throw ArgumentError("bracket of observables on different charts");
  std::vector<Grad4> gf(states.size());
  std::vector<Grad4> gg(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    gf[i] = gradient(f, states[i]);
    gg[i] = gradient(g, states[i]);
  }
  std::vector<double> br(states.size());
  std::vector<double> nm(states.size());
  simd::kernels().symplectic_contract(gf, gg, br, nm);
  std::vector<ScaledBracket> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = {br[i], 1.0 + nm[i]};
  return out;
}

ScaledBracket scaled_bracket_oracle(const Observable& f, const Observable& g,
                                    const PhaseState& s, double h) {
  if (f.chart() != g.chart())
    throw ArgumentError("bracket of observables on different charts");
  const Grad4 a = central_differences(f, s, h);
  const Grad4 b = central_differences(g, s, h);
  return {contract(a, b), 1.0 + norm(a) * norm(b)};
}

}  // namespace cubint
