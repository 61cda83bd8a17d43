#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cubint/family.hpp"
#include "cubint/polynomials.hpp"

namespace cubint {

enum class EndpointKind {
  Pole,                  // F = 0, G = F'^2 > 0: removable, the point joins the manifold
  CurvatureSingularity,  // G = 0 with F != 0
  BoundaryAtInfinity,    // infinite end, or a multiple root of F at infinite distance
  OriginSingularity,     // zeta = 0 with G(0) != 0 under the zeta weight
  RegularExtension,      // zeta = 0 with G(0) = 0: the metric continues evenly past it
};

std::string_view to_string(EndpointKind kind);

enum class Weight { None, ZetaFactor };

/// Open interval, possibly unbounded (infinite ends) or empty.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return !(lo < hi); }
  bool bounded() const;
  double width() const { return hi - lo; }
};

struct AdmissibleInterval {
  Interval interval;
  EndpointKind lo_kind = EndpointKind::BoundaryAtInfinity;
  EndpointKind hi_kind = EndpointKind::BoundaryAtInfinity;

  bool regular() const;  // no singular endpoint
};

struct PositivityResult {
  /// Preferred interval: the first one without singular endpoints, else the
  /// first feasible one; empty when nothing is feasible.
  AdmissibleInterval best;
  std::vector<AdmissibleInterval> feasible;
  /// Zeros of G located by bisection, ascending.
  std::vector<double> g_zeros;

  bool empty() const { return feasible.empty(); }
};

/// Maximal open intervals where weight(zeta) F > 0 and G > 0, with endpoint
/// kinds. Sign analysis runs on a 1e4-point grid refined at the roots of F
/// (and at zero for the zeta weight); zeros of G are bisected to 1e-12.
PositivityResult positivity_interval(const CubicPoly& f, const QuarticPoly& g, Weight weight);

/// Intervals where weight(zeta) F > 0 alone; used as a fallback domain for
/// the local zeta-chart forms when no Riemannian interval exists.
std::vector<Interval> f_positive_intervals(const CubicPoly& f, Weight weight);

/// A classified regime, ready for hand-off to the model catalog.
struct Regime {
  std::string name;
  std::optional<Family> family;
  AdmissibleInterval interval;
  std::map<std::string, double> chart_params;
};

struct Classification {
  double discriminant = 0.0;
  int discriminant_sign = 0;  // from the root structure: -1 three simple, 0 multiple, +1 one real
  RootSet roots;
  AdmissibleInterval interval;  // empty interval when nothing is feasible
  Manifold manifold = Manifold::None;
  std::string regime;  // e.g. "q0-sphere", "dullin-matveev", "none"
  std::optional<Family> family;
  std::map<std::string, double> chart_params;  // k2, rho, zeta0 ... as applicable
  std::vector<double> zeta0_candidates;
  std::vector<Regime> alternatives;
  std::vector<std::string> notes;
};

/// q = 0: F = z^3 + 3 c0 z - 2 rho0, unweighted metric.
Classification classify_q0(double c0, double rho0);
/// p = 0: F = c0 + c1 z + c2 z^2, G = c1^2 - 4 c0 c2, zeta-weighted metric.
Classification classify_p0(double c0, double c1, double c2);
/// p != 0: F = eps (z^3 + c2 z^2 + c1 z + c0), eps = +1 or -1.
Classification classify_general(int eps, double c0, double c1, double c2);

/// G(0) = c1^2 - 4 c0 c2 vanishes relative to the squared coefficient size.
bool g_vanishes_at_origin(const CubicPoly& f);

/// Root data accepted by solve_zeta0.
struct RealRootPair {
  double zeta1;
  double zeta2;
};
struct DoubleRoot {
  double zeta1;
};
struct ComplexRootPair {
  double re;
  double im;
};
using Zeta0Input = std::variant<RealRootPair, DoubleRoot, ComplexRootPair>;

/// Values of the simple root zeta0 of F = (zeta0 - z) * (remaining factor)
/// for which G(0) = 0, filtered to positive finite values. Throws
/// ArgumentError on precondition violations.
std::vector<double> solve_zeta0(const Zeta0Input& roots);

/// The eps = -1 cubic with simple root zeta0 and the given remaining roots.
CubicPoly pneg_cubic(double zeta0, const Zeta0Input& roots);

/// Monic-cubic discriminant in the sign convention where negative means
/// three simple real roots (matches c0^3 + rho0^2 for the q = 0 cubic).
double cubic_discriminant(double c0, double c1, double c2);

}  // namespace cubint
