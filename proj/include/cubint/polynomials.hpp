#pragma once

#include <array>
#include <optional>
#include <vector>

namespace cubint {

/// F(z) = c[0] + c[1] z + c[2] z^2 + c[3] z^3. c[3] may be zero, which
/// covers the quadratic p = 0 family.
struct CubicPoly {
  std::array<double, 4> c{};

  template <class T>
  T operator()(const T& z) const {
    return ((c[3] * z + c[2]) * z + c[1]) * z + c[0];
  }
  /// F' as a (degree <= 2) CubicPoly.
  CubicPoly derivative() const { return {{c[1], 2.0 * c[2], 3.0 * c[3], 0.0}}; }
  /// Index of the highest nonzero coefficient, -1 for the zero polynomial.
  int degree() const;

  /// lead * (z - r0)(z - r1)(z - r2).
  static CubicPoly from_roots(double lead, double r0, double r1, double r2);
  /// lead * (z - r0)(z - (re + i im))(z - (re - i im)).
  static CubicPoly from_real_and_complex(double lead, double r0, double re, double im);
};

/// G(z) = sum g[i] z^i.
struct QuarticPoly {
  std::array<double, 5> g{};

  template <class T>
  T operator()(const T& z) const {
    return (((g[4] * z + g[3]) * z + g[2]) * z + g[1]) * z + g[0];
  }
  /// G' as a CubicPoly.
  CubicPoly derivative() const { return {{g[1], 2.0 * g[2], 3.0 * g[3], 4.0 * g[4]}}; }
};

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

struct ComplexPair {
  double re = 0.0;
  double im = 0.0;  // > 0
};

/// Real roots ascending with multiplicities, plus the complex-conjugate pair
/// if one exists. Sum of multiplicities + 2 * has_pair == degree.
struct RootSet {
  std::vector<RealRoot> real;
  std::optional<ComplexPair> complex;
  int degree = 0;

  int real_count() const;
  /// Distinct real root values.
  std::vector<double> values() const;
  bool has_multiple_root() const;
};

/// Real roots of a polynomial of degree <= 3. The line is split at the
/// critical points of F into monotone pieces; sign changes are bisected and
/// Newton-polished, and critical points where F vanishes to rounding are
/// reported as multiple roots. Roots closer than 1e-8 * (1 + max|root|)
/// are merged. Throws ArgumentError for the zero polynomial.
RootSet cubic_real_roots(const CubicPoly& f);

/// c0^3 + rho0^2 for F = z^3 + 3 c0 z - 2 rho0.
double discriminant_q0(double c0, double rho0);

/// The q = 0 cubic z^3 + 3 c0 z - 2 rho0.
CubicPoly q0_cubic(double c0, double rho0);

/// G = F'^2 - 2 F F'' by exact coefficient algebra (compensated sums).
/// Its leading coefficient is -3 c3^2.
QuarticPoly companion_g(const CubicPoly& f);

/// True iff G' + 12 eps F vanishes coefficient-wise to 1e-13 relative.
/// For G = companion_g(F) this holds exactly when F's cubic coefficient is eps.
bool check_g_prime_identity(const CubicPoly& f, const QuarticPoly& g, int eps);

}  // namespace cubint
