#pragma once

#include "cubint/dual.hpp"

namespace cubint {

/// Jacobi elliptic functions sn, cn, dn at one argument.
template <class T>
struct BasicJacobiTriple {
  T sn;
  T cn;
  T dn;
};
using JacobiTriple = BasicJacobiTriple<double>;

/// Complete elliptic integral of the first kind, K(m) with parameter m = k^2.
/// Throws DomainError unless 0 <= m < 1.
double complete_elliptic_k(double m);

/// sn, cn, dn of (u, m) for 0 <= m <= 1 via the descending Landen (AGM)
/// transformation; m == 1 uses the hyperbolic closed forms.
/// Throws ArgumentError for non-finite u and DomainError for m outside [0, 1].
JacobiTriple jacobi(double u, double m);

/// Dual-argument overload: d sn = cn dn du, d cn = -sn dn du, d dn = -m sn cn du.
BasicJacobiTriple<Dual> jacobi(const Dual& u, double m);

}  // namespace cubint
