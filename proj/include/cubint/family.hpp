#pragma once

#include <array>
#include <string_view>

#include "cubint/bracket.hpp"

namespace cubint {

/// Every explicit integrable family in the catalog.
enum class Family {
  Q0Zeta,
  Q0Sphere,
  Q0Hyperbolic,
  P0Hyperbolic,
  P0Sphere,
  P0Plane,
  PposZeta,
  PposSphere,
  PposHyperbolic,
  PnegZeta,
  PnegSphereElliptic,
  PnegSphereTrig,
  DullinMatveev,
  GoryachevChaplygin,
  Goryachev,
  PnegHyperbolic,
};

inline constexpr std::array<Family, 16> kAllFamilies = {
    Family::Q0Zeta,         Family::Q0Sphere,           Family::Q0Hyperbolic,
    Family::P0Hyperbolic,   Family::P0Sphere,           Family::P0Plane,
    Family::PposZeta,       Family::PposSphere,         Family::PposHyperbolic,
    Family::PnegZeta,       Family::PnegSphereElliptic, Family::PnegSphereTrig,
    Family::DullinMatveev,  Family::GoryachevChaplygin, Family::Goryachev,
    Family::PnegHyperbolic,
};

enum class Manifold { S2, H2, R2, RP2, None };

std::string_view to_string(Family family);
/// Accepts the enumerator spelling ("GoryachevChaplygin"); throws LookupError.
Family family_from_string(std::string_view name);
std::string_view to_string(Manifold manifold);

Chart chart_of(Family family);
/// Label of the displayed system the observables are transcribed from.
std::string_view equation_tag(Family family);
/// Manifold carrying the family's metric; None for the local zeta-chart forms.
Manifold manifold_of(Family family);

}  // namespace cubint
