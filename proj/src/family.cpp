#include "cubint/family.hpp"

#include <string>

#include "cubint/errors.hpp"

namespace cubint {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Q0Zeta: return "Q0Zeta";
    case Family::Q0Sphere: return "Q0Sphere";
    case Family::Q0Hyperbolic: return "Q0Hyperbolic";
    case Family::P0Hyperbolic: return "P0Hyperbolic";
    case Family::P0Sphere: return "P0Sphere";
    case Family::P0Plane: return "P0Plane";
    case Family::PposZeta: return "PposZeta";
    case Family::PposSphere: return "PposSphere";
    case Family::PposHyperbolic: return "PposHyperbolic";
    case Family::PnegZeta: return "PnegZeta";
    case Family::PnegSphereElliptic: return "PnegSphereElliptic";
    case Family::PnegSphereTrig: return "PnegSphereTrig";
    case Family::DullinMatveev: return "DullinMatveev";
    case Family::GoryachevChaplygin: return "GoryachevChaplygin";
    case Family::Goryachev: return "Goryachev";
    case Family::PnegHyperbolic: return "PnegHyperbolic";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  for (Family f : kAllFamilies)
    if (to_string(f) == name) return f;
  std::string valid;
  for (Family f : kAllFamilies) {
    if (!valid.empty()) valid += ", ";
    valid += to_string(f);
  }
  throw LookupError("unknown family '" + std::string(name) + "'; valid families: " + valid);
}

std::string_view to_string(Manifold manifold) {
  switch (manifold) {
    case Manifold::S2: return "S2";
    case Manifold::H2: return "H2";
    case Manifold::R2: return "R2";
    case Manifold::RP2: return "RP2";
    case Manifold::None: return "none";
  }
  return "none";
}

Chart chart_of(Family family) {
  switch (family) {
    case Family::Q0Zeta:
    case Family::PposZeta:
    case Family::PnegZeta:
      return Chart::ZetaPhi;
    case Family::Q0Sphere:
    case Family::Q0Hyperbolic:
    case Family::P0Hyperbolic:
    case Family::PposSphere:
    case Family::PposHyperbolic:
    case Family::PnegSphereElliptic:
    case Family::PnegHyperbolic:
      return Chart::UPhi;
    case Family::P0Sphere:
    case Family::PnegSphereTrig:
    case Family::DullinMatveev:
    case Family::GoryachevChaplygin:
    case Family::Goryachev:
      return Chart::ThetaPhi;
    case Family::P0Plane:
      return Chart::Cartesian;
  }
  return Chart::ThetaPhi;
}

std::string_view equation_tag(Family family) {
  switch (family) {
    case Family::Q0Zeta: return "sys0";
    case Family::Q0Sphere: return "sys1q0";
    case Family::Q0Hyperbolic: return "sys2q0";
    case Family::P0Hyperbolic: return "si1p0";
    case Family::P0Sphere: return "si2p0";
    case Family::P0Plane: return "si3p0";
    case Family::PposZeta: return "newH";
    case Family::PposSphere: return "sys1q";
    case Family::PposHyperbolic: return "sys2q";
    case Family::PnegZeta: return "newH";
    case Family::PnegSphereElliptic: return "sys1qm";
    case Family::PnegSphereTrig: return "sys2qm";
    case Family::DullinMatveev: return "DM";
    case Family::GoryachevChaplygin: return "sys2bisq";
    case Family::Goryachev: return "goryachev-top";
    case Family::PnegHyperbolic: return "sys2terq";
  }
  return "";
}

Manifold manifold_of(Family family) {
  switch (family) {
    case Family::Q0Zeta:
    case Family::PposZeta:
    case Family::PnegZeta:
      return Manifold::None;
    case Family::Q0Hyperbolic:
    case Family::P0Hyperbolic:
    case Family::PposHyperbolic:
    case Family::PnegHyperbolic:
      return Manifold::H2;
    case Family::P0Plane:
      return Manifold::R2;
    default:
      return Manifold::S2;
  }
}

}  // namespace cubint
