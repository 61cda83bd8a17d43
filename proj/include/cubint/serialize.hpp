#pragma once

#include <json.hpp>
#include <string>

#include "cubint/classifier.hpp"
#include "cubint/models.hpp"
#include "cubint/simulator.hpp"

namespace cubint {

using Json = nlohmann::ordered_json;

/// Infinite values are written as the strings "+inf" / "-inf".
Json number(double v);

Json to_json(const RootSet& roots);
Json to_json(const AdmissibleInterval& iv);
Json to_json(const Classification& c);
Json to_json(const ModelSpec& spec);
Json to_json(const Provenance& p);
Json to_json(const Domain& d);
/// Spec, provenance, domain and the Riemannian flag.
Json to_json(const Model& m);
Json to_json(const DriftReport& r);

/// Inverse of to_json(ModelSpec); unknown keys are rejected with LookupError.
ModelSpec spec_from_json(const Json& j);

/// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

}  // namespace cubint
