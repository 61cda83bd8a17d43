#include "cubint/serialize.hpp"

#include <cmath>

#include "cubint/errors.hpp"

namespace cubint {

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

Json to_json(const RootSet& roots) {
  Json real = Json::array();
  for (const auto& r : roots.real) real.push_back({{"value", number(r.value)}, {"multiplicity", r.multiplicity}});
  Json j = {{"degree", roots.degree}, {"real", real}};
  if (roots.complex)
    j["complex_pair"] = {{"re", number(roots.complex->re)}, {"im", number(roots.complex->im)}};
  else
    j["complex_pair"] = nullptr;
  return j;
}

Json to_json(const AdmissibleInterval& iv) {
  if (iv.interval.empty()) return {{"lo", nullptr}, {"hi", nullptr}, {"empty", true}};
  return {{"lo", number(iv.interval.lo)},
          {"hi", number(iv.interval.hi)},
          {"empty", false},
          {"lo_kind", std::string(to_string(iv.lo_kind))},
          {"hi_kind", std::string(to_string(iv.hi_kind))}};
}

namespace {

Json params_json(const std::map<std::string, double>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = number(v);
  return j;
}

Json family_json(const std::optional<Family>& f) {
  return f ? Json(std::string(to_string(*f))) : Json(nullptr);
}

}  // namespace

Json to_json(const Classification& c) {
  Json endpoint_kinds = Json::array();
  if (!c.interval.interval.empty()) {
    endpoint_kinds.push_back(std::string(to_string(c.interval.lo_kind)));
    endpoint_kinds.push_back(std::string(to_string(c.interval.hi_kind)));
  }
  Json alternatives = Json::array();
  for (const auto& r : c.alternatives)
    alternatives.push_back({{"regime", r.name},
                            {"family", family_json(r.family)},
                            {"interval", to_json(r.interval)},
                            {"chart_params", params_json(r.chart_params)}});
  Json zeta0 = Json::array();
  for (double z : c.zeta0_candidates) zeta0.push_back(number(z));
  return {{"discriminant", {{"value", number(c.discriminant)}, {"sign", c.discriminant_sign}}},
          {"roots", to_json(c.roots)},
          {"interval", to_json(c.interval)},
          {"endpoint_kinds", endpoint_kinds},
          {"manifold", std::string(to_string(c.manifold))},
          {"regime", c.regime},
          {"family", family_json(c.family)},
          {"chart_params", params_json(c.chart_params)},
          {"zeta0_candidates", zeta0},
          {"alternatives", alternatives},
          {"notes", c.notes}};
}

Json to_json(const ModelSpec& spec) {
  Json params = Json::object();
  for (auto name : parameter_names(spec.family))
    params[std::string(name)] = number(spec.params.field(name));
  if (spec.family == Family::PnegSphereTrig)
    params["trig_roots"] = std::string(to_string(spec.params.trig_roots));
  if (spec.family == Family::GoryachevChaplygin) params["half_domain"] = spec.params.half_domain;
  return {{"family", std::string(to_string(spec.family))}, {"params", params}};
}

Json to_json(const Provenance& p) {
  return {{"family", std::string(to_string(p.family))},
          {"equation", p.equation},
          {"scalings", {{"kinetic", p.scalings.kinetic}, {"alpha", p.scalings.alpha}, {"beta", p.scalings.beta}}},
          {"fitted", p.fitted},
          {"literal_gate_max", p.literal_gate},
          {"notes", p.notes}};
}

Json to_json(const Domain& d) {
  Json sing = Json::array();
  for (double s : d.singular_x1) sing.push_back(s);
  return {{"x1", {number(d.x1.lo), number(d.x1.hi)}},
          {"x2", {number(d.x2.lo), number(d.x2.hi)}},
          {"x2_periodic", d.x2_periodic},
          {"singular_x1", sing},
          {"guard", d.guard}};
}

Json to_json(const Model& m) {
  return {{"spec", to_json(m.spec)},
          {"chart", std::string(to_string(m.chart()))},
          {"manifold", std::string(to_string(m.spec.family == Family::GoryachevChaplygin &&
                                                     m.spec.params.half_domain
                                                 ? Manifold::RP2
                                                 : manifold_of(m.spec.family)))},
          {"riemannian", m.riemannian},
          {"domain", to_json(m.domain)},
          {"provenance", to_json(m.provenance)}};
}

Json to_json(const DriftReport& r) {
  return {{"max_abs_dH", r.max_abs_dH}, {"max_abs_dQ", r.max_abs_dQ}, {"rel_dH", r.rel_dH},
          {"rel_dQ", r.rel_dQ},         {"steps", r.steps},           {"rejected_steps", r.rejected_steps}};
}

ModelSpec spec_from_json(const Json& j) {
  ModelSpec spec;
  spec.family = family_from_string(j.at("family").get<std::string>());
  if (!j.contains("params")) return spec;
  for (const auto& [key, value] : j.at("params").items()) {
    if (key == "trig_roots") spec.params.trig_roots = trig_roots_from_string(value.get<std::string>());
    else if (key == "half_domain") spec.params.half_domain = value.get<bool>();
    else spec.params.field(key) = value.get<double>();
  }
  return spec;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cubint
