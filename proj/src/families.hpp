#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cubint/models.hpp"

namespace cubint::detail {

struct Terms {
  Observable H;
  Observable Q;
};

/// Throws BuildError naming the first violated parameter constraint.
void validate(const ModelSpec& spec);

/// H and Q of the family with the given term-group scalings applied.
Terms make_terms(const ModelSpec& spec, const Scalings& s);

struct DomainInfo {
  Domain domain;
  bool riemannian = true;
  std::vector<std::string> notes;
};
DomainInfo make_domain(const ModelSpec& spec);

std::function<double(double, double)> conformal_factor(const ModelSpec& spec);

}  // namespace cubint::detail
