#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cubint/bracket.hpp"
#include "cubint/models.hpp"

namespace testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))); }

inline std::vector<cubint::PhaseState> sample_states(const cubint::Model& m, std::mt19937_64& rng, int n) {
  std::vector<cubint::PhaseState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(cubint::sample_state(m, rng));
  return out;
}

inline double max_scaled_bracket(const cubint::Model& m, const std::vector<cubint::PhaseState>& states) {
  double worst = 0.0;
  for (const auto& sb : cubint::scaled_brackets(m.H, m.Q, states)) worst = std::max(worst, sb.scaled());
  return worst;
}

}  // namespace testing
