#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "cubint/models.hpp"

namespace cubint {

/// Max absolute residuals of the six relations linking the metric data
/// (a, f, g, chi, beta, gamma) of a cubic integral, evaluated on a grid.
struct LemmaResiduals {
  static constexpr std::array<std::string_view, 6> names = {
      "chi' + q f",
      "chi f' - gamma f",
      "chi g' - beta f",
      "gamma' + chi a - 2 q f'",
      "a gamma + chi a'/2 - 3 (p + q a) f",
      "beta' - 2 q g'",
  };
  std::array<double, 6> max_abs{};
  std::size_t points = 0;

  double max() const;
};

struct LemmaOptions {
  int grid_points = 50;
  /// Added to the reconstructed gamma; nonzero values are a negative control.
  double gamma_offset = 0.0;
};

/// Reconstructs the metric data of a Q0Zeta, PposZeta or PnegZeta model as
/// functions of zeta, converts theta-derivatives with dzeta/dtheta, and
/// returns the residual maxima over an interior grid of the model's zeta
/// interval. Throws DomainError at grid points where the weighted F is not
/// positive and ArgumentError for other families.
LemmaResiduals residual_lemma1(const Model& model, const LemmaOptions& options = {});

}  // namespace cubint
