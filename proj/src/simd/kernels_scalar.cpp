#include <algorithm>
#include <cmath>

#include "cubint/simd.hpp"

namespace cubint::simd {
namespace {

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  const std::size_t n = coeffs.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (n == 0) {
      out[i] = 0.0;
      continue;
    }
    double r = coeffs[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) r = r * x[i] + coeffs[k];
    out[i] = r;
  }
}

void symplectic_contract(std::span<const Grad4> f, std::span<const Grad4> g,
                         std::span<double> bracket, std::span<double> norms) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Grad4& a = f[i];
    const Grad4& b = g[i];
    bracket[i] = (a[0] * b[2] - a[2] * b[0]) + (a[1] * b[3] - a[3] * b[1]);
    const double na = (a[0] * a[0] + a[2] * a[2]) + (a[1] * a[1] + a[3] * a[3]);
    const double nb = (b[0] * b[0] + b[2] * b[2]) + (b[1] * b[1] + b[3] * b[3]);
    norms[i] = std::sqrt(na) * std::sqrt(nb);
  }
}

double max_abs_deviation(std::span<const double> v, double ref) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - ref));
  return m;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{Target::Scalar, &horner, &symplectic_contract, &max_abs_deviation};
  return k;
}

}  // namespace cubint::simd
