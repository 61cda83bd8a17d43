#pragma once

// Data-parallel kernels with a scalar reference and an AVX2 variant chosen
// at runtime. Both variants are required to agree bit for bit.

#include <cstddef>
#include <span>
#include <string_view>

#include "cubint/dual.hpp"

namespace cubint::simd {

enum class Target { Scalar, Avx2 };

struct Kernels {
  Target target;
  /// out[i] = sum_k coeffs[k] x[i]^k (Horner, highest power first).
  void (*horner)(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
  /// bracket[i] = (f0 g2 - f2 g0) + (f1 g3 - f3 g1) for gradients ordered
  /// (x1, x2, p1, p2); norms[i] = |f| |g|.
  void (*symplectic_contract)(std::span<const Grad4> f, std::span<const Grad4> g,
                              std::span<double> bracket, std::span<double> norms);
  /// max_i |v[i] - ref|; 0 for empty input.
  double (*max_abs_deviation)(std::span<const double> v, double ref);
};

const Kernels& scalar_kernels();
/// nullptr when the CPU or the build lacks AVX2.
const Kernels* avx2_kernels();
/// AVX2 when available, unless CUBINT_SIMD=scalar is set.
const Kernels& kernels();

std::string_view to_string(Target target);

}  // namespace cubint::simd
