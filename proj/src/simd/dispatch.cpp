#include <cstdlib>
#include <string_view>

#include "cubint/simd.hpp"

namespace cubint::simd {

const Kernels& kernels() {
  static const Kernels& selected = []() -> const Kernels& {
    const char* env = std::getenv("CUBINT_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return selected;
}

std::string_view to_string(Target target) {
  switch (target) {
    case Target::Scalar:
      return "scalar";
    case Target::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace cubint::simd
