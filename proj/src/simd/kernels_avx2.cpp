#include <algorithm>
#include <cmath>

#include "cubint/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define CUBINT_HAVE_AVX2_BUILD 1
#else
#define CUBINT_HAVE_AVX2_BUILD 0
#endif

namespace cubint::simd {

#if CUBINT_HAVE_AVX2_BUILD
namespace {

#define CUBINT_AVX2 __attribute__((target("avx2")))

CUBINT_AVX2 void horner(std::span<const double> coeffs, std::span<const double> x,
                        std::span<double> out) {
  const std::size_t n = coeffs.size();
  if (n == 0) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(x.size()), 0.0);
    return;
  }
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    __m256d r = _mm256_set1_pd(coeffs[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;)
      r = _mm256_add_pd(_mm256_mul_pd(r, xv), _mm256_set1_pd(coeffs[k]));
    _mm256_storeu_pd(out.data() + i, r);
  }
  for (; i < x.size(); ++i) {
    double r = coeffs[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) r = r * x[i] + coeffs[k];
    out[i] = r;
  }
}

// Lanes (0,1) hold the position slots, (2,3) the momentum slots.
CUBINT_AVX2 inline double pair_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);  // (v0 + v2, v1 + v3)
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

CUBINT_AVX2 void symplectic_contract(std::span<const Grad4> f, std::span<const Grad4> g,
                                     std::span<double> bracket, std::span<double> norms) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const __m256d a = _mm256_load_pd(f[i].d.data());
    const __m256d b = _mm256_load_pd(g[i].d.data());
    // (b2, b3, b0, b1)
    const __m256d bs = _mm256_permute4x64_pd(b, 0x4E);
    const __m256d p = _mm256_mul_pd(a, bs);  // (a0 b2, a1 b3, a2 b0, a3 b1)
    const __m128d lo = _mm256_castpd256_pd128(p);
    const __m128d hi = _mm256_extractf128_pd(p, 1);
    const __m128d d = _mm_sub_pd(lo, hi);  // (a0 b2 - a2 b0, a1 b3 - a3 b1)
    bracket[i] = _mm_cvtsd_f64(d) + _mm_cvtsd_f64(_mm_unpackhi_pd(d, d));
    const double na = pair_sum(_mm256_mul_pd(a, a));
    const double nb = pair_sum(_mm256_mul_pd(b, b));
    norms[i] = std::sqrt(na) * std::sqrt(nb);
  }
}

CUBINT_AVX2 double max_abs_deviation(std::span<const double> v, double ref) {
  const __m256d refv = _mm256_set1_pd(ref);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= v.size(); i += 4) {
    const __m256d d = _mm256_andnot_pd(sign, _mm256_sub_pd(_mm256_loadu_pd(v.data() + i), refv));
    m = _mm256_max_pd(m, d);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < v.size(); ++i) r = std::max(r, std::abs(v[i] - ref));
  return r;
}

}  // namespace

const Kernels* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const Kernels k{Target::Avx2, &horner, &symplectic_contract, &max_abs_deviation};
  return supported ? &k : nullptr;
}

#else

const Kernels* avx2_kernels() { return nullptr; }

#endif

}  // namespace cubint::simd
