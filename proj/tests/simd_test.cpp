#include <doctest.h>

#include <random>
#include <vector>

#include "cubint/simd.hpp"
#include "support.hpp"

using namespace cubint;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = testing::uniform(rng, lo, hi);
  return v;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("dispatch reports a usable target") {
    const auto& k = simd::kernels();
    CHECK((k.target == simd::Target::Scalar || k.target == simd::Target::Avx2));
    CHECK(simd::to_string(simd::scalar_kernels().target) == "scalar");
  }

  TEST_CASE("scalar reference values") {
    const auto& s = simd::scalar_kernels();
    const std::vector<double> coeffs{1.0, -2.0, 3.0};  // 1 - 2x + 3x^2
    const std::vector<double> x{0.0, 1.0, 2.0};
    std::vector<double> out(3);
    s.horner(coeffs, x, out);
    CHECK(out == std::vector<double>{1.0, 2.0, 9.0});
    CHECK(s.max_abs_deviation(std::vector<double>{1.0, 4.0, -2.0}, 1.0) == 3.0);
    CHECK(s.max_abs_deviation(std::vector<double>{}, 1.0) == 0.0);
  }

  TEST_CASE("AVX2 kernels match the scalar reference bit for bit") {
    const auto* avx = simd::avx2_kernels();
    if (avx == nullptr) {
      MESSAGE("AVX2 not available; equivalence not exercised");
      return;
    }
    const auto& s = simd::scalar_kernels();
    std::mt19937_64 rng(9);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 33u, 1000u, 1003u}) {
      const auto x = random_vector(rng, n, -3.0, 3.0);
      for (std::size_t deg = 0; deg <= 5; ++deg) {
        const auto coeffs = random_vector(rng, deg + 1, -2.0, 2.0);
        std::vector<double> a(n), b(n);
        s.horner(coeffs, x, a);
        avx->horner(coeffs, x, b);
        CHECK(a == b);
      }
      std::vector<Grad4> f(n), g(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
          f[i][k] = testing::uniform(rng, -5.0, 5.0);
          g[i][k] = testing::uniform(rng, -5.0, 5.0);
        }
      std::vector<double> b1(n), n1(n), b2(n), n2(n);
      s.symplectic_contract(f, g, b1, n1);
      avx->symplectic_contract(f, g, b2, n2);
      CHECK(b1 == b2);
      CHECK(n1 == n2);
      CHECK(s.max_abs_deviation(x, 0.25) == avx->max_abs_deviation(x, 0.25));
    }
  }

  TEST_CASE("contract kernel computes the canonical bracket") {
    std::vector<Grad4> f(1), g(1);
    f[0].d = {1.0, 2.0, 3.0, 4.0};
    g[0].d = {5.0, 6.0, 7.0, 8.0};
    std::vector<double> b(1), n(1);
    simd::kernels().symplectic_contract(f, g, b, n);
    CHECK(b[0] == (1.0 * 7.0 - 3.0 * 5.0) + (2.0 * 8.0 - 4.0 * 6.0));
    CHECK(n[0] == doctest::Approx(std::sqrt(30.0) * std::sqrt(174.0)).epsilon(1e-15));
  }
}
