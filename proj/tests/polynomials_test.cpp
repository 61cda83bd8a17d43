#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cubint/errors.hpp"
#include "cubint/polynomials.hpp"
#include "support.hpp"

using namespace cubint;

namespace {

// Sign changes on a fine grid, bisected; independent of the library's
// critical-point bracketing.
std::vector<double> roots_by_grid(const CubicPoly& f, double lo, double hi, int n) {
  std::vector<double> out;
  double a = lo, fa = f(a);
  for (int i = 1; i <= n; ++i) {
    const double b = lo + (hi - lo) * i / n, fb = f(b);
    if (fa == 0.0) out.push_back(a);
    else if (fa * fb < 0.0) {
      double l = a, r = b, fl = fa;
      for (int k = 0; k < 200 && r - l > 1e-15 * (1.0 + std::abs(l)); ++k) {
        const double mid = 0.5 * (l + r), fm = f(mid);
        if ((fm < 0.0) == (fl < 0.0)) { l = mid; fl = fm; } else r = mid;
      }
      out.push_back(0.5 * (l + r));
    }
    a = b;
    fa = fb;
  }
  return out;
}

double coeff_scale(const CubicPoly& f) {
  double s = 0.0;
  for (double c : f.c) s = std::max(s, std::abs(c));
  return 1.0 + s;
}

}  // namespace

TEST_SUITE("polynomials") {
  TEST_CASE("roots of z^3 - 3 z") {
    const auto r = cubic_real_roots({{0.0, -3.0, 0.0, 1.0}});
    REQUIRE(r.real.size() == 3);
    CHECK(r.real[0].value == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
    CHECK(std::abs(r.real[1].value) <= 1e-14);
    CHECK(r.real[2].value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    for (const auto& x : r.real) CHECK(x.multiplicity == 1);
    CHECK(!r.complex);
  }

  TEST_CASE("triple root of z^3") {
    const auto r = cubic_real_roots({{0.0, 0.0, 0.0, 1.0}});
    REQUIRE(r.real.size() == 1);
    CHECK(r.real[0].value == 0.0);
    CHECK(r.real[0].multiplicity == 3);
  }

  TEST_CASE("double root of z^3 - 6 z^2 + 9 z - 4") {
    const CubicPoly f{{-4.0, 9.0, -6.0, 1.0}};
    const auto r = cubic_real_roots(f);
    REQUIRE(r.real.size() == 2);
    CHECK(r.real[0].value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.real[0].multiplicity == 2);
    CHECK(r.real[1].value == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(r.real[1].multiplicity == 1);
    const auto grid = roots_by_grid(f, 3.0, 5.0, 1000);
    REQUIRE(grid.size() == 1);
    CHECK(std::abs(grid[0] - r.real[1].value) <= 1e-12);
    // G vanishes at the double root.
    CHECK(std::abs(companion_g(f)(r.real[0].value)) <= 1e-9);
  }

  TEST_CASE("zero polynomial is rejected") { CHECK_THROWS_AS(cubic_real_roots({}), ArgumentError); }

  TEST_CASE("quadratic and linear inputs") {
    const auto q = cubic_real_roots({{2.0, -3.0, 1.0, 0.0}});
    CHECK(q.degree == 2);
    REQUIRE(q.real.size() == 2);
    CHECK(q.real[0].value == doctest::Approx(1.0));
    CHECK(q.real[1].value == doctest::Approx(2.0));
    const auto c = cubic_real_roots({{1.0, 0.0, 1.0, 0.0}});
    CHECK(c.real.empty());
    REQUIRE(c.complex);
    CHECK(c.complex->im == doctest::Approx(1.0));
  }

  TEST_CASE("random cubics agree with the grid oracle") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
      double r[3];
      for (double& x : r) x = testing::uniform(rng, -5.0, 5.0);
      std::sort(r, r + 3);
      if (r[1] - r[0] < 1e-3 || r[2] - r[1] < 1e-3) continue;
      const double lead = testing::uniform(rng, 0.5, 2.0) * (i % 2 ? 1.0 : -1.0);
      const CubicPoly f = CubicPoly::from_roots(lead, r[0], r[1], r[2]);
      const auto got = cubic_real_roots(f);
      const auto want = roots_by_grid(f, -6.0, 6.0, 4000);
      REQUIRE(got.real.size() == 3);
      REQUIRE(want.size() == 3);
      for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(got.real[static_cast<std::size_t>(k)].value - want[static_cast<std::size_t>(k)]) <= 1e-10);
        CHECK(std::abs(f(got.real[static_cast<std::size_t>(k)].value)) <= 1e-12 * coeff_scale(f));
      }
    }
  }

  TEST_CASE("one real root plus a complex pair") {
    const CubicPoly f = CubicPoly::from_real_and_complex(1.0, 0.5, -1.0, 2.0);
    const auto r = cubic_real_roots(f);
    REQUIRE(r.real.size() == 1);
    CHECK(r.real[0].value == doctest::Approx(0.5).epsilon(1e-13));
    REQUIRE(r.complex);
    CHECK(r.complex->re == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.complex->im == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("q = 0 discriminant") {
    CHECK(discriminant_q0(0.0, 0.0) == 0.0);
    CHECK(discriminant_q0(-1.0, 0.0) == -1.0);
    CHECK(discriminant_q0(1.0, 1.0) == 2.0);
    const auto r = cubic_real_roots(q0_cubic(1.0, 1.0));
    CHECK(r.real_count() == 1);
    CHECK(r.real.size() == 1);
  }

  TEST_CASE("companion of z^3") {
    const auto g = companion_g({{0.0, 0.0, 0.0, 1.0}});
    CHECK(g.g == std::array<double, 5>{0.0, 0.0, 0.0, 0.0, -3.0});
  }

  TEST_CASE("companion of the q = 0 cubic with c0 = 1, rho0 = 0") {
    const auto g = companion_g(q0_cubic(1.0, 0.0));
    CHECK(g.g == std::array<double, 5>{9.0, 0.0, -18.0, 0.0, -3.0});
  }

  TEST_CASE("companion of a quadratic is its discriminant") {
    // z (z - 2): c0 = 0, c1 = -2, c2 = 1
    const auto g = companion_g({{0.0, -2.0, 1.0, 0.0}});
    CHECK(g.g == std::array<double, 5>{4.0, 0.0, 0.0, 0.0, 0.0});
  }

  TEST_CASE("derivative identity examples") {
    const CubicPoly f = q0_cubic(1.0, 0.0);
    const auto g = companion_g(f);
    CHECK(check_g_prime_identity(f, g, +1));
    CHECK(g.derivative().c == std::array<double, 4>{0.0, -36.0, 0.0, -12.0});
    CHECK_FALSE(check_g_prime_identity({{0.0, 0.0, 0.0, 1.0}}, {{0.0, 0.0, 0.0, 0.0, 3.0}}, +1));
    const CubicPoly fm{{-0.02, 0.3, -1.3, -1.0}};  // -(z^3 + 1.3 z^2 - 0.3 z + 0.02)
    CHECK(check_g_prime_identity(fm, companion_g(fm), -1));
    CHECK_FALSE(check_g_prime_identity(fm, companion_g(fm), +1));
  }

  TEST_CASE("companion polynomial of random cubics") {
    std::mt19937_64 rng(17);
    for (int eps : {+1, -1}) {
      for (int i = 0; i < 1000; ++i) {
        const CubicPoly f{{testing::uniform(rng, -5, 5), testing::uniform(rng, -5, 5),
                           testing::uniform(rng, -5, 5), static_cast<double>(eps)}};
        const auto g = companion_g(f);
        CHECK(g.g[4] == -3.0);
        CHECK(check_g_prime_identity(f, g, eps));
      }
    }
  }

  TEST_CASE("q = 0 companion reproduces the closed form") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
      const double c0 = testing::uniform(rng, -3, 3), rho0 = testing::uniform(rng, -3, 3);
      const auto g = companion_g(q0_cubic(c0, rho0));
      const std::array<double, 5> want{9 * c0 * c0, 24 * rho0, -18 * c0, 0.0, -3.0};
      for (std::size_t k = 0; k < 5; ++k)
        CHECK(std::abs(g.g[k] - want[k]) <= 1e-13 * (1.0 + std::abs(want[k])));
    }
  }
}
