#include <doctest.h>

#include <random>

#include "cubint/errors.hpp"
#include "cubint/lemma.hpp"
#include "cubint/models.hpp"
#include "cubint/polynomials.hpp"

using namespace cubint;

namespace {

ModelSpec pneg_example() {
  // F = (1 - z)(z - 0.2)(z - 0.1)
  const auto f = CubicPoly::from_roots(1.0, 0.1, 0.2, 1.0);
  ModelSpec s{Family::PnegZeta, {}};
  s.params.c0 = f.c[0];
  s.params.c1 = f.c[1];
  s.params.c2 = f.c[2];
  s.params.alpha = 1.0;
  s.params.beta = 0.1;
  return s;
}

ModelSpec q0_example() {
  ModelSpec s{Family::Q0Zeta, {}};
  s.params.c0 = -1.0;
  s.params.rho0 = 0.0;
  s.params.chi0 = 1.0;
  s.params.beta0 = 0.1;
  return s;
}

}  // namespace

TEST_SUITE("lemma") {
  TEST_CASE("negative cubic example") {
    const auto r = residual_lemma1(build(pneg_example()));
    CHECK(r.points == 50);
    for (std::size_t i = 0; i < 6; ++i) {
      INFO(LemmaResiduals::names[i]);
      CHECK(r.max_abs[i] <= 1e-8);
    }
  }

  TEST_CASE("q = 0 example") {
    const Model m = build(q0_example());
    CHECK(m.domain.x1.lo == doctest::Approx(-std::sqrt(3.0)));
    CHECK(residual_lemma1(m).max() <= 1e-8);
  }

  TEST_CASE("random zeta models") {
    std::mt19937_64 rng(41);
    for (Family f : {Family::Q0Zeta, Family::PposZeta, Family::PnegZeta}) {
      for (int v = 0; v < 5; ++v) {
        const Model m = build(random_spec(f, rng, v));
        INFO(to_string(f), " draw ", v);
        CHECK(residual_lemma1(m, {100, 0.0}).max() <= 1e-8);
      }
    }
  }

  TEST_CASE("perturbed gamma is detected") {
    CHECK(residual_lemma1(build(pneg_example()), {50, 1e-3}).max() > 1e-4);
    CHECK(residual_lemma1(build(q0_example()), {50, 1e-3}).max() > 1e-4);
  }

  TEST_CASE("other families are rejected") {
    CHECK_THROWS_AS(residual_lemma1(build(preset("goryachev-chaplygin"))), ArgumentError);
    CHECK_THROWS_AS(residual_lemma1(build(q0_example()), {0, 0.0}), ArgumentError);
  }
}
