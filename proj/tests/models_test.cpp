#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "cubint/classifier.hpp"
#include "cubint/errors.hpp"
#include "cubint/models.hpp"
#include "support.hpp"

using namespace cubint;

namespace {

constexpr double kPi = std::numbers::pi;

std::string build_error(const ModelSpec& spec) {
  try {
    (void)build(spec);
  } catch (const BuildError& e) {
    return e.what();
  }
  return {};
}

PhaseState with_momenta(PhaseState s, double p1, double p2) {
  s.p1 = p1;
  s.p2 = p2;
  return s;
}

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("Goryachev-Chaplygin energy at the equator") {
    ModelSpec spec{Family::GoryachevChaplygin, {}};
    spec.params.alpha = 1.0;
    const Model m = build(spec);
    CHECK(m.H({Chart::ThetaPhi, kPi / 2, 0.0, 0.0, 1.0}) == doctest::Approx(3.0).epsilon(1e-14));
  }

  TEST_CASE("zeta chart energy with vanishing potential") {
    // F = z^3 has no Riemannian interval; the F > 0 fallback is flagged.
    const Model m = build(ModelSpec{Family::Q0Zeta, {}});
    CHECK(m.H({Chart::ZetaPhi, 1.0, 0.0, 1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(m.riemannian);
  }

  TEST_CASE("Goryachev kinetic coefficient of L3^2") {
    const Model m = build(ModelSpec{Family::Goryachev, {}});
    // With p_theta = 0, L1^2 + L2^2 = cot^2 theta p_phi^2.
    for (double theta : {0.4, 1.0, 2.5}) {
      const double h = m.H({Chart::ThetaPhi, theta, 0.3, 0.0, 1.0});
      const double cot = std::cos(theta) / std::sin(theta);
      CHECK(h - 0.5 * cot * cot == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    }
  }

  TEST_CASE("presets") {
    const auto gc = preset("goryachev-chaplygin");
    CHECK(gc.family == Family::GoryachevChaplygin);
    CHECK(gc.params.alpha == 1.0);
    CHECK(gc.params.beta == 0.1);
    const auto dm = preset("dullin-matveev");
    CHECK(dm.family == Family::DullinMatveev);
    CHECK(dm.params.rho == 2.0);
    CHECK(preset("goryachev").family == Family::Goryachev);
    CHECK(preset_names().size() == 9);
    for (auto name : preset_names()) CHECK_NOTHROW((void)build(preset(name)));
    try {
      (void)preset("unknown");
      FAIL("expected a lookup error");
    } catch (const LookupError& e) {
      CHECK(std::string(e.what()).find("goryachev-chaplygin") != std::string::npos);
    }
  }

  TEST_CASE("parameter constraints name the violated inequality") {
    ModelSpec s{Family::PnegSphereElliptic, {}};
    s.params.k2 = 0.5;
    s.params.rho = 0.5;
    CHECK(build_error(s).find("rho > 1") != std::string::npos);
    ModelSpec p{Family::P0Sphere, {}};
    p.params.rho = 1.5;
    CHECK(build_error(p).find("0 < rho < 1") != std::string::npos);
    ModelSpec q{Family::Q0Sphere, {}};
    q.params.k2 = 1.2;
    CHECK_FALSE(build_error(q).empty());
    ModelSpec t{Family::PnegSphereTrig, {}};
    t.params.zeta0 = 0.5;  // G(0) = 0 needs 4/9 for the roots (1, 4)
    t.params.zeta1 = 1.0;
    t.params.zeta2 = 4.0;
    CHECK(build_error(t).find("G(0)") != std::string::npos);
    t.params.zeta0 = 4.0 / 9.0;
    CHECK(build_error(t).empty());
  }

  TEST_CASE("Lie generators") {
    const auto L = lie_generators(LieAlgebra::So3);
    CHECK(L[2]({Chart::ThetaPhi, 0.7, 1.1, -0.4, 2.5}) == 2.5);
    CHECK(L[0]({Chart::ThetaPhi, kPi / 2, kPi / 2, 2.0, 5.0}) == doctest::Approx(2.0).epsilon(1e-15));
    const auto M = lie_generators(LieAlgebra::So21);
    CHECK(M[1]({Chart::UPhi, 0.8, 0.0, 3.0, 0.0}) == 3.0);
    CHECK_FALSE(L[0].source().empty());
    CHECK(L[0].source() == L[2].source());
    CHECK(M[0].source() != L[0].source());
  }

  TEST_CASE("every family commutes on random draws") {
    std::mt19937_64 rng(101);
    for (Family f : kAllFamilies) {
      for (int v = 0; v < 3; ++v) {
        const Model m = build(random_spec(f, rng, v));
        const auto states = testing::sample_states(m, rng, 200);
        INFO(to_string(f), " draw ", v);
        CHECK(testing::max_scaled_bracket(m, states) <= 1e-9);
      }
    }
  }

  TEST_CASE("kinetic form is positive definite on admissible states") {
    std::mt19937_64 rng(102);
    for (Family f : kAllFamilies) {
      const Model m = build(random_spec(f, rng, 0));
      if (!m.riemannian) continue;
      for (int i = 0; i < 100; ++i) {
        const auto s = sample_state(m, rng);
        const auto a = kinetic_form(m, s);
        INFO(to_string(f), " at x1 = ", s.x1);
        CHECK(a[0] > 0.0);
        CHECK(a[0] * a[2] - a[1] * a[1] > 0.0);
      }
    }
  }

  TEST_CASE("Q is cubic in the momenta") {
    // Third differences in p2 do not depend on the momenta; fourth vanish.
    std::mt19937_64 rng(103);
    const double h = 0.25;
    for (Family f : kAllFamilies) {
      const Model m = build(random_spec(f, rng, 0));
      const auto s = sample_state(m, rng);
      auto d3 = [&](double p1, double p2) {
        auto q = [&](double dp) { return m.Q(with_momenta(s, p1, p2 + dp)); };
        return (q(3 * h) - 3 * q(2 * h) + 3 * q(h) - q(0)) / (h * h * h);
      };
      auto d4 = [&](double p1, double p2) {
        auto q = [&](double dp) { return m.Q(with_momenta(s, p1, p2 + dp)); };
        return q(4 * h) - 4 * q(3 * h) + 6 * q(2 * h) - 4 * q(h) + q(0);
      };
      const double a = d3(0.1, -0.3), b = d3(-0.7, 0.4);
      INFO(to_string(f));
      CHECK(std::abs(a - b) <= 1e-8 * (1.0 + std::abs(a)));
      CHECK(std::abs(d4(0.2, 0.1)) <= 1e-9 * (1.0 + std::abs(m.Q(s))));
    }
  }

  TEST_CASE("hyperbolic q = 0 form needs a halved kinetic term") {
    std::mt19937_64 rng(104);
    for (int v = 0; v < 3; ++v) {
      const Model m = build(random_spec(Family::Q0Hyperbolic, rng, v));
      CHECK(m.provenance.fitted);
      CHECK(m.provenance.scalings.kinetic == doctest::Approx(0.5).epsilon(1e-9));
      CHECK(m.provenance.scalings.alpha == 1.0);
      CHECK(m.provenance.scalings.beta == 1.0);
      CHECK(m.provenance.literal_gate > 1e-6);
    }
    const Model gc = build(preset("goryachev-chaplygin"));
    CHECK_FALSE(gc.provenance.fitted);
    CHECK_FALSE(gc.provenance.equation.empty());
  }

  TEST_CASE("elliptic q = 0 sphere degenerates into the hyperbolic form") {
    ModelSpec sphere{Family::Q0Sphere, {}};
    sphere.params.k2 = 1.0 - 1e-8;
    sphere.params.chi0 = 0.7;
    sphere.params.beta0 = -0.4;
    ModelSpec hyper{Family::Q0Hyperbolic, {}};
    hyper.params.chi0 = 0.7;
    hyper.params.beta0 = -0.4;
    const Model a = build(sphere), b = build(hyper);
    std::mt19937_64 rng(105);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const PhaseState s{Chart::UPhi, testing::uniform(rng, 0.05, 3.0), testing::uniform(rng, 0.0, 2 * kPi),
                         testing::uniform(rng, -1.0, 1.0), testing::uniform(rng, -1.0, 1.0)};
      worst = std::max({worst, testing::rel_diff(a.H(s), b.H(s)), testing::rel_diff(a.Q(s), b.Q(s))});
    }
    CHECK(worst <= 1e-6);
  }

  TEST_CASE("Goryachev restriction of the trig sphere family") {
    // Complex pair with zeta0 = -(z1 + conj z1) and zeta0^2 = |z1|^2.
    ModelSpec t{Family::PnegSphereTrig, {}};
    t.params.trig_roots = TrigRoots::ComplexPair;
    t.params.re = -0.5;
    t.params.im = std::sqrt(0.75);
    t.params.zeta0 = 1.0;
    t.params.alpha = 0.8;
    t.params.beta = 0.3;
    const Model trig = build(t);
    CHECK_FALSE(trig.provenance.fitted);
    ModelSpec g{Family::Goryachev, {}};
    g.params.alpha = 0.8;
    g.params.beta = 0.3;
    const Model gor = build(g);
    for (double mu = -0.95; mu < 0.96; mu += 0.1) {
      const double theta = std::acos(mu);
      // The coefficient of p_theta^2 in H is f / 2.
      const PhaseState s0{Chart::ThetaPhi, theta, 0.4, 0.0, 0.0};
      const double f = 2.0 * (trig.H(with_momenta(s0, 1.0, 0.0)) - trig.H(s0));
      CHECK(std::abs(f - 1.0) <= 1e-12);
      const PhaseState s{Chart::ThetaPhi, theta, 0.4, 0.3, -0.6};
      CHECK(std::abs(trig.H(s) - gor.H(s)) <= 1e-12 * (1.0 + std::abs(gor.H(s))));
      CHECK(scaled_bracket(trig.H, gor.Q, s).scaled() <= 1e-9);
    }
  }

  TEST_CASE("half-domain flag narrows the Goryachev-Chaplygin chart") {
    ModelSpec s = preset("goryachev-chaplygin");
    s.params.half_domain = true;
    const Model m = build(s);
    CHECK(m.domain.x1.hi == doctest::Approx(kPi / 2));
    CHECK(m.domain.singular_x1.empty());
    const Model full = build(preset("goryachev-chaplygin"));
    REQUIRE(full.domain.singular_x1.size() == 1);
    CHECK(full.domain.singular_x1[0] == doctest::Approx(kPi / 2));
  }

  TEST_CASE("sampled states respect the guard") {
    std::mt19937_64 rng(106);
    for (Family f : kAllFamilies) {
      const Model m = build(random_spec(f, rng, 0));
      for (int i = 0; i < 200; ++i) CHECK(m.domain.admits(sample_state(m, rng)));
    }
  }

  TEST_CASE("perturbed Q breaks commutation") {
    const Model m = build_perturbed(preset("dullin-matveev"), 1e-3);
    std::mt19937_64 rng(107);
    CHECK(testing::max_scaled_bracket(m, testing::sample_states(m, rng, 100)) > 1e-6);
  }

  TEST_CASE("family names round-trip") {
    for (Family f : kAllFamilies) CHECK(family_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(family_from_string("Kovalevskaya"), LookupError);
  }
}
