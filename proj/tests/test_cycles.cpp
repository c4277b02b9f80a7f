#include <doctest.h>

#include "gskit/cycles.hpp"
#include "gskit/equilibria.hpp"
#include "gskit/errors.hpp"

using namespace gskit;

namespace {
const Params region3{0.034, 0.010963426116312};
}

TEST_SUITE("cycles") {
  TEST_CASE("section ray geometry") {
    const Params a{0.05, 0.03};
    const auto sec = section_for(a);
    const auto eq = equilibria(a);
    CHECK(sec.origin.u == eq.p_mp.u);
    CHECK(sec.direction.norm() == doctest::Approx(1.0));
    CHECK(sec.direction.dot(sec.normal) == doctest::Approx(0.0));
    // pointing away from the saddle
    CHECK(sec.coordinate(eq.p_pm) < 0.0);
    // the far end sits on u = 0
    CHECK(sec.point(sec.s_max).u == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(section_for(Params{0.05, 0.015}), SaddleMissing);
  }

  TEST_CASE("two cycles between the Hopf and fold-of-cycles curves") {
    const auto c = limit_cycle_census(region3);
    REQUIRE(c.size() == 2);
    CHECK(c[0].s < c[1].s);
    CHECK(c[0].stable());
    CHECK(c[1].nontrivial_multiplier > 1.0);
    CHECK(c[0].period > 0.0);
  }

  TEST_CASE("cycles close on themselves") {
    const auto c = limit_cycle_census(region3);
    REQUIRE(c.size() == 2);
    const auto sec = section_for(region3);
    for (const auto& cy : c) {
      const auto r = return_map(region3, sec, cy.s, ReturnSettings{IntegratorSettings{1e-12, 1e-14}, 5000.0});
      REQUIRE(r);
      CHECK(r->s == doctest::Approx(cy.s).epsilon(1e-8));
      CHECK(r->time == doctest::Approx(cy.period).epsilon(1e-6));
    }
  }

  TEST_CASE("Floquet multiplier equals the return-map slope") {
    const auto c = limit_cycle_census(region3);
    REQUIRE(c.size() == 2);
    const auto sec = section_for(region3);
    const ReturnSettings rs{IntegratorSettings{1e-13, 1e-15}, 5000.0};
    for (const auto& cy : c) {
      const double h = 1e-5;
      const auto lo = return_map(region3, sec, cy.s - h, rs);
      const auto hi = return_map(region3, sec, cy.s + h, rs);
      REQUIRE(lo);
      REQUIRE(hi);
      const double slope = (hi->s - lo->s) / (2 * h);
      CHECK(std::abs(slope - cy.nontrivial_multiplier) < 1e-5);
      const auto d = return_map(region3, sec, cy.s, rs, true);
      REQUIRE(d);
      CHECK(std::abs(d->dP - cy.nontrivial_multiplier) < 1e-7);
      // the trivial multiplier of the monodromy is 1
      const Eigen::Vector2cd ev = d->monodromy.eigenvalues();
      const double trivial = std::min(std::abs(ev(0) - 1.0), std::abs(ev(1) - 1.0));
      CHECK(trivial < 1e-6);
    }
  }

  TEST_CASE("no cycles where p_mp is stable and far from every bifurcation") {
    CHECK(limit_cycle_census(Params{0.02, 0.01}).empty());
    CHECK(limit_cycle_census(Params{0.02, 0.003}).empty());
  }

  TEST_CASE("shooting from a nearby guess converges to the census cycle") {
    const auto c = limit_cycle_census(region3);
    REQUIRE(c.size() == 2);
    CycleRepr guess = c[1];
    guess.s *= 1.002;
    const auto got = shoot_cycle(region3, guess);
    CHECK(got.s == doctest::Approx(c[1].s).epsilon(1e-8));
  }
}
