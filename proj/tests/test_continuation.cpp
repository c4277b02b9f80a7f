#include <doctest.h>

#include "gskit/continuation.hpp"
#include "gskit/equilibria.hpp"
#include "gskit/errors.hpp"

using namespace gskit;

TEST_SUITE("continuation") {
  TEST_CASE("seeds satisfy their defining systems") {
    for (const double k : {0.01, 0.03, 0.05}) {
      const auto h = hopf_seed(k);
      CHECK(defining_system(CurveKind::Hopf, h.y).norm() < 1e-12);
      CHECK(h.params.F == doctest::Approx(hopf_F(k)));
      for (const bool upper : {true, false}) {
        const auto f = fold_seed(k, upper);
        CHECK(defining_system(CurveKind::Fold, f.y).norm() < 1e-12);
        const auto sn = saddle_node_F(k);
        CHECK(f.params.F == doctest::Approx(upper ? sn.upper : sn.lower));
      }
    }
  }

  TEST_CASE("curve names round-trip") {
    for (const auto k : {CurveKind::Fold, CurveKind::Hopf, CurveKind::Lpc, CurveKind::Homoclinic}) {
      CHECK(curve_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS(curve_kind_from_string("bogus"));
  }

  TEST_CASE("Hopf curve follows its closed form and ends at BT") {
    const auto run = continue_curve(CurveKind::Hopf, hopf_seed(0.03));
    CHECK(run.termination == "Bogdanov-Takens point");
    REQUIRE(run.points.size() > 3);
    for (const auto& p : run.points) CHECK(std::abs(p.params.F - hopf_F(p.params.k)) < 1e-9);
    bool bt = false, gh = false;
    for (const auto& s : run.specials) {
      if (s.kind == "BT") bt = std::hypot(s.point.params.k - 0.0625, s.point.params.F - 0.0625) < 1e-8;
      if (s.kind == "GH") gh = std::hypot(s.point.params.k - 9.0 / 256, s.point.params.F - 3.0 / 256) < 1e-8;
    }
    CHECK(bt);
    CHECK(gh);
  }

  TEST_CASE("Hopf curve towards k = 0 has no special point below GH") {
    ContinuationSettings s;
    s.direction = -1;
    const auto run = continue_curve(CurveKind::Hopf, hopf_seed(0.03), s);
    CHECK(run.termination == "k -> 0 boundary");
    CHECK(run.specials.empty());
    CHECK(run.points.back().params.k < 1e-3);
  }

  TEST_CASE("fold curve matches both saddle-node branches") {
    ContinuationSettings s;
    s.h_max = 2e-3;
    const auto run = continue_curve(CurveKind::Fold, fold_seed(0.03, true), s);
    REQUIRE(run.points.size() > 3);
    for (const auto& p : run.points) {
      const auto sn = saddle_node_F(p.params.k);
      const double d = std::min(std::abs(p.params.F - sn.upper), std::abs(p.params.F - sn.lower));
      CHECK(d < 1e-9);
    }
    const auto at = refine_at_k(CurveKind::Fold, fold_seed(0.02, false), 0.021, s);
    CHECK(at.params.F == doctest::Approx(saddle_node_F(0.021).lower).epsilon(1e-10));
  }

  TEST_CASE("a seed slightly off the curve is corrected; one outside the quadrant is refused") {
    auto off = hopf_seed(0.03);
    off.y(3) += 1e-5;
    ContinuationSettings s;
    s.max_points = 3;
    const auto run = continue_curve(CurveKind::Hopf, off, s);
    REQUIRE_FALSE(run.points.empty());
    CHECK(std::abs(run.points.front().params.F - hopf_F(run.points.front().params.k)) < 1e-10);
    auto out = hopf_seed(0.03);
    out.y(2) = -0.01;
    CHECK_THROWS_AS(continue_curve(CurveKind::Hopf, out, s), DomainExit);
  }

  TEST_CASE("fold-of-cycles seed sits just below the Hopf curve") {
    double collision = 0.0;
    const auto p = lpc_seed(0.034, &collision);
    CHECK(p.params.k == doctest::Approx(0.034));
    CHECK(p.params.F < hopf_F(0.034));
    CHECK(hopf_F(0.034) - p.params.F < 1e-5);
    CHECK(std::abs(collision - p.params.F) < 1e-7);
    REQUIRE(p.cycle);
    CHECK(p.cycle->nontrivial_multiplier == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("separatrix splitting changes sign across the homoclinic curve") {
    const double k = 0.057;
    const auto h = homoclinic_point(k);
    CHECK(h.bracket_hi - h.bracket_lo <= 1e-8);
    CHECK(h.F > hopf_F(k));
    CHECK(h.F < saddle_node_F(k).upper);
    const double lo = separatrix_splitting(Params{k, h.F - 2e-4});
    const double hi = separatrix_splitting(Params{k, h.F + 2e-4});
    CHECK(lo * hi < 0.0);
  }

  TEST_CASE("log-log fit recovers a power law") {
    std::vector<double> x, y;
    for (int i = 1; i <= 8; ++i) {
      x.push_back(std::pow(2.0, -i));
      y.push_back(3.0 * std::pow(x.back(), 1.75));
    }
    const auto f = loglog_fit(x, y);
    CHECK(f.slope == doctest::Approx(1.75));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)));
    CHECK(f.samples == 8);
  }
}
