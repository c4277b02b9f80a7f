#include <doctest.h>

#include "gskit/dynamics.hpp"
#include "gskit/equilibria.hpp"

using namespace gskit;

TEST_SUITE("dynamics") {
  TEST_CASE("signature table is one-to-one") {
    const auto& t = signature_table();
    CHECK(t.size() == 6);
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        const bool same = t[i].p_mp_exists == t[j].p_mp_exists && t[i].p_mp_stable == t[j].p_mp_stable &&
                          t[i].cycles == t[j].cycles && t[i].stable_cycles == t[j].stable_cycles;
        CHECK_FALSE(same);
      }
    }
  }

  TEST_CASE("sample points land in every region") {
    struct Sample {
      Params a;
      Region want;
    };
    const std::vector<Sample> samples{
        {{0.05, 0.015}, Region::Outside},
        {{0.02, 0.01}, Region::R1},
        {{0.05, hopf_F(0.05) + 1e-4}, Region::R2},
        {{0.034, 0.010963426116312}, Region::R3},
        {{0.02, hopf_F(0.02) - 1e-4}, Region::R4},
        {{0.02, 0.003}, Region::R5},
    };
    for (const auto& s : samples) {
      const auto l = classify_region(s.a);
      CHECK_MESSAGE(l.id == s.want, "at (", s.a.k, ", ", s.a.F, ") got ", to_string(l.id));
    }
    // on the Hopf curve itself the census is skipped
    const auto h = classify_region(Params{0.03, hopf_F(0.03)});
    CHECK(h.id == Region::Unclassified);
    CHECK(std::find(h.tags.begin(), h.tags.end(), "H") != h.tags.end());
  }

  TEST_CASE("coarse map: adjacency stays inside the expected graph and is thread independent") {
    const auto rs = map_region_settings();
    const auto m1 = region_map(24, 24, 0.0, 0.07, 0.0, 0.07, rs, 1);
    const auto m2 = region_map(24, 24, 0.0, 0.07, 0.0, 0.07, rs, 2);
    for (std::size_t i = 0; i < m1.cells.size(); ++i) CHECK(m1.cells[i].id == m2.cells[i].id);
    CHECK(m1.at(0, 0).k == doctest::Approx(0.07 / 24));
    CHECK(m1.at(23, 23).F == doctest::Approx(0.07));
    const auto want = expected_adjacency();
    for (const auto& e : refined_adjacency(m1, rs)) {
      if (e.first == Region::Unclassified || e.second == Region::Unclassified) continue;
      CHECK_MESSAGE(want.count(e) == 1, "unexpected edge ", to_string(e.first), "-", to_string(e.second));
    }
    const auto present = regions_present(m1);
    CHECK(present.count(Region::Outside) == 1);
    CHECK(present.count(Region::R1) == 1);
    CHECK(present.count(Region::R5) == 1);
  }

  TEST_CASE("chart fields are the pushed-forward field times z^2") {
    const Params a{0.04, 0.03};
    for (const State p : {State{0.7, 0.4}, State{2.0, 3.0}, State{0.3, 5.0}}) {
      const Vec2 f = vector_field(p, a);
      {
        const Vec2 wz = to_chart(Chart::U1, p);
        const double w = wz(0), z = wz(1);
        CHECK(wz(0) == doctest::Approx(p.v / p.u));
        const Vec2 push((f(1) * p.u - p.v * f(0)) / (p.u * p.u), -f(0) / (p.u * p.u));
        CHECK((chart_field(Chart::U1, wz, a) - z * z * push).norm() < 1e-12 * (1 + push.norm()));
        const State back = from_chart(Chart::U1, Vec2(w, z));
        CHECK(back.u == doctest::Approx(p.u));
        CHECK(back.v == doctest::Approx(p.v));
      }
      {
        const Vec2 wz = to_chart(Chart::U2, p);
        const double z = wz(1);
        const Vec2 push((f(0) * p.v - p.u * f(1)) / (p.v * p.v), -f(1) / (p.v * p.v));
        CHECK((chart_field(Chart::U2, wz, a) - z * z * push).norm() < 1e-12 * (1 + push.norm()));
      }
    }
  }

  TEST_CASE("chart Jacobians agree with finite differences") {
    const Params a{0.04, 0.03};
    for (const Chart c : {Chart::U1, Chart::U2}) {
      const Vec2 x(0.3, 0.2);
      const Mat2 J = chart_jacobian(c, x, a);
      const double h = 1e-6;
      for (int j = 0; j < 2; ++j) {
        Vec2 lo = x, hi = x;
        lo(j) -= h;
        hi(j) += h;
        const Vec2 d = (chart_field(c, hi, a) - chart_field(c, lo, a)) / (2 * h);
        CHECK((J.col(j) - d).norm() < 1e-8);
      }
    }
  }

  TEST_CASE("points at infinity and the manifold from v = inf") {
    const Params a{0.03, 0.02};
    const auto pts = infinity_points(a);
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
      CHECK(chart_field(p.chart, p.wz, a).norm() < 1e-14);
      CHECK(p.degenerate);
    }
    const auto m = infinity_unstable_manifold(Params{0.02, 0.006});
    CHECK(m.attractor == "p_mp");
    const auto eq = equilibria(Params{0.02, 0.006});
    CHECK(std::hypot(m.end.u - eq.p_mp.u, m.end.v - eq.p_mp.v) < 1e-4);
    const Vec2 d = to_disc(State{3.0, 4.0});
    CHECK(d.norm() == doctest::Approx(5.0 / std::sqrt(26.0)));
  }
}
