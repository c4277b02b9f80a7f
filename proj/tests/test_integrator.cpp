#include <doctest.h>

#include "gskit/equilibria.hpp"
#include "gskit/integrator.hpp"

#include <cmath>

using namespace gskit;

namespace {

// Damped rotation with closed-form flow.
Vec2 spiral(const Vec2& x) { return {-0.1 * x(0) - x(1), x(0) - 0.1 * x(1)}; }

Vec2 spiral_exact(const Vec2& x0, double t) {
  const double e = std::exp(-0.1 * t), c = std::cos(t), s = std::sin(t);
  return {e * (c * x0(0) - s * x0(1)), e * (s * x0(0) + c * x0(1))};
}

IntegratorSettings fixed(double h) {
  IntegratorSettings s{1e3, 1e3};
  s.initial_step = h;
  s.max_step = h;
  s.quadrant = false;
  return s;
}

}  // namespace

TEST_SUITE("integrator") {
  TEST_CASE("fifth order on a linear flow") {
    const Vec2 x0(1.0, 0.5);
    std::vector<double> err;
    for (const double h : {0.2, 0.1, 0.05}) {
      Dopri5<2> d(spiral, fixed(h));
      err.push_back((d.flow(0.0, x0, 10.0) - spiral_exact(x0, 10.0)).norm());
    }
    CHECK(std::log2(err[0] / err[1]) > 4.7);
    CHECK(std::log2(err[1] / err[2]) > 4.7);
  }

  TEST_CASE("adaptive run meets the tolerance and runs backwards") {
    IntegratorSettings s{1e-11, 1e-13};
    s.quadrant = false;
    Dopri5<2> d(spiral, s);
    const Vec2 x0(1.0, 0.0);
    CHECK((d.flow(0.0, x0, 20.0) - spiral_exact(x0, 20.0)).norm() < 1e-9);
    CHECK((d.flow(0.0, x0, -5.0) - spiral_exact(x0, -5.0)).norm() < 1e-9);
  }

  TEST_CASE("dense output and event location") {
    IntegratorSettings s{1e-11, 1e-13};
    s.quadrant = false;
    Dopri5<2> d(spiral, s);
    const Vec2 x0(1.0, 0.0);
    double worst = 0.0;
    d.run(0.0, x0, 6.0, [&](const DenseStep<2>& st) {
      const double tm = st.t0 + 0.37 * st.h;
      worst = std::max(worst, (st.at(tm) - spiral_exact(x0, tm)).norm());
      return true;
    });
    CHECK(worst < 1e-8);
    // first upward crossing of x = 0 ... the rotation reaches the negative
    // x axis side at t = pi/2 moving downward in x
    const auto hit = find_event(d, 0.0, x0, 10.0, [](const Vec2& x) { return x(0); }, -1, 0.0,
                                [](const Vec2&) { return true; });
    REQUIRE(hit);
    CHECK(hit->t == doctest::Approx(M_PI / 2).epsilon(1e-10));
    const auto up = find_event(d, 0.0, x0, 10.0, [](const Vec2& x) { return x(0); }, +1, 0.0,
                               [](const Vec2&) { return true; });
    REQUIRE(up);
    CHECK(up->t == doctest::Approx(3 * M_PI / 2).epsilon(1e-10));
  }

  TEST_CASE("bad tolerances are rejected") {
    CHECK_THROWS_AS(Dopri5<2>(spiral, IntegratorSettings{0.0, 1e-12}), DomainError);
  }

  TEST_CASE("axis v = 0 is invariant and equilibria stay put") {
    const Params a{0.04, 0.03};
    const auto tr = integrate(State{0.3, 0.0}, a, 50.0);
    for (const auto& q : tr.x) CHECK(q.v == 0.0);
    // on the axis u' = F (1 - u): u(t) = 1 - 0.7 exp(-F t)
    CHECK(tr.x.back().u == doctest::Approx(1.0 - 0.7 * std::exp(-a.F * 50.0)).epsilon(1e-9));
    for (const auto& p : equilibria(a).all()) {
      const State q = flow_to(p, a, 100.0);
      CHECK(std::hypot(q.u - p.u, q.v - p.v) < 1e-12);
    }
  }

  TEST_CASE("uniform resampling") {
    const auto tr = integrate(State{0.5, 0.2}, Params{0.05, 0.03}, 10.0, {}, 0.5);
    REQUIRE(tr.t.size() == 21);
    CHECK(tr.t[4] == doctest::Approx(2.0));
    const State q = flow_to(State{0.5, 0.2}, Params{0.05, 0.03}, 2.0);
    CHECK(tr.x[4].u == doctest::Approx(q.u).epsilon(1e-8));
  }

  TEST_CASE("variational equation matches finite differences of the flow") {
    const Params a{0.05, 0.03};
    const State p{0.5, 0.2};
    IntegratorSettings s{1e-12, 1e-14};
    Dopri5<6> d([&](const Vec6& y) { return variational_field(y, a); }, s);
    const Mat2 M = monodromy_of(d.flow(0.0, variational_start(p), 7.0));
    const double h = 1e-6;
    for (int j = 0; j < 2; ++j) {
      State lo = p, hi = p;
      (j == 0 ? lo.u : lo.v) -= h;
      (j == 0 ? hi.u : hi.v) += h;
      const State fl = flow_to(lo, a, 7.0, s), fh = flow_to(hi, a, 7.0, s);
      CHECK(M(0, j) == doctest::Approx((fh.u - fl.u) / (2 * h)).epsilon(1e-6));
      CHECK(M(1, j) == doctest::Approx((fh.v - fl.v) / (2 * h)).epsilon(1e-6));
    }
    // Liouville: det M = exp(integral of the trace)
    CHECK(std::abs(M.determinant()) > 0.0);
  }
}
