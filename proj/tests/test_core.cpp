#include <doctest.h>

#include "gskit/core.hpp"
#include "gskit/errors.hpp"
#include "gskit/exact.hpp"

#include <random>

using namespace gskit;

namespace {

Vec2 hand_field(double u, double v, double k, double F) {
  return {-u * v * v + F * (1.0 - u), u * v * v - (F + k) * v};
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("field matches the written kinetics") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0.0, 1.5), P(1e-3, 0.1);
    for (int i = 0; i < 100; ++i) {
      const State p{U(rng), U(rng)};
      const Params a{P(rng), P(rng)};
      CHECK((vector_field(p, a) - hand_field(p.u, p.v, a.k, a.F)).norm() < 1e-15);
    }
  }

  TEST_CASE("Jacobians agree with central differences") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(0.0, 1.0), P(1e-3, 0.1);
    const double h = 1e-6;
    for (int i = 0; i < 50; ++i) {
      const State p{U(rng), U(rng)};
      const Params a{P(rng), P(rng)};
      Mat2 fd, fdp;
      fd.col(0) = (hand_field(p.u + h, p.v, a.k, a.F) - hand_field(p.u - h, p.v, a.k, a.F)) / (2 * h);
      fd.col(1) = (hand_field(p.u, p.v + h, a.k, a.F) - hand_field(p.u, p.v - h, a.k, a.F)) / (2 * h);
      fdp.col(0) = (hand_field(p.u, p.v, a.k + h, a.F) - hand_field(p.u, p.v, a.k - h, a.F)) / (2 * h);
      fdp.col(1) = (hand_field(p.u, p.v, a.k, a.F + h) - hand_field(p.u, p.v, a.k, a.F - h)) / (2 * h);
      CHECK((jacobian(p, a) - fd).norm() < 1e-9);
      CHECK((parameter_jacobian(p, a) - fdp).norm() < 1e-9);
      const Mat2 J = jacobian(p, a);
      CHECK(jacobian_trace(p, a) == doctest::Approx(J.trace()).epsilon(1e-14));
      CHECK(jacobian_det(p, a) == doctest::Approx(J.determinant()).epsilon(1e-12));
    }
  }

  TEST_CASE("jet: Hessians and the constant third derivative") {
    const State p{0.31, 0.42};
    const Params a{0.04, 0.02};
    const Jet j = jet(p, a);
    const double h = 1e-5;
    for (int i = 0; i < 2; ++i) {
      for (int c = 0; c < 2; ++c) {
        State pp = p, pm = p;
        (c == 0 ? pp.u : pp.v) += h;
        (c == 0 ? pm.u : pm.v) -= h;
        const Vec2 col = (jacobian(pp, a).row(i).transpose() - jacobian(pm, a).row(i).transpose()) / (2 * h);
        CHECK((j.hessian[i].col(c) - col).norm() < 1e-8);
      }
    }
    // B(x, y) = second directional derivative; C is its derivative.
    const Vec2 x(0.3, -0.7), y(1.1, 0.2), z(-0.4, 0.9);
    const auto second = [&](const State& q) { return jet(q, a).B(x, y); };
    const State qp{p.u + h * z(0), p.v + h * z(1)}, qm{p.u - h * z(0), p.v - h * z(1)};
    const Vec2 fd = (second(qp) - second(qm)) / (2 * h);
    CHECK((Jet::C(x, y, z) - fd).norm() < 1e-8);
  }

  TEST_CASE("the exact and floating field agree at rational points") {
    const BasicState<Rational> p{Rational(1, 4), Rational(3, 16)};
    const BasicParams<Rational> a{Rational(9, 256), Rational(3, 256)};
    const auto f = field(p, a);
    CHECK(f[0] == 0);
    CHECK(f[1] == 0);
    CHECK(jacobian_trace(p, a) == 0);
    const auto fd = vector_field(State{0.25, 0.1875}, Params{9.0 / 256, 3.0 / 256});
    CHECK(fd.norm() < 1e-17);
  }

  TEST_CASE("parameter guard") {
    CHECK_THROWS_AS(require_positive(Params{0.0, 0.1}), DomainError);
    CHECK_THROWS_AS(require_positive(Params{0.1, -1.0}), DomainError);
    CHECK_NOTHROW(require_positive(Params{0.1, 0.1}));
    CHECK(in_closed_quadrant(State{0.0, 0.0}));
    CHECK_FALSE(in_closed_quadrant(State{-1e-9, 0.5}));
    CHECK(in_closed_quadrant(State{-1e-9, 0.5}, 1e-8));
  }
}
