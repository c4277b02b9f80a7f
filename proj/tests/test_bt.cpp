#include <doctest.h>

#include "gskit/bt.hpp"
#include "gskit/equilibria.hpp"

#include <Eigen/Dense>

using namespace gskit;

namespace {

// Floating-point oracle: Jordan chain of a finite-difference Jacobian at the
// double point, second derivatives by finite differences of the field.
struct NumericBT {
  double a20, b20, b11;
};

NumericBT numeric_coefficients() {
  const State p{0.5, 0.25};
  const Params a{0.0625, 0.0625};
  const double h = 1e-4;
  const auto f = [&](const Vec2& x) { return vector_field(to_state(x), a); };
  Mat2 A;
  for (int j = 0; j < 2; ++j) {
    Vec2 e = Vec2::Zero();
    e(j) = h;
    A.col(j) = (f(to_vec(p) + e) - f(to_vec(p) - e)) / (2 * h);
  }
  // v0 spans ker A, v1 solves A v1 = v0 (least squares; A is singular).
  const Vec2 v0(-A(0, 1), A(0, 0));
  const Vec2 v1 = A.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(v0);
  // Dual basis: rows of inverse of [v0 v1].
  Mat2 V;
  V << v0, v1;
  const Mat2 W = V.inverse();  // W.row(0) = w0, W.row(1) = w1
  const auto B = [&](const Vec2& x, const Vec2& y) {
    const double g = 1e-3;
    return (f(to_vec(p) + g * x + g * y) - f(to_vec(p) + g * x - g * y) - f(to_vec(p) - g * x + g * y) +
            f(to_vec(p) - g * x - g * y)) /
           (4 * g * g);
  };
  const Vec2 b00 = B(v0, v0), b01 = B(v0, v1);
  return {W.row(0).dot(b00), W.row(1).dot(b00), W.row(1).dot(b01)};
}

}  // namespace

TEST_SUITE("bt") {
  TEST_CASE("exact report at the double point") {
    const auto r = bt::bt_nondegeneracy();
    CHECK(r.k == Rational(1, 16));
    CHECK(r.F == Rational(1, 16));
    CHECK(r.u == Rational(1, 2));
    CHECK(r.v == Rational(1, 4));
    CHECK(r.equilibrium_ok);
    CHECK(r.frame_ok);
    CHECK(r.coefficients.a20 == Rational(-1, 2));
    CHECK(r.coefficients.b11 == 0);
    CHECK(r.transversality_det == Rational(-1, 512));
    CHECK(r.nondegenerate());
  }

  TEST_CASE("projected coefficients agree with a floating finite-difference oracle") {
    const auto r = bt::bt_nondegeneracy();
    const auto n = numeric_coefficients();
    // The oracle uses its own basis; s and the products below are invariant.
    const double a20 = to_double(r.coefficients.a20), b20 = to_double(r.coefficients.b20);
    const double b11 = to_double(r.coefficients.b11);
    // The oracle picks its own Jordan basis; only s is basis-free.
    const int s_num = (n.b20 * (n.a20 + n.b11)) > 0 ? 1 : -1;
    CHECK(s_num == r.s);
    // In the reference basis the finite-difference projections reproduce the exact values.
    const bt::Basis<double> ref = bt::jordan_basis<double>();
    const Vec2 v0(ref.v0[0], ref.v0[1]), v1(ref.v1[0], ref.v1[1]);
    const Vec2 w0(ref.w0[0], ref.w0[1]), w1(ref.w1[0], ref.w1[1]);
    const Params a{0.0625, 0.0625};
    const Vec2 p(0.5, 0.25);
    const double g = 1e-3;
    const auto f = [&](const Vec2& x) { return vector_field(to_state(x), a); };
    const auto B = [&](const Vec2& x, const Vec2& y) {
      return Vec2((f(p + g * x + g * y) - f(p + g * x - g * y) - f(p - g * x + g * y) + f(p - g * x - g * y)) /
                  (4 * g * g));
    };
    CHECK(w0.dot(B(v0, v0)) == doctest::Approx(a20).epsilon(1e-8));
    CHECK(w1.dot(B(v0, v0)) == doctest::Approx(b20).epsilon(1e-8));
    CHECK(std::abs(w1.dot(B(v0, v1)) - b11) < 1e-8);
  }

  TEST_CASE("the sign s does not depend on the Jordan basis") {
    const bt::Pair<Rational> zero{0, 0};
    for (const Rational& c : {Rational(1), Rational(-3), Rational(1, 7)}) {
      for (const Rational& d : {Rational(0), Rational(5), Rational(-2, 3)}) {
        const auto basis = bt::jordan_basis<Rational>(c, d);
        for (const auto& x : bt::frame_residuals(basis)) CHECK(x == 0);
        const auto co = bt::projected_coefficients(zero, basis);
        CHECK(bt::normal_form_sign(co) == bt::bt_nondegeneracy().s);
      }
    }
  }

  TEST_CASE("closed-form coefficients match projection off the centre") {
    for (const auto& al : {bt::Pair<Rational>{Rational(1, 100), Rational(-1, 50)},
                           bt::Pair<Rational>{Rational(-1, 64), Rational(1, 32)}}) {
      const auto cf = bt::bt_coefficients(al);
      const auto pr = bt::projected_coefficients(al, bt::jordan_basis<Rational>());
      CHECK(cf.a20 == pr.a20);
      CHECK(cf.b20 == pr.b20);
      CHECK(cf.b11 == pr.b11);
    }
    CHECK_THROWS_AS(bt::bt_coefficients(bt::Pair<double>{-1.0, 0.0}), SingularParameter);
  }

  TEST_CASE("transversality matrix is the Jacobian of (f, tr, det)") {
    const State p{0.37, 0.21};
    const Params a{0.041, 0.027};
    const auto m = bt::transversality_matrix(p, a);
    const auto G = [](const Eigen::Vector4d& y) {
      const State q{y(0), y(1)};
      const Params b{y(2), y(3)};
      const auto f = field(q, b);
      return Eigen::Vector4d(f[0], f[1], jacobian_trace(q, b), jacobian_det(q, b));
    };
    const Eigen::Vector4d y(p.u, p.v, a.k, a.F);
    for (int j = 0; j < 4; ++j) {
      Eigen::Vector4d e = Eigen::Vector4d::Zero();
      e(j) = 1e-6;
      const Eigen::Vector4d col = (G(y + e) - G(y - e)) / 2e-6;
      for (int i = 0; i < 4; ++i) CHECK(m[i][j] == doctest::Approx(col(i)).epsilon(1e-7).scale(1e-9));
    }
  }

  TEST_CASE("negative control") {
    const auto r = bt::bt_nondegeneracy(true);
    CHECK_FALSE(r.equilibrium_ok);
    CHECK_FALSE(r.nondegenerate());
    CHECK(r.transversality_det != Rational(-1, 512));
  }
}
