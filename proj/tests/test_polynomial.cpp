#include <doctest.h>

#include "gskit/polynomial.hpp"

#include <random>

using namespace gskit;

namespace {

IntPoly poly(std::vector<Rational> c) { return IntPoly(std::move(c), 'x'); }

// x - r
IntPoly linear(const Rational& r) { return poly({-r, 1}); }

Rational eval(const IntPoly& p, const Rational& x) {
  Rational acc = 0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i);
  return acc;
}

}  // namespace

TEST_SUITE("polynomial") {
  TEST_CASE("arithmetic and trimming") {
    const IntPoly a = poly({1, 2, 3});
    const IntPoly b = poly({0, -2, -3});
    CHECK((a + b) == poly({1}));
    CHECK((a - a).is_zero());
    CHECK((a * poly({0, 1})).degree() == 3);
    CHECK(pow(linear(1), 4).coeff(2) == 6);
  }

  TEST_CASE("division with remainder reconstructs the dividend") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-7, 7);
    for (int t = 0; t < 30; ++t) {
      std::vector<Rational> ca(6), cb(3);
      for (auto& x : ca) x = c(rng);
      for (auto& x : cb) x = c(rng);
      cb.back() = 1 + std::abs(c(rng));
      const IntPoly a = poly(ca), b = poly(cb);
      const auto [q, r] = divmod(a, b);
      CHECK(q * b + r == a);
      CHECK(r.degree() < b.degree());
    }
  }

  TEST_CASE("exact division refuses a non-divisor") {
    CHECK(exact_divide(linear(1) * linear(2), linear(2)) == linear(1));
    CHECK_THROWS(exact_divide(linear(1) * linear(2), linear(3)));
  }

  TEST_CASE("gcd and square-free part") {
    const IntPoly g = gcd(linear(1) * linear(2), linear(1) * linear(3));
    REQUIRE(g.degree() == 1);
    CHECK(eval(g, 1) == 0);
    const IntPoly sq = square_free_part(pow(linear(Rational(1, 2)), 3) * linear(-3));
    CHECK(sq.degree() == 2);
  }

  TEST_CASE("rational roots with multiplicities") {
    const IntPoly p = poly({5}) * pow(poly({-1, 2}), 2) * linear(-3) * pow(linear(1), 16);
    const auto roots = rational_roots(p);
    REQUIRE(roots.size() == 3);
    std::map<Rational, int> m(roots.begin(), roots.end());
    CHECK(m[Rational(1, 2)] == 2);
    CHECK(m[Rational(-3)] == 1);
    CHECK(m[Rational(1)] == 16);
    // irreducible quadratic: no rational roots
    CHECK(rational_roots(poly({-2, 0, 1})).empty());
  }

  TEST_CASE("resultant equals the product formula over the roots") {
    // Res(p, q) = lc(p)^deg q * prod q(r_i) for p with roots r_i.
    const std::vector<Rational> r{Rational(1, 2), -2, 3};
    IntPoly p = poly({4});
    for (const auto& x : r) p = p * linear(x);
    const IntPoly q = poly({1, -1, 0, 2});
    Rational want = 1;
    for (int i = 0; i < q.degree(); ++i) want *= p.leading();
    for (const auto& x : r) want *= eval(q, x);
    CHECK(resultant(p, q) == want);
    CHECK(resultant_poly(p, q).coeff(0) == want);
    // common root -> zero
    CHECK(resultant(p, linear(3) * poly({7, 1})) == 0);
    CHECK_THROWS_AS(resultant(p, IntPoly(std::vector<Rational>{}, 'x')), ZeroPolynomial);
  }

  TEST_CASE("bivariate resultant eliminates the outer variable") {
    // p = x - y, q = x^2 + y - 6 (outer x): Res_x = y^2 + y - 6 up to sign.
    const IntPoly y(std::vector<Rational>{0, 1}, 'y');
    const BiPoly p(std::vector<IntPoly>{-y, IntPoly(1, 'y')}, 'x');
    const BiPoly q(std::vector<IntPoly>{y - IntPoly(6, 'y'), IntPoly(0, 'y'), IntPoly(1, 'y')}, 'x');
    const IntPoly res = resultant(p, q);
    const IntPoly want(std::vector<Rational>{-6, 1, 1}, 'y');
    CHECK((res == want || res == -want));
  }

  TEST_CASE("coefficient dump") {
    CHECK(coefficient_csv(poly({1, 0, Rational(-1, 2)})) == "1,0,-1/2");
  }
}
