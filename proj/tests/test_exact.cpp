#include <doctest.h>

#include "gskit/errors.hpp"
#include "gskit/exact.hpp"

#include <random>

using namespace gskit;

namespace {

// Cofactor expansion: slow, obviously correct.
Rational cofactor_det(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Rational out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Rational>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    const Rational term = m[0][j] * cofactor_det(minor);
    out += (j % 2 == 0) ? term : Rational(-term);
  }
  return out;
}

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("fractions and integers parse exactly, decimals do not") {
    const auto q = parse_number("9/256");
    REQUIRE(q.exact);
    CHECK(*q.exact == Rational(9, 256));
    CHECK(q.value == doctest::Approx(9.0 / 256.0).epsilon(1e-16));

    const auto n = parse_number("-3");
    REQUIRE(n.exact);
    CHECK(*n.exact == -3);

    const auto d = parse_number("0.0625");
    CHECK_FALSE(d.exact);
    CHECK(d.value == 0.0625);

    CHECK(*parse_number(" 6/8 ").exact == Rational(3, 4));
  }

  TEST_CASE("junk input is a config error") {
    CHECK_THROWS_AS(parse_number("abc"), ConfigError);
    CHECK_THROWS_AS(parse_number("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_number("1/2/3"), ConfigError);
    CHECK_THROWS_AS(parse_number(""), ConfigError);
  }

  TEST_CASE("exact square roots") {
    CHECK(*exact_sqrt(Rational(9, 16)) == Rational(3, 4));
    CHECK(*exact_sqrt(Rational(0)) == 0);
    CHECK_FALSE(exact_sqrt(Rational(2)));
    CHECK_FALSE(exact_sqrt(Rational(1, 8)));
    CHECK_FALSE(exact_sqrt(Rational(-4)));
  }

  TEST_CASE("printing and sign") {
    CHECK(to_string(Rational(-1, 512)) == "-1/512");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK(sign(Rational(-1, 3)) == -1);
    CHECK(sign(Rational(0)) == 0);
    CHECK(to_double(Rational(3, 256)) == 3.0 / 256.0);
  }

  TEST_CASE("fraction-free determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    for (int n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        for (auto& row : m)
          for (auto& x : row) x = Rational(num(rng), den(rng));
        CHECK(bareiss_determinant(m) == cofactor_det(m));
      }
    }
    // a zero pivot forces a row swap
    const std::vector<std::vector<Rational>> p{{0, 1}, {1, 0}};
    CHECK(bareiss_determinant(p) == -1);
  }
}
