#include <doctest.h>

#include "gskit/normal_form.hpp"

#include <random>

using namespace gskit;

TEST_SUITE("normal_form") {
  TEST_CASE("truncated algebra") {
    const ZPoly z = ZPoly::z(5), zb = ZPoly::zbar(5);
    const ZPoly p = z * z * zb;
    CHECK(p.coeff(2, 1) == cplx(1, 0));
    CHECK(p.terms().size() == 1);
    // products above the truncation order vanish
    const ZPoly big = p * p;
    CHECK(big.terms().empty());
    CHECK((cplx(0, 2) * z).conj().coeff(0, 1) == cplx(0, -2));
    CHECK(p.dz().coeff(1, 1) == cplx(2, 0));
    CHECK(p.dzbar().coeff(2, 0) == cplx(1, 0));
    const ZPoly q = z + z * z + zb * zb * zb;
    CHECK(q.homogeneous(2).coeff(2, 0) == cplx(1, 0));
    CHECK(q.homogeneous(2).terms().size() == 1);
    // z^2 with z -> z + zbar gives z^2 + 2 z zbar + zbar^2
    const ZPoly c = (z * z).compose(z + zb, (z + zb).conj());
    CHECK(c.coeff(1, 1) == cplx(2, 0));
    CHECK(c.coeff(0, 2) == cplx(1, 0));
  }

  TEST_CASE("resonant cubic term passes through unchanged") {
    ZPoly g(5);
    g.add(2, 1, cplx(-0.7, 0.3));
    const auto nf = hopf_normal_form(g, 1.3);
    CHECK(nf.c1.real() == doctest::Approx(-0.7));
    CHECK(nf.c1.imag() == doctest::Approx(0.3));
    CHECK(nf.l1() == doctest::Approx(-0.7 / 1.3));
  }

  TEST_CASE("first coefficient matches the classical quadratic formula") {
    // z' = i w z + g20/2 z^2 + g11 z zb + g02/2 zb^2 + g21/2 z^2 zb:
    //   c1 = i/(2w) (g20 g11 - 2|g11|^2 - |g02|^2/3) + g21/2
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const cplx g20(u(rng), u(rng)), g11(u(rng), u(rng)), g02(u(rng), u(rng)), g21(u(rng), u(rng));
      const double w = 0.5 + std::abs(u(rng));
      ZPoly g(5);
      g.add(2, 0, g20 / 2.0);
      g.add(1, 1, g11);
      g.add(0, 2, g02 / 2.0);
      g.add(2, 1, g21 / 2.0);
      const cplx want = cplx(0, 1) / (2 * w) * (g20 * g11 - 2 * std::norm(g11) - std::norm(g02) / 3.0) + g21 / 2.0;
      const auto nf = hopf_normal_form(g, w);
      CHECK(std::abs(nf.c1 - want) < 1e-12);
    }
  }

  TEST_CASE("quintic resonant term is the second coefficient when nothing lower is present") {
    ZPoly g(5);
    g.add(3, 2, cplx(0.25, -1.0));
    const auto nf = hopf_normal_form(g, 2.0);
    CHECK(std::abs(nf.c1) < 1e-15);
    CHECK(nf.l2() == doctest::Approx(0.125));
  }
}
