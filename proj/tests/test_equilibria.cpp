#include <doctest.h>

#include "gskit/equilibria.hpp"
#include "gskit/errors.hpp"

#include <random>

using namespace gskit;

namespace {

// Independent count of the nontrivial equilibria: with u = 1 - gamma v the
// second equation becomes (1 - gamma v) v = F + k; count sign changes on a
// fine grid of v in (0, 1/gamma).
int count_by_scan(const Params& a) {
  const double g = a.gamma();
  auto h = [&](double v) { return (1.0 - g * v) * v - (a.F + a.k); };
  int n = 0;
  const int N = 20000;
  double prev = h(0.0);
  for (int i = 1; i <= N; ++i) {
    const double v = (1.0 / g) * i / N;
    const double cur = h(v);
    if ((prev < 0.0) != (cur < 0.0)) ++n;
    prev = cur;
  }
  return n;
}

}  // namespace

TEST_SUITE("equilibria") {
  TEST_CASE("closed forms are equilibria and satisfy the identities") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> P(1e-4, 0.08);
    int pairs = 0;
    for (int i = 0; i < 2000; ++i) {
      const Params a{P(rng), P(rng)};
      const auto eq = equilibria(a);
      const int expect = count_by_scan(a);
      CHECK((eq.kind == NontrivialKind::Pair ? 2 : 0) == expect);
      for (const auto& p : eq.all()) CHECK(vector_field(p, a).norm() < 1e-14);
      if (eq.kind == NontrivialKind::Pair) {
        ++pairs;
        CHECK(eq.p_mp.u < eq.p_pm.u);
        CHECK(eq.p_mp.v > eq.p_pm.v);
        CHECK(classify(eq.p_pm, a).cls == StabilityClass::Saddle);
      }
    }
    CHECK(pairs > 100);
  }

  TEST_CASE("exact equilibria at the organizing centres") {
    const auto bt = equilibria_exact({Rational(1, 16), Rational(1, 16)});
    REQUIRE(bt);
    CHECK(bt->kind == NontrivialKind::Degenerate);
    CHECK(bt->p_mp.u == Rational(1, 2));
    CHECK(bt->p_mp.v == Rational(1, 4));
    const auto inv = linear_invariants(bt->p_mp, BasicParams<Rational>{Rational(1, 16), Rational(1, 16)});
    CHECK(inv.trace == 0);
    CHECK(inv.det == 0);

    const BasicParams<Rational> gh{Rational(9, 256), Rational(3, 256)};
    const auto e = equilibria_exact(gh);
    REQUIRE(e);
    CHECK(e->p_mp.u == Rational(1, 4));
    CHECK(e->p_mp.v == Rational(3, 16));
    CHECK(e->p_pm.u == Rational(3, 4));
    CHECK(e->p_pm.v == Rational(1, 16));
    CHECK(linear_invariants(e->p_mp, gh).trace == 0);
    CHECK(linear_invariants(e->p_pm, gh).trace == Rational(1, 32));

    // sqrt(Delta) irrational -> no exact answer
    CHECK_FALSE(equilibria_exact({Rational(1, 20), Rational(1, 20)}));
  }

  TEST_CASE("saddle-node branches: Delta vanishes and the two points merge") {
    for (int i = 1; i <= 100; ++i) {
      const double k = 0.0625 * i / 100.0;
      const auto sn = saddle_node_F(k);
      CHECK(sn.lower <= sn.upper);
      for (const double F : {sn.lower, sn.upper}) {
        const double r = 4.0 * (F + k) * (F + k) - F;
        CHECK(std::abs(r) <= 1e-15 * F + 1e-300);
      }
      // just inside: two points; just outside: none
      const double mid = 0.5 * (sn.lower + sn.upper);
      if (sn.upper - sn.lower > 1e-9) CHECK(equilibria(Params{k, mid}).kind == NontrivialKind::Pair);
      CHECK(equilibria(Params{k, sn.upper * 1.01}).kind == NontrivialKind::None);
    }
    CHECK_THROWS_AS(saddle_node_F(0.07), DomainError);
  }

  TEST_CASE("Hopf and neutral-saddle curves zero the traces") {
    for (int i = 1; i < 100; ++i) {
      const double k = 0.0625 * i / 100.0;
      const double Fh = hopf_F(k), Fn = neutral_saddle_F(k);
      const auto eh = equilibria(Params{k, Fh});
      REQUIRE(eh.kind == NontrivialKind::Pair);
      CHECK(std::abs(jacobian_trace(eh.p_mp, Params{k, Fh})) < 1e-13);
      CHECK(jacobian_det(eh.p_mp, Params{k, Fh}) > 0.0);
      const auto en = equilibria(Params{k, Fn});
      if (en.kind == NontrivialKind::Pair) CHECK(std::abs(jacobian_trace(en.p_pm, Params{k, Fn})) < 1e-12);
      CHECK(discriminants(Params{k, Fh}).Delta > 0.0);
    }
    CHECK(hopf_F(1.0 / 16.0) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(hopf_F(9.0 / 256.0) == doctest::Approx(3.0 / 256.0).epsilon(1e-14));
    // near BT the Hopf F approaches 1/16 (tangency with the fold)
    CHECK(std::abs(hopf_F(0.0625 - 1e-8) - 0.0625) < 1e-3);
  }

  TEST_CASE("discriminant curve of p_mp") {
    for (const double k : {0.01, 0.03, 0.05}) {
      for (const double F : disc_curve_F(k)) CHECK(std::abs(disc_at_p_mp(Params{k, F})) < 1e-12);
    }
  }

  TEST_CASE("classification table") {
    CHECK(classify_linear(-1.0, 2.0).cls == StabilityClass::StableSpiral);
    CHECK(classify_linear(-3.0, 2.0).cls == StabilityClass::StableNode);
    CHECK(classify_linear(3.0, 2.0).cls == StabilityClass::UnstableNode);
    CHECK(classify_linear(1.0, 2.0).cls == StabilityClass::UnstableSpiral);
    CHECK(classify_linear(1.0, -2.0).cls == StabilityClass::Saddle);
    CHECK(classify_linear(0.0, 2.0).kind == NonhyperbolicKind::HopfCandidate);
    CHECK(classify_linear(0.0, 0.0).kind == NonhyperbolicKind::DoubleZero);
    CHECK(classify_linear(1.0, 0.0).kind == NonhyperbolicKind::ZeroEigenvalue);
    CHECK_THROWS_AS(classify(State{0.5, 0.5}, Params{0.05, 0.05}), NotAnEquilibrium);
  }

  TEST_CASE("trivial point eigenvalues are exact") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> P(1e-4, 0.1);
    for (int i = 0; i < 200; ++i) {
      const Params a{P(rng), P(rng)};
      const auto r = classify(State{1.0, 0.0}, a);
      CHECK(r.lambda1.real() == -a.F);
      CHECK(r.lambda2.real() == -(a.F + a.k));
      CHECK(r.is_stable());
    }
  }
}
