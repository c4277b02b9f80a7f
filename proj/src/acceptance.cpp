#include "gskit/acceptance.hpp"

#include "gskit/bautin.hpp"
#include "gskit/bt.hpp"
#include "gskit/continuation.hpp"
#include "gskit/dynamics.hpp"
#include "gskit/equilibria.hpp"
#include "gskit/integrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace gskit {

namespace {

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string g(double x, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Collects sub-checks; the criterion passes iff all of them do.
struct Checks {
  bool ok = true;
  std::vector<std::string> failed, notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failed.push_back(what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
  std::string detail() const {
    std::ostringstream os;
    if (!failed.empty()) {
      os << "failed: ";
      for (std::size_t i = 0; i < failed.size(); ++i) os << (i ? "; " : "") << failed[i];
      if (!notes.empty()) os << " | ";
    }
    for (std::size_t i = 0; i < notes.size(); ++i) os << (i ? "; " : "") << notes[i];
    return os.str();
  }
};

// -- 1 ---------------------------------------------------------------------------

CriterionResult exact_checkpoints() {
  CriterionResult r{1, "exact checkpoints (rational arithmetic)", false, {}, 0.0};
  Checks c;
  const Rational q16(1, 16);
  const auto eq = equilibria_exact(BasicParams<Rational>{q16, q16});
  c.require(eq && eq->kind == NontrivialKind::Degenerate && eq->p_mp.u == Rational(1, 2) &&
                eq->p_mp.v == Rational(1, 4),
            "BT equilibrium is not the double point (1/2, 1/4)");

  const auto bt = bt::bt_nondegeneracy();
  c.require(bt.equilibrium_ok, "f, tr, det do not all vanish at BT");
  c.require(bt.frame_ok, "Jordan frame equations");
  const auto& co = bt.coefficients;
  c.require(co.a20 == Rational(-1, 2), "a20(0) = " + to_string(co.a20) + ", expected -1/2");
  c.require(co.b20 == Rational(1, 16), "b20(0) = " + to_string(co.b20) + ", expected 1/16");
  c.require(co.b11 == 0, "b11(0) = " + to_string(co.b11) + ", expected 0");
  c.require(bt.s == -1, "s = " + std::to_string(bt.s) + ", expected -1");
  c.require(bt.transversality_det == Rational(-1, 512),
            "transversality det = " + to_string(bt.transversality_det) + ", expected -1/512");

  const auto gh = bautin::gh_locate();
  c.require(gh.k == Rational(9, 256) && gh.F == Rational(3, 256), "GH located at (" + to_string(gh.k) + ", " +
                                                                     to_string(gh.F) + ")");
  c.require(gh.u == Rational(1, 4) && gh.v == Rational(3, 16), "p_mp at GH");
  const bool res_ok = gh.resultant == gh.expected_resultant || gh.resultant == -gh.expected_resultant;
  c.require(res_ok, "Res(Q1, Q2, x) differs from +-2 (y-1)^16 (2y-1)");
  c.note(std::string("Res(Q1,Q2,x) = ") + (gh.resultant == gh.expected_resultant ? "+" : "-") +
         "2(y-1)^16(2y-1) coefficient-exact");
  c.note("a20=" + to_string(co.a20) + " b20=" + to_string(co.b20) + " b11=" + to_string(co.b11) +
         " s=" + std::to_string(bt.s) + " det=" + to_string(bt.transversality_det));
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

// -- 2 ---------------------------------------------------------------------------

CriterionResult closed_forms(std::uint64_t seed) {
  CriterionResult r{2, "closed-form consistency", false, {}, 0.0};
  Checks c;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uk(1e-4, 0.0625);
  double sn_worst = 0.0, id_worst = 0.0;
  int pairs = 0;
  for (int i = 0; i < 1000; ++i) {
    const double k = uk(rng);
    const auto sn = saddle_node_F(k);
    for (const double F : {sn.upper, sn.lower}) {
      sn_worst = std::max(sn_worst, std::abs(4.0 * (F + k) * (F + k) - F) / std::max(F, 1e-300));
    }
    // A point strictly between the branches has Delta > 0.
    std::uniform_real_distribution<double> uF(sn.lower, sn.upper);
    const Params a{k, uF(rng)};
    const auto eq = equilibria(a);
    if (eq.kind != NontrivialKind::Pair) continue;
    ++pairs;
    const double gam = a.gamma();
    for (const auto& p : {eq.p_mp, eq.p_pm}) {
      id_worst = std::max(id_worst, std::abs(p.u + gam * p.v - 1.0));
      id_worst = std::max(id_worst, std::abs(p.u * p.v - (a.F + a.k)) / (a.F + a.k));
    }
  }
  c.require(sn_worst <= 1e-13, "4(F+k)^2 = F relative residual " + g(sn_worst));
  c.require(id_worst <= 1e-13, "u + gamma v = 1, uv = F + k residual " + g(id_worst));
  c.require(pairs == 1000, "only " + std::to_string(pairs) + " samples had two nontrivial equilibria");

  // Trivial point: Df(p0) = diag(-F, -(F+k)) in exact arithmetic, and the
  // floating classification returns exactly those numbers.
  std::uniform_int_distribution<int> num(1, 999);
  bool exact_ok = true, float_ok = true;
  for (int i = 0; i < 200; ++i) {
    const Rational k(num(rng), 1000), F(num(rng), 1000);
    const auto J = jacobian_entries(BasicState<Rational>{1, 0}, BasicParams<Rational>{k, F});
    exact_ok = exact_ok && J[0][0] == -F && J[1][1] == -(F + k) && J[0][1] == 0 && J[1][0] == 0;
    const Params a{to_double(k), to_double(F)};
    const auto rep = classify(State{1.0, 0.0}, a);
    const double l1 = std::min(rep.lambda1.real(), rep.lambda2.real());
    const double l2 = std::max(rep.lambda1.real(), rep.lambda2.real());
    const double e1 = std::min(-a.F, -(a.F + a.k)), e2 = std::max(-a.F, -(a.F + a.k));
    float_ok = float_ok && l1 == e1 && l2 == e2 && rep.lambda1.imag() == 0.0 && rep.lambda2.imag() == 0.0;
  }
  c.require(exact_ok, "exact Df(p0) is not diag(-F, -(F+k))");
  c.require(float_ok, "classify(p0) eigenvalues differ from (-F, -(F+k))");
  c.note("fold residual " + g(sn_worst, 3) + ", identity residual " + g(id_worst, 3) + " over 1000 samples");
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

// -- 3 ---------------------------------------------------------------------------

// tr and det on the p_mp branch, parametrised by the equilibrium itself:
// F = u v^2 / (1 - u), k = u v - F (u < 1/2 on that branch). The equations
// are scaled by k and F (F + k), which do not vanish in the open quadrant;
// unscaled, Newton is drawn into the degenerate corner k = F = 0.
Eigen::Vector2d hopf_bt_residual(const Eigen::Vector2d& x) {
  const double u = x(0), v = x(1);
  const double F = u * v * v / (1.0 - u), k = u * v - F;
  const State p{u, v};
  const Params a{k, F};
  return {jacobian_trace(p, a) / k, jacobian_det(p, a) / (F * (F + k))};
}

CriterionResult hopf_newton() {
  CriterionResult r{3, "Newton on {tr = 0, det = 0} reaches BT", false, {}, 0.0};
  Checks c;
  const Params start{0.05, 0.05};
  const auto eq = equilibria(start);
  Eigen::Vector2d x(eq.p_mp.u, eq.p_mp.v);
  int it = 0;
  for (; it < 50; ++it) {
    Eigen::Matrix2d J;
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2d e = Eigen::Vector2d::Zero();
      e(j) = 1e-7;
      J.col(j) = (hopf_bt_residual(x + e) - hopf_bt_residual(x - e)) / 2e-7;
    }
    const Eigen::Vector2d d = J.partialPivLu().solve(hopf_bt_residual(x));
    x -= d;
    if (!(d.norm() >= 1e-15)) break;
  }
  const double F = x(0) * x(1) * x(1) / (1.0 - x(0)), k = x(0) * x(1) - F;
  const double err = std::max(std::abs(k - 0.0625), std::abs(F - 0.0625));
  c.require(err <= 1e-10, "Newton ended at (" + g(k, 12) + ", " + g(F, 12) + ")");
  const double h1 = std::abs(hopf_F(1.0 / 16.0) - 1.0 / 16.0);
  const double h2 = std::abs(hopf_F(9.0 / 256.0) - 3.0 / 256.0);
  c.require(h1 <= 1e-13, "hopf_F(1/16) off by " + g(h1));
  c.require(h2 <= 1e-13, "hopf_F(9/256) off by " + g(h2));
  c.note("converged to (" + g(k, 15) + ", " + g(F, 15) + "), p = (" + g(x(0), 15) + ", " + g(x(1), 15) + ") in " +
         std::to_string(it + 1) + " steps, |error| " + g(err, 3));
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

// -- 4 ---------------------------------------------------------------------------

double l1_on_curve(double k) { return bautin::l1_kuz(Params{k, hopf_F(k)}); }

CriterionResult lyapunov_signs() {
  CriterionResult r{4, "first and second Lyapunov coefficient signs", false, {}, 0.0};
  Checks c;
  for (const double k : {0.01, 0.02, 0.03}) c.require(l1_on_curve(k) < 0.0, "l1 >= 0 at k=" + g(k));
  for (const double k : {0.04, 0.05, 0.06}) c.require(l1_on_curve(k) > 0.0, "l1 <= 0 at k=" + g(k));
  // Count sign changes on a fine scan, then bisect the one found.
  int changes = 0;
  double lo = 0.0, hi = 0.0;
  double prev = l1_on_curve(0.002);
  for (int i = 1; i <= 600; ++i) {
    const double k = 0.002 + (0.0624 - 0.002) * i / 600.0;
    const double v = l1_on_curve(k);
    if ((v < 0.0) != (prev < 0.0)) {
      ++changes;
      lo = 0.002 + (0.0624 - 0.002) * (i - 1) / 600.0;
      hi = k;
    }
    prev = v;
  }
  c.require(changes == 1, std::to_string(changes) + " sign changes of l1 along the Hopf curve");
  if (changes >= 1) {
    double flo = l1_on_curve(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double fm = l1_on_curve(mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    const double k0 = 0.5 * (lo + hi);
    c.require(std::abs(k0 - 9.0 / 256.0) <= 1e-9, "zero of l1 at k=" + g(k0, 15));
    c.note("l1 zero at k=" + g(k0, 15) + " (9/256 = 0.03515625)");
  }
  const auto rep = bautin::verify_bautin();
  c.require(rep.l2 > 0.0, "l2(GH) = " + g(rep.l2));
  c.require(rep.param_map_det < 0.0, "det d(mu, l1)/d(k, F) at GH = " + g(rep.param_map_det) +
                                         " (h=1e-6), " + g(rep.param_map_det_fine) +
                                         " (h=1e-7): positive, expected negative");
  c.note("l2(GH)=" + g(rep.l2) + " (informative: 10616832 sqrt2 = " + g(10616832.0 * std::sqrt(2.0)) +
         "), |det| informative vs 73728 sqrt2 = " + g(73728.0 * std::sqrt(2.0)));
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

// -- 5 ---------------------------------------------------------------------------

const CurvePoint& nearest(const Polyline& line, double k, const std::function<bool(const CurvePoint&)>& keep) {
  const CurvePoint* best = nullptr;
  for (const auto& p : line.points) {
    if (!keep(p)) continue;
    if (!best || std::abs(p.params.k - k) < std::abs(best->params.k - k)) best = &p;
  }
  if (!best) throw SeedInvalid("no curve point on the requested branch");
  return *best;
}

CriterionResult continuation_vs_closed_form() {
  CriterionResult r{5, "continuation vs closed forms, BT and GH detection", false, {}, 0.0};
  Checks c;
  const auto t0 = clock_type::now();
  ContinuationSettings s;
  Polyline up = continue_curve(CurveKind::Hopf, hopf_seed(0.03), s);
  s.direction = -1;
  Polyline down = continue_curve(CurveKind::Hopf, hopf_seed(0.03), s);
  c.require(up.termination == "Bogdanov-Takens point", "Hopf run towards BT ended: " + up.termination);
  c.require(down.termination == "k -> 0 boundary", "Hopf run towards k = 0 ended: " + down.termination);

  Polyline hopf = down;
  std::reverse(hopf.points.begin(), hopf.points.end());
  hopf.points.insert(hopf.points.end(), up.points.begin() + 1, up.points.end());
  double worst_h = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double k = 0.002 + (0.0624 - 0.002) * i / 99.0;
    const auto p = refine_at_k(CurveKind::Hopf, nearest(hopf, k, [](const CurvePoint&) { return true; }), k, s);
    worst_h = std::max(worst_h, std::abs(p.params.F - hopf_F(k)));
  }
  c.require(worst_h <= 1e-8, "Hopf curve off its closed form by " + g(worst_h));

  std::vector<SpecialPoint> specials = up.specials;
  specials.insert(specials.end(), down.specials.begin(), down.specials.end());
  double bt_err = 1.0, gh_err = 1.0;
  for (const auto& sp : specials) {
    if (sp.kind == "BT") {
      bt_err = std::min(bt_err, std::hypot(sp.point.params.k - 1.0 / 16.0, sp.point.params.F - 1.0 / 16.0));
    }
    if (sp.kind == "GH") {
      gh_err = std::min(gh_err, std::hypot(sp.point.params.k - 9.0 / 256.0, sp.point.params.F - 3.0 / 256.0));
    }
  }
  c.require(bt_err <= 1e-8, "BT detected " + g(bt_err) + " away");
  c.require(gh_err <= 1e-8, "GH detected " + g(gh_err) + " away");

  // Fold: from the upper branch at k = 0.03 in both directions; the +k run
  // turns at BT and follows the lower branch to k = 0.
  ContinuationSettings fs;
  fs.h_max = 2e-3;  // the lower branch hugs F = 0; keep samples dense there
  Polyline fa = continue_curve(CurveKind::Fold, fold_seed(0.03, true), fs);
  fs.direction = -1;
  Polyline fb = continue_curve(CurveKind::Fold, fold_seed(0.03, true), fs);
  Polyline fold = fa;
  fold.points.insert(fold.points.end(), fb.points.begin(), fb.points.end());
  double worst_f = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double k = 0.002 + (0.0624 - 0.002) * i / 99.0;
    const auto sn = saddle_node_F(k);
    const double mid = (1.0 - 8.0 * k) / 8.0;
    for (const bool upper : {true, false}) {
      const auto keep = [&](const CurvePoint& p) {
        return upper ? p.params.F > (1.0 - 8.0 * p.params.k) / 8.0 : p.params.F < (1.0 - 8.0 * p.params.k) / 8.0;
      };
      const auto p = refine_at_k(CurveKind::Fold, nearest(fold, k, keep), k, fs);
      const double want = upper ? sn.upper : sn.lower;
      const bool branch_ok = upper ? p.params.F > mid : p.params.F < mid;
      worst_f = std::max(worst_f, branch_ok ? std::abs(p.params.F - want) : 1.0);
    }
  }
  c.require(worst_f <= 1e-8, "fold curve off its closed form by " + g(worst_f));
  const double secs = since(t0);
  c.require(secs < 60.0, "took " + g(secs, 3) + " s");
  c.note("max |F - hopf_F| " + g(worst_h, 3) + ", max |F - F_sn| " + g(worst_f, 3) + ", BT err " + g(bt_err, 3) +
         ", GH err " + g(gh_err, 3));
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

// -- 6, 7 ------------------------------------------------------------------------

// F on the computed Hopf and limit-point-of-cycles curves at abscissa k.
struct LocalCurves {
  double hopf = 0.0, lpc = 0.0, collision = 0.0;
  CurvePoint lpc_point;
};

LocalCurves curves_at(double k) {
  LocalCurves out;
  ContinuationSettings s;
  const auto h = refine_at_k(CurveKind::Hopf, hopf_seed(k), k, s);
  out.hopf = h.params.F;
  out.lpc_point = lpc_seed(k, &out.collision);
  out.lpc = out.lpc_point.params.F;
  return out;
}

CriterionResult two_cycles() {
  CriterionResult r{6, "two coexisting cycles", false, {}, 0.0};
  Checks c;
  const auto t0 = clock_type::now();
  const double k = 0.034;
  const auto lc = curves_at(k);
  const Params a{k, 0.5 * (lc.hopf + lc.lpc)};
  const auto cyc = limit_cycle_census(a);
  c.require(cyc.size() == 2, std::to_string(cyc.size()) + " cycles at (" + g(a.k) + ", " + g(a.F, 12) + ")");
  if (cyc.size() == 2) {
    c.require(cyc[0].nontrivial_multiplier > 0.0 && cyc[0].nontrivial_multiplier < 1.0,
              "inner multiplier " + g(cyc[0].nontrivial_multiplier));
    c.require(cyc[1].nontrivial_multiplier > 1.0, "outer multiplier " + g(cyc[1].nontrivial_multiplier));
    c.note("(k, F) = (" + g(a.k) + ", " + g(a.F, 12) + ") between H at " + g(lc.hopf, 12) + " and T at " +
           g(lc.lpc, 12) + "; multipliers " + g(cyc[0].nontrivial_multiplier, 8) + " (s=" + g(cyc[0].s, 4) +
           "), " + g(cyc[1].nontrivial_multiplier, 8) + " (s=" + g(cyc[1].s, 4) + ")");
  }
  const double secs = since(t0);
  c.require(secs < 60.0, "took " + g(secs, 3) + " s");
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

double line_angle(double a, double b) {
  double d = std::fmod(std::abs(a - b), M_PI);
  return std::min(d, M_PI - d);
}

CriterionResult lpc_tangency() {
  CriterionResult r{7, "limit-point-of-cycles curve tangent to Hopf at GH", false, {}, 0.0};
  Checks c;
  const auto lc = curves_at(0.034);
  ContinuationSettings s;
  s.h0 = 1e-4;
  s.h_max = 2e-3;
  const Polyline lpc = continue_curve(CurveKind::Lpc, lc.lpc_point, s);
  const auto& last = lpc.points.back();
  const auto& prev = lpc.points[lpc.points.size() - 2];
  const double gh_dist = std::hypot(last.params.k - 9.0 / 256.0, last.params.F - 3.0 / 256.0);
  c.require(gh_dist < 1e-4, "LPC run ended " + g(gh_dist) + " from GH (" + lpc.termination + ")");
  const double kg = 9.0 / 256.0, h = 1e-7;
  const double hopf_slope = (hopf_F(kg + h) - hopf_F(kg - h)) / (2.0 * h);
  const double lpc_dir = std::atan2(last.params.F - prev.params.F, last.params.k - prev.params.k);
  const double angle = line_angle(lpc_dir, std::atan(hopf_slope));
  c.require(angle < 1e-3, "angle between tangents " + g(angle) + " rad");

  // Census on both sides of T at two abscissae.
  bool census_ok = true;
  std::string counts;
  for (const double k : {0.034, 0.0345}) {
    const auto l = curves_at(k);
    const double d = 0.25 * (l.hopf - l.lpc);
    const auto inside = limit_cycle_census(Params{k, l.lpc + d});
    const auto outside = limit_cycle_census(Params{k, l.lpc - d});
    census_ok = census_ok && inside.size() == outside.size() + 2;
    counts += " k=" + g(k) + ": " + std::to_string(inside.size()) + " -> " + std::to_string(outside.size());
    // Collision of the census pair and the multiplier-one solution agree.
    c.require(std::abs(l.collision - l.lpc) <= 1e-6,
              "census collision and LPC differ by " + g(std::abs(l.collision - l.lpc)) + " at k=" + g(k));
  }
  c.require(census_ok, "census change across T:" + counts);
  c.note("LPC ends " + g(gh_dist, 3) + " from GH, tangent angle " + g(angle, 3) + " rad, census" + counts);
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

// -- 8 ---------------------------------------------------------------------------

CriterionResult homoclinic() {
  CriterionResult r{8, "homoclinic curve near BT", false, {}, 0.0};
  Checks c;
  const auto t0 = clock_type::now();
  std::vector<double> ks;
  for (int i = 0; i < 12; ++i) ks.push_back(0.058 + (0.0624 - 0.058) * i / 11.0);
  std::string why;
  HomoclinicSettings hs;
  const auto pts = homoclinic_curve(ks, hs, &why);
  c.require(pts.size() == ks.size(), "bracket lost: " + why);
  bool width_ok = true, order_ok = true, literal = true, rich_ok = true;
  std::vector<double> x, y, xl, yl;
  for (const auto& p : pts) {
    width_ok = width_ok && p.bracket_hi - p.bracket_lo <= 1e-8;
    rich_ok = rich_ok && p.richardson_diff < 1e-6;
    const auto sn = saddle_node_F(p.k);
    const double fh = hopf_F(p.k);
    // Top to bottom near BT: homoclinic, Hopf, lower fold (upper fold above all).
    order_ok = order_ok && sn.lower < fh && fh < p.F && p.F < sn.upper;
    literal = literal && sn.lower < p.F && p.F < fh;
    // Distance to the fold measured across the common tangent (the F
    // direction at BT): k_sn(F) - k, against the offset along it.
    x.push_back(std::abs(p.F - 1.0 / 16.0));
    y.push_back(std::abs(std::sqrt(p.F) / 2.0 - p.F - p.k));
    xl.push_back(1.0 / 16.0 - p.k);
    yl.push_back(std::abs(p.F - sn.lower));
  }
  c.require(width_ok, "bracket wider than 1e-8");
  c.require(rich_ok, "Richardson check of the launch offset");
  // The stated order puts the homoclinic curve between Hopf and the lower
  // fold; the computed curve sits above Hopf instead. Checked as stated.
  c.require(literal, std::string("homoclinic F not between Hopf F and lower fold F") +
                         (order_ok ? ": found lower fold < Hopf < homoclinic < upper fold" : ""));
  const auto fit = loglog_fit(x, y);
  const auto lit = loglog_fit(xl, yl);
  c.require(std::abs(fit.slope - 2.0) <= 0.3, "tangency exponent " + g(fit.slope, 4));
  const double secs = since(t0);
  c.require(secs < 300.0, "took " + g(secs, 3) + " s");
  c.note(std::to_string(pts.size()) + " points, order " +
         std::string(literal    ? "lower fold < homoclinic < Hopf"
                     : order_ok ? "lower fold < Hopf < homoclinic < upper fold"
                                : "irregular") +
         ", exponent " + g(fit.slope, 4) + " (|F_hom - F_sn_low| vs 1/16 - k: " + g(lit.slope, 3) + ")");
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

// -- 9 ---------------------------------------------------------------------------

CriterionResult integrator_quality(std::uint64_t seed) {
  CriterionResult r{9, "integrator order, fixed points, quadrant invariance", false, {}, 0.0};
  Checks c;
  const Params a{0.045, 0.02};
  const State x0{0.4, 0.3};
  const double T = 40.0;
  const State ref = flow_to(x0, a, T, IntegratorSettings{1e-14, 1e-16});
  std::vector<double> errs;
  for (const double h : {0.4, 0.2, 0.1}) {
    IntegratorSettings s{1e3, 1e3};  // every step accepted: fixed step h
    s.initial_step = h;
    s.max_step = h;
    const State x = flow_to(x0, a, T, s);
    errs.push_back(std::hypot(x.u - ref.u, x.v - ref.v));
  }
  const double o1 = std::log2(errs[0] / errs[1]), o2 = std::log2(errs[1] / errs[2]);
  c.require(std::min(o1, o2) >= 4.5, "observed order " + g(o1, 3) + ", " + g(o2, 3));

  IntegratorSettings is;
  double drift = 0.0;
  for (const Params& b : {Params{0.05, 0.03}, Params{0.03, 0.02}, Params{0.06, 0.05}}) {
    const auto eq = equilibria(b);
    for (const auto& p : eq.all()) {
      const auto tr = integrate(p, b, 100.0, is);
      for (const auto& q : tr.x) drift = std::max(drift, std::hypot(q.u - p.u, q.v - p.v));
    }
  }
  c.require(drift <= is.abs_tol, "equilibrium drift " + g(drift));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> up(1e-3, 0.1), us(0.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Params b{up(rng), up(rng)};
    State p{us(rng), us(rng)};
    if (i % 10 == 0) p.v = 0.0;  // on the boundary
    const auto tr = integrate(p, b, 200.0, is);
    for (const auto& q : tr.x) worst = std::min({worst, q.u, q.v});
  }
  c.require(worst >= -is.abs_tol, "trajectory left the quadrant by " + g(-worst));
  c.note("order " + g(o1, 3) + ", " + g(o2, 3) + "; equilibrium drift " + g(drift, 3) +
         "; min coordinate over 1000 trajectories " + g(worst, 3));
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

// -- 10 --------------------------------------------------------------------------

std::string edges_string(const std::set<Edge>& e) {
  std::string s;
  for (const auto& [a, b] : e) s += (s.empty() ? "" : " ") + to_string(a) + "-" + to_string(b);
  return s;
}

CriterionResult global_map(const AcceptanceOptions& opt, clock_type::time_point battery_start) {
  CriterionResult r{10, "global map adjacency", false, {}, 0.0};
  Checks c;
  const auto rs = map_region_settings();
  const auto m = region_map(opt.map_nk, opt.map_nF, 0.0, 0.07, 0.0, 0.07, rs, opt.threads);
  const auto coarse = adjacency(m);
  const auto fine = refined_adjacency(m, rs);
  const auto want = expected_adjacency();
  std::set<Edge> extra, missing;
  std::set_difference(fine.begin(), fine.end(), want.begin(), want.end(), std::inserter(extra, extra.end()));
  std::set_difference(want.begin(), want.end(), fine.begin(), fine.end(), std::inserter(missing, missing.end()));
  c.require(extra.empty(), "edges outside the signature table: " + edges_string(extra));
  c.require(missing.empty(), "expected edges not found: " + edges_string(missing));
  const double total = since(battery_start);
  c.require(total < 600.0, "battery took " + g(total, 4) + " s");
  std::string present;
  for (const auto reg : regions_present(m)) present += (present.empty() ? "" : ",") + to_string(reg);
  c.note(std::to_string(opt.map_nk) + "x" + std::to_string(opt.map_nF) + " cells, regions {" + present +
         "}, grid edges {" + edges_string(coarse) + "}, resolved edges {" + edges_string(fine) +
         "}, battery " + g(total, 4) + " s");
  r.pass = c.ok;
  r.detail = c.detail();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  const auto start = clock_type::now();
  const auto wanted = [&](int id) {
    return opt.only.empty() || std::find(opt.only.begin(), opt.only.end(), id) != opt.only.end();
  };
  std::vector<CriterionResult> out;
  const std::vector<std::function<CriterionResult()>> battery{
      exact_checkpoints,
      [&] { return closed_forms(opt.seed); },
      hopf_newton,
      lyapunov_signs,
      continuation_vs_closed_form,
      two_cycles,
      lpc_tangency,
      homoclinic,
      [&] { return integrator_quality(opt.seed); },
      [&] { return global_map(opt, start); },
  };
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!wanted(id)) continue;
    const auto t0 = clock_type::now();
    CriterionResult r;
    try {
      r = battery[i]();
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion " + std::to_string(id);
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = since(t0);
    if (opt.on_result) opt.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  char t[32];
  std::snprintf(t, sizeof t, "%.1f", r.seconds);
  os << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << "  [" << r.detail << "] ("
     << t << " s)";
  return os.str();
}

}  // namespace gskit
