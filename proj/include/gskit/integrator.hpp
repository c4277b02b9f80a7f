#pragma once

// Dormand-Prince 5(4) with the 4th-order continuous extension, event
// location on the dense output, and the Gray-Scott flow helpers built on it
// (trajectories, endpoint maps, variational equations).

#include "gskit/core.hpp"
#include "gskit/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace gskit {

struct IntegratorSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  ///< 0 picks a step from the local scale
  long max_steps = 5'000'000;
  /// Reject steps that leave the closed first quadrant by more than abs_tol
  /// (applies to the first two components).
  bool quadrant = true;
};

/// One accepted step with its interpolant.
template <int N>
struct DenseStep {
  using Vec = Eigen::Matrix<double, N, 1>;
  double t0 = 0.0, h = 0.0;
  std::array<Vec, 5> r;

  double t1() const { return t0 + h; }
  Vec at(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    return r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
  }
};

template <int N>
class Dopri5 {
 public:
  using Vec = Eigen::Matrix<double, N, 1>;
  using Rhs = std::function<Vec(const Vec&)>;

  Dopri5(Rhs f, IntegratorSettings s) : f_(std::move(f)), s_(s) {
    if (!(s_.rel_tol > 0.0) || !(s_.abs_tol > 0.0)) throw DomainError("integrator tolerances must be positive");
  }

  /// Integrates from (t0, x0) towards t_end (either direction). After every
  /// accepted step `on_step(step)` is called; returning false stops the run.
  /// Returns the state at the final time reached, written to *t_reached.
  template <class OnStep>
  Vec run(double t0, Vec x0, double t_end, OnStep&& on_step, double* t_reached = nullptr) {
    const double dir = t_end >= t0 ? 1.0 : -1.0;
    double t = t0;
    Vec x = x0;
    Vec k1 = f_(x);
    double h = s_.initial_step > 0.0 ? s_.initial_step : initial_step(x, k1);
    h = std::min({h, s_.max_step, std::abs(t_end - t0)});
    double err_prev = 1e-4;
    long steps = 0;
    while (dir * (t_end - t) > 0.0) {
      if (++steps > s_.max_steps) {
        std::ostringstream os;
        os << "step budget exhausted at t=" << t;
        throw StepUnderflow(os.str());
      }
      const double room = std::abs(t_end - t);
      bool last = false;
      // Absorb a remainder that would be pure roundoff (fixed steps summing to t_end).
      if (h >= room || room - h <= 1e-12 * std::max(1.0, std::abs(t_end))) {
        h = room;
        last = true;
      }
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        std::ostringstream os;
        os << "step size underflow at t=" << t;
        throw StepUnderflow(os.str());
      }
      const double hs = dir * h;
      const Vec k2 = f_(x + hs * (a21 * k1));
      const Vec k3 = f_(x + hs * (a31 * k1 + a32 * k2));
      const Vec k4 = f_(x + hs * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vec k5 = f_(x + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vec k6 = f_(x + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Vec x1 = x + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      const Vec k7 = f_(x1);
      const Vec e = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double err = 0.0;
      for (int i = 0; i < x.size(); ++i) {
        const double sc = s_.abs_tol + s_.rel_tol * std::max(std::abs(x(i)), std::abs(x1(i)));
        err += (e(i) / sc) * (e(i) / sc);
      }
      err = std::sqrt(err / static_cast<double>(x.size()));
      const bool finite = x1.allFinite() && std::isfinite(err);
      const bool inside = !s_.quadrant || (x1(0) >= -s_.abs_tol && x1(1) >= -s_.abs_tol);

      if (finite && err <= 1.0 && inside) {
        DenseStep<N> step;
        step.t0 = t;
        step.h = hs;
        step.r[0] = x;
        step.r[1] = x1 - x;
        step.r[2] = hs * k1 - step.r[1];
        step.r[3] = step.r[1] - hs * k7 - step.r[2];
        step.r[4] = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        t = last ? t_end : t + hs;
        x = x1;
        k1 = k7;
        if (!on_step(static_cast<const DenseStep<N>&>(step))) break;
        // PI step control.
        const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
        err_prev = std::max(err, 1e-4);
        h = std::min(h * std::clamp(fac, 0.2, 10.0), s_.max_step);
      } else {
        const double fac = finite ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.5) : 0.1;
        h *= inside ? fac : 0.25;
      }
    }
    if (t_reached) *t_reached = t;
    return x;
  }

  Vec flow(double t0, const Vec& x0, double t_end) {
    return run(t0, x0, t_end, [](const DenseStep<N>&) { return true; });
  }

 private:
  double initial_step(const Vec& x, const Vec& fx) const {
    double d0 = 0.0, d1v = 0.0;
    for (int i = 0; i < x.size(); ++i) {
      const double sc = s_.abs_tol + s_.rel_tol * std::abs(x(i));
      d0 = std::max(d0, std::abs(x(i)) / sc);
      d1v = std::max(d1v, std::abs(fx(i)) / sc);
    }
    const double h = (d0 < 1e-5 || d1v < 1e-5) ? 1e-6 : 0.01 * d0 / d1v;
    return std::max(h, 1e-10);
  }

  Rhs f_;
  IntegratorSettings s_;

  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                          a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                          e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

/// Root of g(step.at(t)) inside an accepted step where g changes sign.
/// Returns the event time; uses bracketed secant/bisection (Illinois).
template <int N, class G>
double locate_event(const DenseStep<N>& step, G&& g, double g0, double g1, double tol = 1e-14) {
  double a = step.t0, b = step.t1();
  double fa = g0, fb = g1;
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    const double c = (fa * b - fb * a) / (fa - fb);
    const double fc = g(step.at(c));
    if (fc == 0.0 || std::abs(b - a) < tol * std::max(1.0, std::abs(c))) return c;
    if ((fc > 0) == (fb > 0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (a + b);
}

template <int N>
struct EventHit {
  double t = 0.0;
  Eigen::Matrix<double, N, 1> x;
};

/// First crossing of g = 0 in the given direction (+1 upward, -1 downward,
/// 0 either) after |t - t0| >= t_min and satisfying accept(x). Nullopt when
/// t_end is reached first. Orbits launched on the surface pass
/// on_surface = true so rounding in g(x0) cannot fire a spurious event.
template <int N, class G, class Accept>
std::optional<EventHit<N>> find_event(Dopri5<N>& solver, double t0, const Eigen::Matrix<double, N, 1>& x0,
                                      double t_end, G&& g, int direction, double t_min, Accept&& accept,
                                      bool on_surface = false) {
  std::optional<EventHit<N>> hit;
  double g_prev = on_surface ? 0.0 : g(x0);
  solver.run(t0, x0, t_end, [&](const DenseStep<N>& step) {
    const auto x1 = step.r[0] + step.r[1];
    const double g1 = g(x1);
    const bool up = g_prev < 0.0 && g1 >= 0.0;
    const bool down = g_prev > 0.0 && g1 <= 0.0;
    const bool late = std::abs(step.t1() - t0) >= t_min;
    if (late && ((direction >= 0 && up) || (direction <= 0 && down))) {
      const double tc = locate_event(step, g, g_prev, g1);
      if (std::abs(tc - t0) >= t_min) {
        const auto xc = step.at(tc);
        if (accept(xc)) {
          hit = EventHit<N>{tc, xc};
          return false;
        }
      }
    }
    g_prev = g1;
    return true;
  });
  return hit;
}

// -- Gray-Scott flow --------------------------------------------------------

struct Trajectory {
  std::vector<double> t;
  std::vector<State> x;
};

/// Adaptive trajectory from p0; every accepted step is recorded. When
/// sample_dt > 0 the output is instead resampled on a uniform time grid
/// through the dense output.
Trajectory integrate(const State& p0, const Params& a, double t_end, const IntegratorSettings& s = {},
                     double sample_dt = 0.0);

/// State reached at time t_end (negative t_end integrates backwards).
State flow_to(const State& p0, const Params& a, double t_end, const IntegratorSettings& s = {});

using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Field together with its variational equation Phi' = Df(x) Phi;
/// components (u, v, Phi00, Phi10, Phi01, Phi11).
Vec6 variational_field(const Vec6& y, const Params& a);

/// Initial condition (x, identity) for the variational system.
Vec6 variational_start(const State& p);
Mat2 monodromy_of(const Vec6& y);

}  // namespace gskit
