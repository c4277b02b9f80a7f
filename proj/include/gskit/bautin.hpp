#pragma once

// Generalized Hopf (Bautin) point on the Hopf curve of p_mp.

#include "gskit/core.hpp"
#include "gskit/equilibria.hpp"
#include "gskit/exact.hpp"
#include "gskit/normal_form.hpp"
#include "gskit/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gskit::bautin {

struct HopfFrame {
  Params params;
  State p_mp;
  double omega0 = 0.0;  ///< sqrt(det Df(p_mp))
  double nu = 0.0;      ///< F offset from the Hopf curve at the same k
};

/// Validates that a lies on the Hopf curve (|tr| < trace_tol, det > 0).
/// Throws NotOnHopfCurve otherwise.
HopfFrame hopf_frame(const Params& a, double trace_tol = 1e-10);

/// Bracket of the Chow-Li-Wang first Lyapunov coefficient for
/// x' = A x + (f, g)(x) with A = [[a, b], [c, d]] and a + d = 0:
///   l1 = b / (16 beta0^4) * bracket,   beta0^2 = a d - b c.
/// Written over any commutative scalar so it also runs on exact polynomials.
template <class T>
T clw_bracket(const T& a, const T& b, const T& c, const T& d, const ComponentPartials<T>& f,
              const ComponentPartials<T>& g) {
  (void)a;
  const T beta2 = a * d - b * c;
  return beta2 * (b * (f.xxx + g.xxy) + T(2) * d * (f.xxy + g.xyy) - c * (f.xyy + g.yyy))
         - b * d * (f.xx * f.xx - f.xx * g.xy - f.xy * g.xx - g.xx * g.yy - T(2) * g.xy * g.xy)
         - c * d * (g.yy * g.yy - g.yy * f.xy - g.xy * f.yy - f.yy * f.xx - T(2) * f.xy * f.xy)
         + b * b * (f.xx * g.xx + g.xx * g.xy) - c * c * (f.yy * g.yy + f.xy * f.yy)
         - (beta2 + T(3) * d * d) * (f.xx * f.xy - g.xy * g.yy);
}

/// CLW bracket of the kinetics at a state (no Hopf-curve check).
template <class T>
T clw_bracket_at(const BasicState<T>& p, const BasicParams<T>& a) {
  const auto j = jacobian_entries(p, a);
  const auto parts = component_partials(p);
  return clw_bracket(j[0][0], j[0][1], j[1][0], j[1][1], parts[0], parts[1]);
}

/// First Lyapunov coefficient by the Chow-Li-Wang formula at p_mp.
double l1_clw(const Params& a);

/// F such that (k, F) sits at offset nu from the Hopf curve:
/// F = nu - (sqrt(k)/2) (-1 + sqrt(1 - 4 sqrt(k)) + 2 sqrt(k)).
double hopf_offset_F(double k, double nu);

/// Normal form of the kinetics at p_mp (Hopf curve only). Eigenvectors are
/// normalized with <q, q> = 1 and <p, q> = 1 (p left eigenvector of -i omega).
HopfNormalForm kuznetsov_normal_form(const Params& a);

double l1_kuz(const Params& a);
double l2_kuz(const Params& a);

/// Smooth extension of l1 off the Hopf curve (eigenvalue mu + i omega); it
/// agrees with l1_kuz on the curve. Used by the parameter-map determinant.
double l1_extended(const Params& a);

/// l1 on the Hopf curve by the invariant (eigenvector) formula; an
/// independent route to l1_kuz.
double l1_invariant(const Params& a);

/// The same extension evaluated at a given state (no equilibrium solve);
/// NaN when Df(p) has real eigenvalues. Used as the GH test function on
/// continued Hopf curves.
double l1_at(const State& p, const Params& a);

/// mu(k, F): real part of the complex eigenvalue pair of Df(p_mp).
double mu(const Params& a);

/// Determinant of d(mu, l1)/d(k, F) by central differences with step h.
double param_map_transversality(const Params& gh, double h = 1e-6);

// -- exact polynomial system --------------------------------------------------

/// Q1(x, y) transcribed from the restricted l1 display (x = sqrt k,
/// y = sqrt(1 - 4 sqrt k)), as a polynomial in x over Q[y].
BiPoly q1();
/// Q2 = -4 x - y^2 + 1.
BiPoly q2();

/// CLW bracket restricted to the Hopf curve, expressed through
/// k = x^2, v = x, u = (1 - y)/2, F = x (1 - 2x - y)/2.
BiPoly clw_restricted();

/// Reduces a polynomial in (x, y) modulo Q2 by x -> (1 - y^2)/4.
IntPoly on_hopf_curve(const BiPoly& p);

/// The printed restricted l1 polynomial evaluated in 50-digit arithmetic.
double printed_restricted_l1(double k);

struct RootMapping {
  Rational y;
  int multiplicity = 0;
  bool admissible = false;      ///< 0 < y < 1, i.e. 0 < k < 1/16
  std::optional<Rational> sqrt_k, k, F;
  std::string reason;
};

struct GHLocation {
  IntPoly resultant;                  ///< Res(Q1, Q2, x)
  IntPoly expected_resultant;         ///< 2 (y - 1)^16 (2 y - 1)
  std::vector<RootMapping> roots;
  Rational k, F;                      ///< 9/256, 3/256
  Rational u, v;                      ///< p_mp
  bool q_system_vanishes = false;     ///< Q1 = Q2 = 0 exactly at GH
  IntPoly clw_resultant;              ///< Res(clw_restricted, Q2, x)
  bool clw_agrees = false;            ///< same admissible root set as Q1
  bool restriction_identity = false;  ///< 64 (y+1)^4 Q1 = (y-1)^10 clw on the curve
};

GHLocation gh_locate(bool mutate = false);

struct GHReport {
  GHLocation location;
  int l1_left_sign = 0;    ///< sign of l1 at k < 9/256 on the Hopf curve
  int l1_right_sign = 0;   ///< sign of l1 at k > 9/256
  double l1_at_gh = 0.0;
  double l2 = 0.0;
  int l2_sign = 0;
  double param_map_det = 0.0;
  double param_map_det_fine = 0.0;   ///< same determinant with h = 1e-7
  int param_map_det_sign = 0;
  /// Every check including the expected negative determinant sign.
  bool passed() const;
  /// Hypotheses of the Bautin theorem only: located GH, l1 sign change,
  /// l2 != 0 and a nonzero (mu, l1) determinant of either sign.
  bool nondegenerate() const;
};

GHReport verify_bautin(bool mutate = false);

// -- polar normal form --------------------------------------------------------

struct PolarCycle {
  double radius = 0.0;
  bool stable = false;
  double derivative = 0.0;  ///< d/drho [rho (beta1 + beta2 rho^2 + rho^4)] at the root
};

/// Positive roots of beta1 + beta2 rho^2 + rho^4 = 0 with their stability,
/// ordered by radius. A double root on the T curve is returned once.
std::vector<PolarCycle> bautin_polar_census(double beta1, double beta2);

}  // namespace gskit::bautin
