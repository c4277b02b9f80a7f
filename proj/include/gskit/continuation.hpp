#pragma once

// Pseudo-arclength continuation of the codimension-one curves of the
// kinetics, plus the separatrix-splitting machinery for homoclinic orbits.
//
// Extended unknowns:
//   fold, hopf  y = (u, v, k, F)   f(u, v) = 0 and det Df = 0 (fold) / tr Df = 0 (hopf)
//   lpc         y = (s, k, F)      P(s) - s = 0 and P'(s) - 1 = 0 on the cycle section
// The homoclinic curve is traced by bisection of the splitting function at
// fixed k rather than by arclength continuation.

#include "gskit/core.hpp"
#include "gskit/cycles.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gskit {

enum class CurveKind { Fold, Hopf, Lpc, Homoclinic };

std::string to_string(CurveKind k);
CurveKind curve_kind_from_string(const std::string& s);

struct ContinuationSettings {
  double h0 = 1e-3;
  double h_min = 1e-9;
  double h_max = 1e-2;
  int max_points = 4000;
  double tol = 1e-10;        ///< corrector residual tolerance
  int max_newton = 8;
  double fd_step = 1e-7;     ///< relative finite-difference step
  double k_min = 1e-4;       ///< stop when k falls below this (the k -> 0 corner)
  bool stop_at_special = true;
  int direction = 1;         ///< orientation of the first step along +k (or -k)
  /// lpc only: integration settings of the return map, and the ray coordinate
  /// below which the cycle pair is considered collapsed onto the Hopf point.
  ReturnSettings lpc_return{IntegratorSettings{1e-12, 1e-14}, 5000.0};
  double lpc_s_stop = 1e-3;
};

struct CurvePoint {
  Params params;
  Eigen::VectorXd y;         ///< extended vector (see header comment)
  Eigen::VectorXd tangent;   ///< unit null vector of the defining Jacobian
  double arc_step = 0.0;
  double residual = 0.0;
  std::optional<CycleRepr> cycle;  ///< lpc only
  std::string flag;          ///< "", "BT", "GH", "seed", "end"

  State state() const { return {y(0), y.size() > 3 ? y(1) : 0.0}; }
};

struct SpecialPoint {
  std::string kind;  ///< BT, GH
  CurvePoint point;
  double test_value = 0.0;
};

struct Polyline {
  CurveKind kind = CurveKind::Hopf;
  std::vector<CurvePoint> points;
  std::vector<SpecialPoint> specials;
  std::string termination;  ///< why the run stopped
};

/// Defining system of a curve kind, its dimension and (for fold and hopf)
/// its analytic Jacobian.
Eigen::VectorXd defining_system(CurveKind kind, const Eigen::VectorXd& y, const ContinuationSettings& s = {});

/// Seeds on the closed-form curves at abscissa k.
CurvePoint hopf_seed(double k);
CurvePoint fold_seed(double k, bool upper);

/// Seed on the limit-point-of-cycles curve at fixed k < 9/256 by collision
/// of the two cycles found by the census, then Newton on the lpc system.
/// Also returns, through *collision_F, the F where the census loses the pair.
CurvePoint lpc_seed(double k, double* collision_F = nullptr, const ContinuationSettings& s = {});

/// Pseudo-arclength continuation from a seed (one direction). Throws
/// SeedInvalid when the seed misses its defining system; StepUnderflow when
/// the step shrinks below h_min. Leaving the admissible region ends the run
/// with `termination` set (DomainExit is thrown only for the seed).
Polyline continue_curve(CurveKind kind, const CurvePoint& seed, const ContinuationSettings& s = {});

/// Solves the defining system with k held fixed, starting from a point
/// on the curve; used to compare a traced curve with closed forms.
CurvePoint refine_at_k(CurveKind kind, const CurvePoint& near, double k, const ContinuationSettings& s = {});

// -- homoclinic orbits ---------------------------------------------------

struct SplittingSettings {
  double eps = 1e-7;
  IntegratorSettings integrator{1e-11, 1e-14};
  double t_max = 2e5;
  bool richardson = true;  ///< also evaluate at eps / 2
};

struct Splitting {
  double gap = 0.0;         ///< s_unstable - s_stable on the section ray
  double s_unstable = 0.0;
  double s_stable = 0.0;
  double t_unstable = 0.0;
  double t_stable = 0.0;
  double richardson_diff = 0.0;  ///< |gap(eps) - gap(eps/2)|
};

/// Separatrix splitting of the saddle p_pm on the cycle section ray.
/// Positive gap: the unstable separatrix crosses the ray outside the stable
/// one. Throws SaddleMissing or SectionMiss.
Splitting separatrix_splitting_detail(const Params& a, const SplittingSettings& ss = {});
double separatrix_splitting(const Params& a, const SplittingSettings& ss = {});

struct HomoclinicPoint {
  double k = 0.0;
  double F = 0.0;            ///< midpoint of the final bracket
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double richardson_diff = 0.0;
};

struct HomoclinicSettings {
  SplittingSettings splitting{1e-7, IntegratorSettings{1e-11, 1e-14}, 2e5, false};
  double width = 1e-8;
  int scan = 24;
};

/// Bisects the splitting function in F at fixed k. The bracket is searched
/// between the Hopf curve and the upper fold, then between the lower fold
/// and the Hopf curve. Throws BracketNotFound.
HomoclinicPoint homoclinic_point(double k, const HomoclinicSettings& hs = {});

/// homoclinic_point over the given abscissae; points whose bracket cannot be
/// found end the curve (reported in *termination).
std::vector<HomoclinicPoint> homoclinic_curve(const std::vector<double>& ks, const HomoclinicSettings& hs = {},
                                              std::string* termination = nullptr);

struct TangencyFit {
  double slope = 0.0;       ///< exponent p in distance ~ C * offset^p
  double intercept = 0.0;
  int samples = 0;
};

/// Least-squares slope of log y against log x.
TangencyFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gskit
