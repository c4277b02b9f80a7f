#pragma once

// Periodic orbits around p_mp through a Poincare return map on a ray.
//
// The section is the ray from p_mp pointing away from the saddle p_pm,
//   x(s) = p_mp + s d,  d = (p_mp - p_pm) / |p_mp - p_pm|,  s > 0.
// Every cycle around p_mp crosses it exactly once per turn, and the saddle's
// separatrices wind around p_mp through the same ray, so the splitting
// diagnostic shares it. The ray ends where it meets the axis u = 0.

#include "gskit/core.hpp"
#include "gskit/integrator.hpp"

#include <optional>
#include <vector>

namespace gskit {

struct Section {
  State origin;   ///< p_mp
  Vec2 direction; ///< unit ray direction
  Vec2 normal;    ///< direction rotated by +90 degrees
  double s_max;   ///< ray length inside the open quadrant

  State point(double s) const { return to_state(to_vec(origin) + s * direction); }
  double coordinate(const State& p) const { return direction.dot(to_vec(p) - to_vec(origin)); }
  double offset(const State& p) const { return normal.dot(to_vec(p) - to_vec(origin)); }
};

/// Section for parameters with Delta > 0; throws SaddleMissing otherwise.
Section section_for(const Params& a);

struct CycleRepr {
  State section_point;
  double s = 0.0;               ///< ray coordinate of section_point
  double period = 0.0;
  double nontrivial_multiplier = 0.0;
  Vec2 section_normal{0.0, 0.0};
  bool stable() const { return nontrivial_multiplier > 0.0 && nontrivial_multiplier < 1.0; }
};

struct ReturnSettings {
  IntegratorSettings integrator{1e-11, 1e-13};
  double t_max = 5000.0;  ///< give up on a return after this time
};

struct ReturnResult {
  double s = 0.0;      ///< P(s)
  double time = 0.0;   ///< return time
  double dP = 0.0;     ///< P'(s) (with_derivative only)
  Mat2 monodromy = Mat2::Identity();
};

/// One turn of the return map. Nullopt when the orbit does not come back to
/// the ray within t_max (e.g. it is captured by p0).
std::optional<ReturnResult> return_map(const Params& a, const Section& sec, double s, const ReturnSettings& rs = {},
                                       bool with_derivative = false);

struct ShootSettings {
  ReturnSettings ret;
  double tol = 1e-10;
  int max_iter = 30;
};

/// Newton on P(s) - s from the guess's ray coordinate. Throws NoReturn or
/// NewtonDiverged.
CycleRepr shoot_cycle(const Params& a, const CycleRepr& guess, const ShootSettings& ss = {});

struct CensusSettings {
  int ray_samples = 400;   ///< geometric spacing from s_max * s_min_fraction to s_max
  double s_min_fraction = 1e-5;
  ReturnSettings ret{IntegratorSettings{1e-10, 1e-13}, 5000.0};
  double tol = 1e-11;
};

/// All cycles around p_mp found by sign changes of P(s) - s along the ray,
/// ordered by amplitude (ray coordinate).
std::vector<CycleRepr> limit_cycle_census(const Params& a, const CensusSettings& cs = {});

}  // namespace gskit
