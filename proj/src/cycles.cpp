#include "gskit/cycles.hpp"

#include "gskit/equilibria.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace gskit {

Section section_for(const Params& a) {
  require_positive(a);
  const auto eq = equilibria(a);
  if (eq.kind != NontrivialKind::Pair) throw SaddleMissing("no saddle p_pm: Delta <= 0");
  Section sec;
  sec.origin = eq.p_mp;
  const Vec2 d = to_vec(eq.p_mp) - to_vec(eq.p_pm);
  sec.direction = d.normalized();
  sec.normal = Vec2(-sec.direction(1), sec.direction(0));
  // d points to decreasing u (u- < u+), so the ray leaves the quadrant through u = 0.
  sec.s_max = sec.direction(0) < 0.0 ? -eq.p_mp.u / sec.direction(0) : 10.0;
  return sec;
}

std::optional<ReturnResult> return_map(const Params& a, const Section& sec, double s, const ReturnSettings& rs,
                                       bool with_derivative) {
  const State x0 = sec.point(s);
  const Vec2 f0 = vector_field(x0, a);
  const double crossing = sec.normal.dot(f0);
  if (std::abs(crossing) < 1e-14 * std::max(1.0, f0.norm())) return std::nullopt;
  const int direction = crossing > 0.0 ? 1 : -1;

  const auto accept = [&](const auto& x) { return sec.coordinate(State{x(0), x(1)}) > 0.0; };
  const auto g = [&](const auto& x) { return sec.offset(State{x(0), x(1)}); };
  ReturnResult r;
  if (!with_derivative) {
    Dopri5<2> solver([a](const Vec2& x) { return vector_field(to_state(x), a); }, rs.integrator);
    const auto hit = find_event(solver, 0.0, to_vec(x0), rs.t_max, g, direction, 0.0, accept, true);
    if (!hit) return std::nullopt;
    r.s = sec.coordinate(to_state(hit->x));
    r.time = hit->t;
    return r;
  }
  Dopri5<6> solver([a](const Vec6& y) { return variational_field(y, a); }, rs.integrator);
  const auto hit = find_event(solver, 0.0, variational_start(x0), rs.t_max, g, direction, 0.0, accept, true);
  if (!hit) return std::nullopt;
  const State xh{hit->x(0), hit->x(1)};
  r.s = sec.coordinate(xh);
  r.time = hit->t;
  r.monodromy = monodromy_of(hit->x);
  const Vec2 fh = vector_field(xh, a);
  const Vec2 phid = r.monodromy * sec.direction;
  const double dT = -sec.normal.dot(phid) / sec.normal.dot(fh);
  r.dP = sec.direction.dot(phid + fh * dT);
  return r;
}

namespace {

CycleRepr finish(const Params& a, const Section& sec, double s, const ReturnSettings& rs) {
  const auto r = return_map(a, sec, s, rs, true);
  if (!r) throw NoReturn("cycle candidate does not return to the section");
  CycleRepr c;
  c.s = s;
  c.section_point = sec.point(s);
  c.period = r->time;
  c.nontrivial_multiplier = r->dP;
  c.section_normal = sec.normal;
  return c;
}

}  // namespace

CycleRepr shoot_cycle(const Params& a, const CycleRepr& guess, const ShootSettings& ss) {
  const Section sec = section_for(a);
  double s = guess.s > 0.0 ? guess.s : sec.coordinate(guess.section_point);
  if (!(s > 0.0) || s >= sec.s_max) throw NoReturn("guess is not on the section ray");
  for (int it = 0; it < ss.max_iter; ++it) {
    const auto r = return_map(a, sec, s, ss.ret, true);
    if (!r) throw NoReturn("orbit escaped before returning to the section");
    const double D = r->s - s;
    if (std::abs(D) < ss.tol) return finish(a, sec, s, ss.ret);
    const double dD = r->dP - 1.0;
    if (dD == 0.0) throw NewtonDiverged("return-map derivative equals one");
    double step = -D / dD;
    // Damp steps that would leave the ray.
    while (s + step <= 0.0 || s + step >= sec.s_max) step *= 0.5;
    s += step;
  }
  std::ostringstream os;
  os << "no convergence after " << ss.max_iter << " Newton steps (s=" << s << ")";
  throw NewtonDiverged(os.str());
}

std::vector<CycleRepr> limit_cycle_census(const Params& a, const CensusSettings& cs) {
  std::vector<CycleRepr> out;
  const auto eq = equilibria(a);
  if (eq.kind != NontrivialKind::Pair) return out;
  const Section sec = section_for(a);
  const double s_hi = sec.s_max * (1.0 - 1e-3);
  const double s_lo = sec.s_max * cs.s_min_fraction;
  const int n = std::max(cs.ray_samples, 2);

  const auto displacement = [&](double s) -> std::optional<double> {
    const auto r = return_map(a, sec, s, cs.ret);
    if (!r) return std::nullopt;
    return r->s - s;
  };

  std::optional<double> prev;
  double s_prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = s_lo * std::pow(s_hi / s_lo, static_cast<double>(i) / (n - 1));
    const auto D = displacement(s);
    if (!D) break;  // beyond here orbits leave for p0; no cycle can sit outside
    if (prev && ((*prev < 0.0) != (*D < 0.0))) {
      std::uintmax_t iters = 100;
      const auto fn = [&](double x) {
        const auto v = displacement(x);
        return v ? *v : std::numeric_limits<double>::quiet_NaN();
      };
      const auto tolf = [&](double l, double r) { return std::abs(r - l) <= cs.tol * std::max(1.0, std::abs(l)); };
      double root = 0.5 * (s_prev + s);
      try {
        const auto br = boost::math::tools::toms748_solve(fn, s_prev, s, *prev, *D, tolf, iters);
        root = 0.5 * (br.first + br.second);
      } catch (const std::exception&) {
        // fall back to the midpoint of the bracket
      }
      try {
        CycleRepr c = finish(a, sec, root, cs.ret);
        if (out.empty() || std::abs(c.s - out.back().s) > 1e-9 * std::max(1.0, c.s)) out.push_back(c);
      } catch (const NoReturn&) {
      }
    }
    prev = D;
    s_prev = s;
  }
  return out;
}

}  // namespace gskit
