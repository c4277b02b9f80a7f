#include "gskit/integrator.hpp"

namespace gskit {

namespace {

Dopri5<2> plane_solver(const Params& a, const IntegratorSettings& s) {
  return Dopri5<2>([a](const Vec2& x) { return vector_field(to_state(x), a); }, s);
}

}  // namespace

Trajectory integrate(const State& p0, const Params& a, double t_end, const IntegratorSettings& s, double sample_dt) {
  require_positive(a);
  if (s.quadrant && !in_closed_quadrant(p0)) throw DomainError("initial state outside the closed first quadrant");
  Trajectory out;
  out.t.push_back(0.0);
  out.x.push_back(p0);
  auto solver = plane_solver(a, s);
  double next = sample_dt;
  solver.run(0.0, to_vec(p0), t_end, [&](const DenseStep<2>& step) {
    if (sample_dt > 0.0) {
      while (next <= step.t1() + 1e-12 * std::abs(step.t1()) && next <= t_end) {
        out.t.push_back(next);
        out.x.push_back(to_state(step.at(std::min(next, step.t1()))));
        next += sample_dt;
      }
    } else {
      out.t.push_back(step.t1());
      out.x.push_back(to_state(step.r[0] + step.r[1]));
    }
    return true;
  });
  return out;
}

State flow_to(const State& p0, const Params& a, double t_end, const IntegratorSettings& s) {
  require_positive(a);
  auto solver = plane_solver(a, s);
  return to_state(solver.flow(0.0, to_vec(p0), t_end));
}

Vec6 variational_field(const Vec6& y, const Params& a) {
  const State p{y(0), y(1)};
  const Mat2 J = jacobian(p, a);
  Mat2 phi;
  phi << y(2), y(4), y(3), y(5);
  const Mat2 d = J * phi;
  const Vec2 f = vector_field(p, a);
  Vec6 out;
  out << f(0), f(1), d(0, 0), d(1, 0), d(0, 1), d(1, 1);
  return out;
}

Vec6 variational_start(const State& p) {
  Vec6 y;
  y << p.u, p.v, 1.0, 0.0, 0.0, 1.0;
  return y;
}

Mat2 monodromy_of(const Vec6& y) {
  Mat2 m;
  m << y(2), y(4), y(3), y(5);
  return m;
}

}  // namespace gskit
