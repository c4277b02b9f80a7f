#include "gskit/core.hpp"

#include "gskit/errors.hpp"

#include <cmath>
#include <sstream>

namespace gskit {

void require_positive(const Params& a) {
  if (!(a.k > 0.0) || !(a.F > 0.0) || !std::isfinite(a.k) || !std::isfinite(a.F)) {
    std::ostringstream os;
    os << "parameters must satisfy k > 0 and F > 0 (got k=" << a.k << ", F=" << a.F << ")";
    throw DomainError(os.str());
  }
}

bool in_closed_quadrant(const State& p, double tol) { return p.u >= -tol && p.v >= -tol; }

Vec2 vector_field(const State& p, const Params& a) {
  const auto f = field(p, a);
  return {f[0], f[1]};
}

Mat2 jacobian(const State& p, const Params& a) {
  const auto j = jacobian_entries(p, a);
  Mat2 m;
  m << j[0][0], j[0][1], j[1][0], j[1][1];
  return m;
}

Jet jet(const State& p, const Params& a) {
  Jet out;
  out.value = vector_field(p, a);
  out.jacobian = jacobian(p, a);
  out.hessian[0] << 0.0, -2.0 * p.v, -2.0 * p.v, -2.0 * p.u;
  out.hessian[1] << 0.0, 2.0 * p.v, 2.0 * p.v, 2.0 * p.u;
  return out;
}

Mat2 parameter_jacobian(const State& p, const Params& /*a*/) {
  Mat2 m;
  m << 0.0, 1.0 - p.u, -p.v, -p.v;
  return m;
}

}  // namespace gskit
