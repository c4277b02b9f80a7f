#pragma once

// Spatially homogeneous Gray-Scott kinetics:
//   u' = -u v^2 + F (1 - u)
//   v' =  u v^2 - (F + k) v
// The field is a cubic polynomial in (u, v), so its jets are exact and the
// third derivative is constant.

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace gskit {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;

template <class T>
struct BasicParams {
  T k{};  // removal rate
  T F{};  // feed rate

  T gamma() const { return (F + k) / F; }
};

template <class T>
struct BasicState {
  T u{};
  T v{};
};

using Params = BasicParams<double>;
using State = BasicState<double>;

inline Vec2 to_vec(const State& p) { return {p.u, p.v}; }
inline State to_state(const Vec2& x) { return {x(0), x(1)}; }

/// Throws DomainError unless k > 0 and F > 0.
void require_positive(const Params& a);

/// True when both coordinates are >= -tol.
bool in_closed_quadrant(const State& p, double tol = 0.0);

template <class T>
std::array<T, 2> field(const BasicState<T>& p, const BasicParams<T>& a) {
  const T uv2 = p.u * p.v * p.v;
  return {-uv2 + a.F * (T(1) - p.u), uv2 - (a.F + a.k) * p.v};
}

/// Row-major 2x2 Jacobian in any scalar type (double, exact rationals, polynomials).
template <class T>
std::array<std::array<T, 2>, 2> jacobian_entries(const BasicState<T>& p, const BasicParams<T>& a) {
  const T uv = p.u * p.v;
  const T v2 = p.v * p.v;
  return {{{-(a.F + v2), T(-2) * uv}, {v2, -(a.F + a.k) + T(2) * uv}}};
}

template <class T>
T jacobian_trace(const BasicState<T>& p, const BasicParams<T>& a) {
  const auto j = jacobian_entries(p, a);
  return j[0][0] + j[1][1];
}

template <class T>
T jacobian_det(const BasicState<T>& p, const BasicParams<T>& a) {
  const auto j = jacobian_entries(p, a);
  return j[0][0] * j[1][1] - j[0][1] * j[1][0];
}

/// Partial derivatives of one component of the field up to third order,
/// with x = u and y = v. Used by the Lyapunov-coefficient brackets.
template <class T>
struct ComponentPartials {
  T xx{}, xy{}, yy{}, xxx{}, xxy{}, xyy{}, yyy{};
};

template <class T>
std::array<ComponentPartials<T>, 2> component_partials(const BasicState<T>& p) {
  ComponentPartials<T> f;
  f.xx = T(0);
  f.xy = T(-2) * p.v;
  f.yy = T(-2) * p.u;
  f.xxx = T(0);
  f.xxy = T(0);
  f.xyy = T(-2);
  f.yyy = T(0);
  ComponentPartials<T> g;
  g.xx = T(0);
  g.xy = T(2) * p.v;
  g.yy = T(2) * p.u;
  g.xxx = T(0);
  g.xxy = T(0);
  g.xyy = T(2);
  g.yyy = T(0);
  return {f, g};
}

/// Value, Jacobian, and the symmetric bi/trilinear forms of the field at a
/// point. `hessian[i]` is the matrix of second partials of component i.
struct Jet {
  Vec2 value;
  Mat2 jacobian;
  std::array<Mat2, 2> hessian;

  template <class V>
  auto B(const V& x, const V& y) const {
    using S = typename V::Scalar;
    Eigen::Matrix<S, 2, 1> out;
    for (int i = 0; i < 2; ++i) {
      out(i) = x.transpose() * hessian[i].template cast<S>() * y;
    }
    return out;
  }

  // Third partials are the constant tensor d^3 f_1 / du dv dv = -2 (all
  // permutations), d^3 f_2 / du dv dv = +2, every other entry zero.
  template <class V>
  static auto C(const V& x, const V& y, const V& z) {
    using S = typename V::Scalar;
    const S t = S(2.0) * (x(0) * y(1) * z(1) + x(1) * y(0) * z(1) + x(1) * y(1) * z(0));
    return Eigen::Matrix<S, 2, 1>(-t, t);
  }
};

Vec2 vector_field(const State& p, const Params& a);
Mat2 jacobian(const State& p, const Params& a);
Jet jet(const State& p, const Params& a);

/// Derivative of the field with respect to (k, F), columns in that order.
Mat2 parameter_jacobian(const State& p, const Params& a);

}  // namespace gskit
