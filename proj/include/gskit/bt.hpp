#pragma once

// Takens-Bogdanov point of the kinetics at (k, F) = (1/16, 1/16), p = (1/2, 1/4).
//
// Coordinates: alpha = (alpha1, alpha2) = (F - 1/16, k - 1/16) and
// x = (u - 1/2, v - 1/4). The quadratic normal-form coefficients are second
// partials of the field projected on a generalized eigenbasis {v0, v1} of
// A0 = Df(p_BT) with dual basis {w0, w1}:
//   a20 = <B(v0, v0), w0>,  b20 = <B(v0, v0), w1>,  b11 = <B(v0, v1), w1>
// and the reduced normal form carries s = sign(b20 (a20 + b11)).

#include "gskit/core.hpp"
#include "gskit/errors.hpp"
#include "gskit/exact.hpp"

#include <array>
#include <string>
#include <vector>

namespace gskit::bt {

template <class T>
using Pair = std::array<T, 2>;

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
T dot(const Pair<T>& a, const Pair<T>& b) {
  return a[0] * b[0] + a[1] * b[1];
}

template <class T>
struct Basis {
  Pair<T> v0, v1, w0, w1;
};

/// Jordan basis of A0 with its dual. scale = shear = 0 gives the reference
/// choice v0 = (-2, 1), v1 = (0, 8), w0 = (-1/2, 0), w1 = (1/16, 1/8).
/// Every admissible basis is v0' = c v0, v1' = c v1 + d v0 with duals
/// w1' = w1 / c, w0' = w0 / c - (d / c^2) w1.
template <class T>
Basis<T> jordan_basis(const T& c = T(1), const T& d = T(0)) {
  const Basis<T> ref{{T(-2), T(1)}, {T(0), T(8)}, {T(-1) / T(2), T(0)}, {T(1) / T(16), T(1) / T(8)}};
  Basis<T> out;
  out.v0 = {c * ref.v0[0], c * ref.v0[1]};
  out.v1 = {c * ref.v1[0] + d * ref.v0[0], c * ref.v1[1] + d * ref.v0[1]};
  out.w1 = {ref.w1[0] / c, ref.w1[1] / c};
  out.w0 = {ref.w0[0] / c - d / (c * c) * ref.w1[0], ref.w0[1] / c - d / (c * c) * ref.w1[1]};
  return out;
}

/// A0 = Df(1/2, 1/4) at (k, F) = (1/16, 1/16).
template <class T>
std::array<std::array<T, 2>, 2> linear_part_at_bt() {
  const BasicState<T> p{T(1) / T(2), T(1) / T(4)};
  const BasicParams<T> a{T(1) / T(16), T(1) / T(16)};
  return jacobian_entries(p, a);
}

template <class T>
Pair<T> apply(const std::array<std::array<T, 2>, 2>& m, const Pair<T>& x) {
  return {m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]};
}

template <class T>
Pair<T> apply_transpose(const std::array<std::array<T, 2>, 2>& m, const Pair<T>& x) {
  return {m[0][0] * x[0] + m[1][0] * x[1], m[0][1] * x[0] + m[1][1] * x[1]};
}

/// Residuals of the six frame equations: A0 v0, A0 v1 - v0, A0^T w1,
/// A0^T w0 - w1 (2 components each, flattened) and the four pairings.
template <class T>
std::vector<T> frame_residuals(const Basis<T>& b) {
  const auto a0 = linear_part_at_bt<T>();
  std::vector<T> r;
  const auto av0 = apply(a0, b.v0);
  const auto av1 = apply(a0, b.v1);
  const auto aw1 = apply_transpose(a0, b.w1);
  const auto aw0 = apply_transpose(a0, b.w0);
  for (int i = 0; i < 2; ++i) {
    r.push_back(av0[i]);
    r.push_back(av1[i] - b.v0[i]);
    r.push_back(aw1[i]);
    r.push_back(aw0[i] - b.w1[i]);
  }
  r.push_back(dot(b.v0, b.w0) - T(1));
  r.push_back(dot(b.v1, b.w1) - T(1));
  r.push_back(dot(b.v1, b.w0));
  r.push_back(dot(b.v0, b.w1));
  return r;
}

template <class T>
T shift_denominator(const Pair<T>& alpha) {
  return T(8) * alpha[1] + T(8) * alpha[0] + T(1);
}

template <class T>
void require_regular(const Pair<T>& alpha) {
  if (!(shift_denominator(alpha) > T(0))) {
    throw SingularParameter("8*alpha2 + 8*alpha1 + 1 must be positive");
  }
}

template <class T>
BasicParams<T> params_of(const Pair<T>& alpha) {
  return {alpha[1] + T(1) / T(16), alpha[0] + T(1) / T(16)};
}

/// The field in shifted coordinates: f(x + (1/2, 1/4), k = alpha2 + 1/16,
/// F = alpha1 + 1/16).
template <class T>
Pair<T> shifted_field(const Pair<T>& x, const Pair<T>& alpha) {
  require_regular(alpha);
  const BasicState<T> p{x[0] + T(1) / T(2), x[1] + T(1) / T(4)};
  return field(p, params_of(alpha));
}

/// Point about which the alpha-dependent quadratic coefficients are taken:
/// (1/2, (alpha2 + 1/16) / (2 (alpha1 + alpha2 + 1/8))). It coincides with
/// p_BT at alpha = 0.
template <class T>
Pair<T> expansion_center(const Pair<T>& alpha) {
  require_regular(alpha);
  return {T(1) / T(2), (alpha[1] + T(1) / T(16)) / (T(2) * (alpha[0] + alpha[1] + T(1) / T(8)))};
}

/// Symmetric bilinear form of the field at a point (independent of k, F).
template <class T>
Pair<T> bilinear(const Pair<T>& at, const Pair<T>& x, const Pair<T>& y) {
  const auto part = component_partials(BasicState<T>{at[0], at[1]});
  Pair<T> out;
  for (int i = 0; i < 2; ++i) {
    const auto& h = part[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = h.xx * x[0] * y[0] + h.xy * (x[0] * y[1] + x[1] * y[0]) + h.yy * x[1] * y[1];
  }
  return out;
}

template <class T>
struct Coefficients {
  T a20{}, b20{}, b11{};
};

/// Quadratic coefficients by projection onto a given basis.
template <class T>
Coefficients<T> projected_coefficients(const Pair<T>& alpha, const Basis<T>& basis) {
  const auto c = expansion_center(alpha);
  const auto b00 = bilinear(c, basis.v0, basis.v0);
  const auto b01 = bilinear(c, basis.v0, basis.v1);
  return {dot(b00, basis.w0), dot(b00, basis.w1), dot(b01, basis.w1)};
}

/// Closed forms in the reference basis:
///   a20 = -(24 a2 - 8 a1 + 1) / (2 (8 a2 + 8 a1 + 1))
///   b20 = -(24 a2 - 8 a1 + 1) / (16 (8 a2 + 8 a1 + 1))
///   b11 = 4 (a1 - a2) / (8 a2 + 8 a1 + 1)
template <class T>
Coefficients<T> bt_coefficients(const Pair<T>& alpha) {
  require_regular(alpha);
  const T den = shift_denominator(alpha);
  const T num = T(24) * alpha[1] - T(8) * alpha[0] + T(1);
  return {-num / (T(2) * den), -num / (T(16) * den), T(4) * (alpha[0] - alpha[1]) / den};
}

/// The b20 display found in the literature, (24 a2 - 8 a1 + 1) / (16 (...)),
/// which has the opposite sign of the projected second partial.
template <class T>
T reference_b20(const Pair<T>& alpha) {
  require_regular(alpha);
  return (T(24) * alpha[1] - T(8) * alpha[0] + T(1)) / (T(16) * shift_denominator(alpha));
}

template <class T>
int normal_form_sign(const Coefficients<T>& c) {
  const T s = c.b20 * (c.a20 + c.b11);
  return s > T(0) ? 1 : (s < T(0) ? -1 : 0);
}

/// Jacobian of (u, v, k, F) -> (f1, f2, tr Df, det Df), rows in that order.
template <class T>
Matrix<T> transversality_matrix(const BasicState<T>& p, const BasicParams<T>& a) {
  const T& u = p.u;
  const T& v = p.v;
  const T& k = a.k;
  const T& F = a.F;
  return {
      {-(v * v) - F, T(-2) * u * v, T(0), T(1) - u},
      {v * v, -F - k + T(2) * u * v, -v, -v},
      {T(2) * v, T(2) * (u - v), T(-1), T(-2)},
      {T(-2) * F * v, T(-2) * F * u + T(2) * (F + k) * v, F + v * v, T(2) * F + k + v * (T(-2) * u + v)},
  };
}

struct BTReport {
  Rational k, F, u, v;
  std::array<std::array<Rational, 2>, 2> A0;
  Coefficients<Rational> coefficients;
  Rational a20_plus_b11;
  int s = 0;
  Matrix<Rational> transversality;
  Rational transversality_det;
  bool frame_ok = false;
  bool equilibrium_ok = false;   ///< f(p_BT) = 0 and tr = det = 0 exactly
  bool bt1 = false;              ///< a20 + b11 != 0
  bool bt2 = false;              ///< b20 != 0
  bool bt3 = false;              ///< transversality determinant != 0
  Rational reference_b20;
  int reference_s = 0;           ///< sign obtained with the reference b20

  bool nondegenerate() const { return frame_ok && equilibrium_ok && bt1 && bt2 && bt3; }
};

/// Exact verification of the BT point. `mutate` perturbs F by 1/1024 to
/// produce a negative control in which the checks must fail.
BTReport bt_nondegeneracy(bool mutate = false);

}  // namespace gskit::bt
