#pragma once

// Poincare normal form of a planar vector field near a non-degenerate
// centre, written in the complex coordinate z:
//   z' = i omega z + sum g_jk z^j conj(z)^k
// Near-identity changes z = w + h(w, conj w) remove every non-resonant
// monomial up to the requested order, leaving
//   w' = i omega w + c1 w |w|^2 + c2 w |w|^4 + ...
// The first and second Lyapunov coefficients are Re c1 / omega and
// Re c2 / omega.

#include <complex>
#include <map>
#include <utility>

namespace gskit {

using cplx = std::complex<double>;

/// Truncated polynomial in (z, conj z). Monomial z^j conj(z)^k is keyed (j, k).
class ZPoly {
 public:
  explicit ZPoly(int max_degree = 5) : max_degree_(max_degree) {}

  int max_degree() const { return max_degree_; }
  const std::map<std::pair<int, int>, cplx>& terms() const { return terms_; }

  cplx coeff(int j, int k) const;
  void add(int j, int k, cplx c);

  static ZPoly constant(cplx c, int max_degree);
  static ZPoly z(int max_degree);
  static ZPoly zbar(int max_degree);

  /// Complex conjugate as a function: coefficients conjugated, exponents swapped.
  ZPoly conj() const;
  /// Part of exact total degree m.
  ZPoly homogeneous(int m) const;
  ZPoly dz() const;
  ZPoly dzbar() const;

  /// Substitutes z -> a, conj z -> b (both truncated polynomials).
  ZPoly compose(const ZPoly& a, const ZPoly& b) const;

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(cplx s, const ZPoly& a);

 private:
  int max_degree_;
  std::map<std::pair<int, int>, cplx> terms_;
};

struct HopfNormalForm {
  double omega = 0.0;
  cplx c1, c2;
  double l1() const { return c1.real() / omega; }
  double l2() const { return c2.real() / omega; }
};

/// Reduces z' = i omega z + nonlinear(z, conj z) to normal form through
/// fifth order.
HopfNormalForm hopf_normal_form(const ZPoly& nonlinear, double omega);

}  // namespace gskit
