#pragma once

// Dense univariate polynomials over an exact coefficient ring. Nesting gives
// bivariate polynomials: Poly<Poly<Rational>> is a polynomial in an outer
// variable whose coefficients are polynomials in an inner one.

#include "gskit/errors.hpp"
#include "gskit/exact.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace gskit {

template <class C>
class Poly {
 public:
  Poly() = default;
  Poly(int constant) : Poly(C(constant)) {}  // NOLINT(google-explicit-constructor)
  Poly(const C& constant, char var = 'x') : coeffs_{constant}, var_(var) { trim(); }  // NOLINT
  Poly(std::vector<C> low_to_high, char var) : coeffs_(std::move(low_to_high)), var_(var) { trim(); }

  /// The monomial c * var^n.
  static Poly monomial(const C& c, int n, char var) {
    std::vector<C> v(static_cast<std::size_t>(n) + 1, C(0));
    v.back() = c;
    return Poly(std::move(v), var);
  }
  static Poly variable(char var) { return monomial(C(1), 1, var); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  char var() const { return var_; }
  const std::vector<C>& coefficients() const { return coeffs_; }

  C coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(i)] : C(0);
  }
  C leading() const { return coeffs_.empty() ? C(0) : coeffs_.back(); }

  template <class V>
  V eval(const V& x) const {
    V acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + V(*it);
    return acc;
  }

  Poly derivative() const {
    std::vector<C> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * C(static_cast<int>(i)));
    return Poly(std::move(d), var_);
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<C> r(std::max(a.coeffs_.size(), b.coeffs_.size()), C(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] = r[i] + a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] = r[i] + b.coeffs_[i];
    return Poly(std::move(r), merged_var(a, b));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<C> r;
    for (const auto& c : a.coeffs_) r.push_back(C(0) - c);
    return Poly(std::move(r), a.var_);
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(std::vector<C>{}, merged_var(a, b));
    std::vector<C> r(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] = r[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(r), merged_var(a, b));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

 private:
  static char merged_var(const Poly& a, const Poly& b) {
    // Constants carry the default tag; prefer the tag of a non-constant operand.
    return a.degree() > 0 ? a.var_ : b.var_;
  }
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == C(0)) coeffs_.pop_back();
  }

  std::vector<C> coeffs_;
  char var_ = 'x';
};

using IntPoly = Poly<Rational>;     ///< exact univariate polynomial
using BiPoly = Poly<IntPoly>;       ///< outer variable over IntPoly coefficients

template <class C>
Poly<C> pow(Poly<C> base, int n) {
  Poly<C> out(C(1), base.var());
  while (n > 0) {
    if (n & 1) out = out * base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

/// Quotient and remainder over a field of coefficients.
std::pair<IntPoly, IntPoly> divmod(const IntPoly& a, const IntPoly& b);

/// Exact quotient; throws std::domain_error when b does not divide a.
IntPoly exact_divide(const IntPoly& a, const IntPoly& b);

IntPoly gcd(IntPoly a, IntPoly b);

/// Monic-free square-free part p / gcd(p, p').
IntPoly square_free_part(const IntPoly& p);

/// Rational roots with multiplicities, found by the rational root test on
/// the square-free part and repeated exact division.
std::vector<std::pair<Rational, int>> rational_roots(const IntPoly& p);

/// Sylvester matrix with p's rows first; coefficients ordered from the
/// highest degree down, the usual textbook layout.
template <class C>
std::vector<std::vector<C>> sylvester_matrix(const Poly<C>& p, const Poly<C>& q) {
  const int m = p.degree();
  const int n = q.degree();
  const int size = m + n;
  std::vector<std::vector<C>> s(static_cast<std::size_t>(size), std::vector<C>(static_cast<std::size_t>(size), C(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = p.coeff(m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = q.coeff(n - i);
  return s;
}

/// Res(p, q) with respect to the outer variable: det of the Sylvester
/// matrix. Throws ZeroPolynomial when either input is zero.
template <class C>
C resultant(const Poly<C>& p, const Poly<C>& q) {
  if (p.is_zero() || q.is_zero()) throw ZeroPolynomial("resultant of a zero polynomial");
  return bareiss_determinant(sylvester_matrix(p, q));
}

/// Resultant of two univariate polynomials returned as a constant IntPoly.
IntPoly resultant_poly(const IntPoly& p, const IntPoly& q);

std::string to_string(const IntPoly& p);
std::string to_string(const BiPoly& p);

/// Coefficient list "c0,c1,...,cn" (ascending powers) as CSV fields.
std::string coefficient_csv(const IntPoly& p);

}  // namespace gskit
