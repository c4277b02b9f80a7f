#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gskit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A user-supplied number. Inputs written as "p/q" or as integers carry an
/// exact value; decimals only carry the floating-point value.
struct Number {
  double value = 0.0;
  std::optional<Rational> exact;
};

/// Parses "p/q", "n", or a decimal literal. Throws ConfigError on junk.
Number parse_number(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Exact square root when q is the square of a rational, nullopt otherwise.
std::optional<Rational> exact_sqrt(const Rational& q);

int sign(const Rational& q);

/// Determinant by fraction-free (Bareiss) elimination. T must be an exact
/// integral-domain-like type supporting +, -, *, and exact division via
/// `exact_divide(T, T)` found by ADL or the Rational overload below.
inline Rational exact_divide(const Rational& a, const Rational& b) { return a / b; }

template <class T>
T bareiss_determinant(std::vector<std::vector<T>> m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  T previous(1);
  int parity = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == T(0)) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == T(0)) ++swap;
      if (swap == n) return T(0);
      std::swap(m[k], m[swap]);
      parity = -parity;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], previous);
      }
      m[i][k] = T(0);
    }
    previous = m[k][k];
  }
  return parity > 0 ? m[n - 1][n - 1] : T(0) - m[n - 1][n - 1];
}

}  // namespace gskit
