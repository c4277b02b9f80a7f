#include "gskit/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace gskit {

std::pair<IntPoly, IntPoly> divmod(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  IntPoly quotient(std::vector<Rational>{}, a.var());
  IntPoly rest = a;
  const Rational lead = b.leading();
  while (!rest.is_zero() && rest.degree() >= b.degree()) {
    const IntPoly term = IntPoly::monomial(rest.leading() / lead, rest.degree() - b.degree(), a.var());
    quotient += term;
    rest -= term * b;
  }
  return {quotient, rest};
}

IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

IntPoly gcd(IntPoly a, IntPoly b) {
  while (!b.is_zero()) {
    IntPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * IntPoly(Rational(1) / a.leading(), a.var());
}

IntPoly square_free_part(const IntPoly& p) {
  if (p.degree() <= 0) return p;
  return exact_divide(p, gcd(p, p.derivative()));
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

// Integer multiple of p with coprime integer coefficients.
std::vector<Integer> primitive_integer_coefficients(const IntPoly& p) {
  Integer lcm_den = 1;
  for (const auto& c : p.coefficients()) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    out.push_back(numerator(c) * (lcm_den / denominator(c)));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (g > 1)
    for (auto& c : out) c /= g;
  return out;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const IntPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
  std::vector<std::pair<Rational, int>> roots;
  IntPoly sf = square_free_part(p);
  const char var = p.var();
  // Zero root handled first so the constant term below is nonzero.
  if (sf.coeff(0) == 0) {
    roots.emplace_back(Rational(0), 0);
    sf = exact_divide(sf, IntPoly::variable(var));
  }
  if (sf.degree() > 0) {
    const auto ints = primitive_integer_coefficients(sf);
    for (const auto& num : positive_divisors(ints.front())) {
      for (const auto& den : positive_divisors(ints.back())) {
        for (int s : {1, -1}) {
          const Rational cand(s * num, den);
          if (sf.eval(cand) == 0) {
            bool seen = false;
            for (const auto& r : roots) seen = seen || r.first == cand;
            if (!seen) roots.emplace_back(cand, 0);
          }
        }
      }
    }
  }
  for (auto& [root, mult] : roots) {
    const IntPoly factor(std::vector<Rational>{-root, Rational(1)}, var);
    IntPoly rest = p;
    while (true) {
      auto [q, r] = divmod(rest, factor);
      if (!r.is_zero()) break;
      ++mult;
      rest = q;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

IntPoly resultant_poly(const IntPoly& p, const IntPoly& q) { return IntPoly(resultant(p, q), p.var()); }

std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational c = p.coeff(i);
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) {
      os << to_string(mag);
      if (i > 0) os << "*";
    }
    if (i >= 1) os << p.var();
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::string to_string(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const IntPoly c = p.coeff(i);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c) << ")";
    if (i >= 1) os << "*" << p.var();
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::string coefficient_csv(const IntPoly& p) {
  std::ostringstream os;
  for (int i = 0; i <= p.degree(); ++i) {
    if (i) os << ",";
    os << to_string(p.coeff(i));
  }
  return os.str();
}

}  // namespace gskit
