#include "gskit/exact.hpp"

#include "gskit/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <cstdlib>

namespace gskit {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Number parse_number(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  Number out;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      throw ConfigError("not a rational literal: '" + std::string(text) + "'");
    }
    const Integer d = parse_integer(den);
    if (d == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    out.exact = Rational(parse_integer(num), d);
    out.value = to_double(*out.exact);
    return out;
  }
  if (is_integer_literal(text)) {
    out.exact = Rational(parse_integer(text));
    out.value = to_double(*out.exact);
    return out;
  }
  const std::string s(text);
  char* end = nullptr;
  out.value = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("not a number: '" + s + "'");
  }
  return out;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const Integer n = numerator(q);
  const Integer d = denominator(q);
  const Integer rn = boost::multiprecision::sqrt(n);
  const Integer rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

}  // namespace gskit
