#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cochains {

/// Exact rational scalar. Every value in the library is kept in canonical
/// form (lowest terms, positive denominator); arithmetic on canonical
/// operands preserves that, and parse_rational() canonicalizes on entry.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Canonical text form: "p" for integers, "p/q" otherwise, sign on the
/// numerator, gcd(p, q) = 1, q > 0.
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Parses "p", "-p", or "p/q" with optional sign on the numerator.
/// Throws std::invalid_argument on anything else (including q = 0).
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("invalid rational literal: '" + std::string(text) + "'");
  };
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (den.empty()) fail();
  }
  auto check_digits = [&](std::string_view part, bool allow_sign) {
    if (part.empty()) fail();
    std::size_t start = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) start = 1;
    if (start == part.size()) fail();
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') fail();
  };
  check_digits(num, true);
  Integer n{std::string(num)};
  if (den.empty()) return Rational(n);
  check_digits(den, false);
  Integer d{std::string(den)};
  if (d == 0) fail();
  return Rational(n) / Rational(d);  // division canonicalizes
}

}  // namespace cochains
