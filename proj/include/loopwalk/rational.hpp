#pragma once

// Arbitrary-precision rationals. gmpxx keeps every mpq_class result in
// canonical form (reduced, positive denominator) after each operation.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "loopwalk/errors.hpp"

namespace loopwalk {

using Rational = mpq_class;
using Integer = mpz_class;

/// Renders "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "p", "p/q" or "-p/q" (optional leading '+'). Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!is_digits(num) || !is_digits(den)) {
    throw ParseError("not a rational: '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

/// num / den in canonical form.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ParseError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational pow(const Rational& base, unsigned long exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

/// n! / (k_1! ... k_r!) with n = sum of parts.
inline Integer multinomial(const std::vector<std::size_t>& parts) {
  std::size_t total = 0;
  Integer out = 1;
  for (std::size_t k : parts) {
    total += k;
    out *= binomial(static_cast<long>(total), static_cast<long>(k));
  }
  return out;
}

}  // namespace loopwalk
