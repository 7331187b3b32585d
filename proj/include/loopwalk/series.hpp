#pragma once

// Truncated formal power series over exact rationals.
//
// A Series of order T holds the plain coefficients of w^0..w^T. Binary
// operations on orders T1, T2 produce order min(T1, T2); the result is exact
// on that prefix. Factorial scaling happens only in egf_coeff().

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loopwalk/errors.hpp"
#include "loopwalk/rational.hpp"

namespace loopwalk {

inline constexpr std::size_t kDefaultOrder = 30;

class Series {
 public:
  /// The zero series of the given order.
  explicit Series(std::size_t order = kDefaultOrder) : coeffs_(order + 1) {}

  explicit Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw PreconditionError("series needs at least one coefficient");
  }

  static Series constant(const Rational& c, std::size_t order) {
    Series s(order);
    s.coeffs_[0] = c;
    return s;
  }
  static Series one(std::size_t order) { return constant(1, order); }
  static Series zero(std::size_t order) { return Series(order); }

  /// c * w^power, truncated at `order`.
  static Series monomial(std::size_t power, const Rational& c, std::size_t order) {
    Series s(order);
    if (power <= order) s.coeffs_[power] = c;
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
  Rational& operator[](std::size_t i) { return coeffs_.at(i); }
  std::span<const Rational> coeffs() const { return coeffs_; }

  Series truncated(std::size_t order) const {
    if (order > this->order()) {
      throw OrderMismatch("cannot extend series of order " + std::to_string(this->order()) +
                          " to " + std::to_string(order));
    }
    return Series(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
  }

  /// True when every odd-index coefficient vanishes.
  bool is_even() const {
    for (std::size_t i = 1; i < coeffs_.size(); i += 2) {
      if (coeffs_[i] != 0) return false;
    }
    return true;
  }

  friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

  Series& operator+=(const Series& other) { return *this = *this + other; }
  Series& operator-=(const Series& other) { return *this = *this - other; }
  Series& operator*=(const Series& other) { return *this = *this * other; }
  Series& operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= out.order(); ++i) out.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return out;
  }

  friend Series operator-(const Series& a, const Series& b) {
    Series out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= out.order(); ++i) out.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    return out;
  }

  friend Series operator-(const Series& a) {
    Series out(a.order());
    for (std::size_t i = 0; i <= out.order(); ++i) out.coeffs_[i] = -a.coeffs_[i];
    return out;
  }

  /// Cauchy product truncated to the smaller order.
  friend Series operator*(const Series& a, const Series& b) {
    const std::size_t order = std::min(a.order(), b.order());
    // Leading zeros are common (loop products, w-shifted factors); skip them.
    std::size_t a_low = 0, b_low = 0;
    while (a_low <= order && a.coeffs_[a_low] == 0) ++a_low;
    while (b_low <= order && b.coeffs_[b_low] == 0) ++b_low;
    Series out(order);
    Rational term;
    for (std::size_t k = a_low + b_low; k <= order; ++k) {
      Rational& acc = out.coeffs_[k];
      for (std::size_t i = a_low; i + b_low <= k; ++i) {
        if (a.coeffs_[i] == 0) continue;
        mpq_mul(term.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[k - i].get_mpq_t());
        acc += term;
      }
    }
    return out;
  }

  friend Series operator*(const Series& a, const Rational& c) {
    Series out = a;
    out *= c;
    return out;
  }
  friend Series operator*(const Rational& c, const Series& a) { return a * c; }

 private:
  std::vector<Rational> coeffs_;
};

/// Multiplicative inverse up to truncation. Requires a nonzero constant term.
inline Series reciprocal(const Series& a) {
  if (a[0] == 0) throw ZeroConstantTerm();
  const std::size_t order = a.order();
  const Rational inv0 = 1 / a[0];
  Series r(order);
  r[0] = inv0;
  Rational acc, term;
  for (std::size_t k = 1; k <= order; ++k) {
    acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (a[i] == 0) continue;
      mpq_mul(term.get_mpq_t(), a[i].get_mpq_t(), r[k - i].get_mpq_t());
      acc += term;
    }
    r[k] = -acc * inv0;
  }
  return r;
}

/// a / w^k. The first k coefficients must vanish; the result has order a.order() - k.
inline Series divide_by_w_power(const Series& a, std::size_t k) {
  if (k > a.order()) throw IndexOutOfOrder(k, a.order());
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] != 0) throw NonzeroLowCoefficient(i);
  }
  std::vector<Rational> out(a.coeffs().begin() + static_cast<std::ptrdiff_t>(k), a.coeffs().end());
  return Series(std::move(out));
}

/// a * w^k. Exact to order a.order() + k.
inline Series multiply_by_w_power(const Series& a, std::size_t k) {
  std::vector<Rational> out(a.order() + k + 1);
  std::copy(a.coeffs().begin(), a.coeffs().end(), out.begin() + static_cast<std::ptrdiff_t>(k));
  return Series(std::move(out));
}

/// a(c*w): coefficient j is multiplied by c^j.
inline Series scale_argument(const Series& a, const Rational& c) {
  Series out = a;
  Rational factor = 1;
  for (std::size_t j = 0; j <= out.order(); ++j) {
    out[j] *= factor;
    factor *= c;
  }
  return out;
}

inline Series pow(const Series& base, std::size_t exponent) {
  Series result = Series::one(base.order());
  Series square = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= square;
    exponent >>= 1U;
    if (exponent > 0) square *= square;
  }
  return result;
}

/// Sum_{n<=T} c^n w^n / n!
inline Series exp_series(const Rational& c, std::size_t order) {
  Series s(order);
  Rational term = 1;
  for (std::size_t n = 0; n <= order; ++n) {
    s[n] = term;
    term *= c;
    term /= static_cast<unsigned long>(n + 1);
  }
  return s;
}

/// cosh(c w)
inline Series cosh_series(const Rational& c, std::size_t order) {
  Series s(order);
  for (std::size_t n = 0; n <= order; n += 2) s[n] = pow(c, n) / Rational(factorial(n));
  return s;
}

/// sinh(c w) / w
inline Series sinh_over_w_series(const Rational& c, std::size_t order) {
  Series s(order);
  for (std::size_t n = 0; n <= order; n += 2) s[n] = pow(c, n + 1) / Rational(factorial(n + 1));
  return s;
}

/// sinh(c w) / (c w), equal to 1 at c = 0.
inline Series sinhc_series(const Rational& c, std::size_t order) {
  Series s(order);
  for (std::size_t n = 0; n <= order; n += 2) s[n] = pow(c, n) / Rational(factorial(n + 1));
  return s;
}

/// (e^{c w} - 1) / (c w), equal to 1 at c = 0.
inline Series exprel_series(const Rational& c, std::size_t order) {
  Series s(order);
  for (std::size_t n = 0; n <= order; ++n) s[n] = pow(c, n) / Rational(factorial(n + 1));
  return s;
}

/// n! times the coefficient of w^n.
inline Rational egf_coeff(const Series& a, std::size_t n) {
  if (n > a.order()) throw IndexOutOfOrder(n, a.order());
  return a[n] * Rational(factorial(n));
}

/// Evaluates the truncated polynomial at a rational point.
inline Rational evaluate(const Series& a, const Rational& x) {
  Rational acc = 0;
  for (std::size_t j = a.order() + 1; j-- > 0;) acc = acc * x + a[j];
  return acc;
}

}  // namespace loopwalk
