#pragma once

// Higher-order Bernoulli and Euler polynomials through their exponential
// generating functions
//
//   (t / (e^t - 1))^p e^{x t} = sum_n B_n^{(p)}(x) t^n / n!
//   (2 / (e^t + 1))^p e^{x t} = sum_n E_n^{(p)}(x) t^n / n!
//
// Both are evaluated by exact series division; no closed-form sums are used.

#include <cstddef>

#include "loopwalk/rational.hpp"
#include "loopwalk/series.hpp"

namespace loopwalk {

/// (t / (e^t - 1))^p e^{x t} to order T.
inline Series bernoulli_egf(std::size_t p, const Rational& x, std::size_t order) {
  return pow(reciprocal(exprel_series(1, order)), p) * exp_series(x, order);
}

/// (2 / (e^t + 1))^p e^{x t} to order T.
inline Series euler_egf(std::size_t p, const Rational& x, std::size_t order) {
  // (e^t + 1) / 2 = 1 + (e^t - 1) / 2
  Series half_sum = exp_series(1, order) * Rational(1, 2);
  half_sum[0] = 1;
  return pow(reciprocal(half_sum), p) * exp_series(x, order);
}

/// B_n^{(p)}(x)
inline Rational bernoulli_poly(std::size_t n, std::size_t p, const Rational& x) {
  if (p == 0) throw PreconditionError("polynomial order p must be >= 1");
  return egf_coeff(bernoulli_egf(p, x, n), n);
}

/// E_n^{(p)}(x)
inline Rational euler_poly(std::size_t n, std::size_t p, const Rational& x) {
  if (p == 0) throw PreconditionError("polynomial order p must be >= 1");
  return egf_coeff(euler_egf(p, x, n), n);
}

/// E_n = 2^n E_n(1/2), the coefficients of sech.
inline Rational euler_number(std::size_t n) {
  return pow(Rational(2), n) * euler_poly(n, 1, Rational(1, 2));
}

/// B_n(x0) for x0 in {0, 1}. Both conventions are exposed explicitly: the
/// umbral evaluation uses B_n(0) (B_1 = -1/2), the other B_n(1) (B_1 = +1/2).
inline Rational bernoulli_number_at(std::size_t n, int x0) {
  if (x0 != 0 && x0 != 1) throw PreconditionError("bernoulli_number_at expects x0 in {0, 1}");
  return bernoulli_poly(n, 1, Rational(x0));
}

}  // namespace loopwalk
