#pragma once

// Generating-function forms of the Bernoulli/Euler identities obtained from
// the loop decomposition on equally spaced sites a_j = j.
//
// Reflected BM with m loops: L_1 = s^2/2 and L_j = s^2/4 (j >= 2), s = sech w,
// so the denominator is 1 - P_m(s) and
//
//   2^m sech((m+1) w) = s^{m+1} / (1 - P_m(s)).
//
// Bessel(3) with m loops: every loop is s^2/4, the denominator is 1 - Q_m(s) and
//
//   (m+2) w / sinh((m+2) w) = ((m+2) w / sinh 2w) (s/2)^m / (1 - Q_m(s)).
//
// These closed forms are checked exactly. The rearranged infinite k-sums that
// turn them into polynomial identities are only exposed as partial sums.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "loopwalk/loop_engine.hpp"
#include "loopwalk/report.hpp"
#include "loopwalk/series.hpp"
#include "loopwalk/special_polys.hpp"

namespace loopwalk {

/// coeff * s^power
struct Monomial {
  std::size_t power = 0;
  Rational coeff;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

using BracketPoly = std::vector<Monomial>;

enum class IdentityModel { BM, Bessel };

struct IdentitySpec {
  IdentityModel model = IdentityModel::BM;
  std::size_t m = 1;
  std::size_t order = kDefaultOrder;
  std::vector<Rational> x_points;
};

inline Series sech_series(std::size_t order) { return reciprocal(cosh_series(1, order)); }

inline Series evaluate_bracket(const BracketPoly& poly, const Series& s) {
  Series out = Series::zero(s.order());
  for (const auto& term : poly) out += pow(s, term.power) * term.coeff;
  return out;
}

/// P_m(s) = sum_j (-1)^{j+1} [ n(1,j,m) / 2^{2j-1} + N(j,m-1) / 2^{2j} ] s^{2j}
inline BracketPoly bm_bracket_poly(std::size_t m) {
  if (m == 0) throw PreconditionError("bm_bracket_poly needs m >= 1");
  BracketPoly poly;
  for (std::size_t j = 1; 2 * j - 1 <= m; ++j) {
    const Rational with_first = make_rational(count_with_initial(1, j, m), Integer(1) << (2 * j - 1));
    const Rational without_first = make_rational(count_nonadjacent(j, m - 1), Integer(1) << (2 * j));
    Rational coeff = with_first + without_first;
    if (j % 2 == 0) coeff = -coeff;
    if (coeff != 0) poly.push_back({2 * j, coeff});
  }
  return poly;
}

/// Q_m(s) = sum_j (-1)^{j+1} N(j, m) s^{2j} / 4^j
inline BracketPoly bessel_bracket_poly(std::size_t m) {
  if (m == 0) throw PreconditionError("bessel_bracket_poly needs m >= 1");
  BracketPoly poly;
  for (std::size_t j = 1; 2 * j - 1 <= m; ++j) {
    Rational coeff = make_rational(count_nonadjacent(j, m), Integer(1) << (2 * j));
    if (j % 2 == 0) coeff = -coeff;
    if (coeff != 0) poly.push_back({2 * j, coeff});
  }
  return poly;
}

/// 2^m sech((m+1) w)  vs  sech^{m+1} w / (1 - P_m(sech w))
inline VerificationReport bm_master_check(std::size_t m, std::size_t order = kDefaultOrder) {
  const Series s = sech_series(order);
  const Series lhs = reciprocal(cosh_series(static_cast<unsigned long>(m + 1), order)) *
                     pow(Rational(2), m);
  const Series rhs = pow(s, m + 1) *
                     reciprocal(Series::one(order) - evaluate_bracket(bm_bracket_poly(m), s));
  return compare_series(lhs, rhs);
}

/// (m+2) w / sinh((m+2) w)  vs  ((m+2) w / sinh 2w) (s/2)^m / (1 - Q_m(s))
inline VerificationReport bessel_master_check(std::size_t m, std::size_t order = kDefaultOrder) {
  if (m == 0) throw PreconditionError("bessel_master_check needs m >= 1");
  const Series s = sech_series(order);
  const Rational width(static_cast<unsigned long>(m + 2));
  const Series lhs = reciprocal(sinhc_series(width, order));
  // (m+2) w / sinh(2w) = ((m+2)/2) * 2w / sinh(2w)
  const Series prefactor = reciprocal(sinhc_series(2, order)) * (width / 2);
  const Series rhs = prefactor * pow(s * Rational(1, 2), m) *
                     reciprocal(Series::one(order) - evaluate_bracket(bessel_bracket_poly(m), s));
  return compare_series(lhs, rhs);
}

/// The three-loop Bessel example at generating-function level:
///
///   t (e^{2t/5} - 1) / (e^t - 1) e^{tx/5}
///     = t e^{tx/5} h^3 / (1 - 3 e^{t/5} h^2 + e^{2t/5} h^4),   h = 1 / (e^{t/5} + 1).
///
/// The left side is built by cancelling t from numerator and denominator; the
/// right side is the closed form of the geometric k-sum.
inline VerificationReport egf_proof_check(const Rational& x, std::size_t order = 20) {
  const Rational fifth(1, 5);
  const Series shift = exp_series(x * fifth, order);
  // (e^{2t/5} - 1) / (e^t - 1) = (2/5) exprel(2t/5) / exprel(t)
  const Series lhs_body = exprel_series(2 * fifth, order) * reciprocal(exprel_series(1, order)) *
                          Rational(2, 5) * shift;
  const Series lhs = multiply_by_w_power(lhs_body, 1).truncated(order);

  const Series e = exp_series(fifth, order);
  Series e_plus_one = e;
  e_plus_one[0] += 1;
  const Series h = reciprocal(e_plus_one);
  const Series h2 = h * h;
  const Series denom = Series::one(order) - e * h2 * Rational(3) + e * e * h2 * h2;
  const Series rhs_body = shift * h2 * h * reciprocal(denom);
  const Series rhs = multiply_by_w_power(rhs_body, 1).truncated(order);
  return compare_series(lhs, rhs);
}

namespace detail {

/// Calls visit(parts) for every composition of `total` into `parts_count` nonnegative parts.
inline void for_each_composition(std::size_t total, std::size_t parts_count,
                                 const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> parts(parts_count, 0);
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t index, std::size_t left) {
    if (index + 1 == parts_count) {
      parts[index] = left;
      visit(parts);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      parts[index] = v;
      fill(index + 1, left - v);
    }
  };
  if (parts_count == 0) {
    if (total == 0) visit(parts);
    return;
  }
  fill(0, total);
}

/// Row k of sum_k sum_{|k_vec| = k} multinom(k_vec) prod c_j^{k_j} * f(sum_j j k_j).
inline Rational bracket_row(const BracketPoly& poly, std::size_t k,
                            const std::function<Rational(std::size_t)>& f) {
  Rational row = 0;
  for_each_composition(k, poly.size(), [&](const std::vector<std::size_t>& parts) {
    Rational weight(multinomial(parts));
    std::size_t shift = 0;
    for (std::size_t j = 0; j < poly.size(); ++j) {
      weight *= pow(poly[j].coeff, parts[j]);
      shift += (poly[j].power / 2) * parts[j];
    }
    row += weight * f(shift);
  });
  return row;
}

}  // namespace detail

/// Partial sums S_0..S_K of a rearranged identity, grouped by k with complete inner sums.
struct PartialSums {
  std::vector<Rational> partial;      // S_0..S_K
  std::vector<Rational> partial_alt;  // alternative Euler-order variant, empty if none
  Rational target;
};

/// E_n(x/(m+1)) = (m+1)^{-n} sum_k sum_{k_vec} multinom prod c_j^{k_j} / 2^m
///                 * E_n^{(m+1+2 sigma)}(sigma + x),   sigma = sum_j j k_j,
/// with c_j the coefficients of P_m. `partial_alt` uses Euler order m + 2 sigma.
inline PartialSums euler_identity_partial(std::size_t m, std::size_t n, const Rational& x, std::size_t max_k) {
  const BracketPoly poly = bm_bracket_poly(m);
  const Rational m_plus_one(static_cast<unsigned long>(m + 1));
  const Rational scale = 1 / (pow(m_plus_one, n) * pow(Rational(2), m));
  PartialSums out;
  out.target = euler_poly(n, 1, x / m_plus_one);
  Rational acc = 0, acc_alt = 0;
  for (std::size_t k = 0; k <= max_k; ++k) {
    acc += scale * detail::bracket_row(poly, k, [&](std::size_t sigma) {
      return euler_poly(n, m + 1 + 2 * sigma, Rational(static_cast<unsigned long>(sigma)) + x);
    });
    acc_alt += scale * detail::bracket_row(poly, k, [&](std::size_t sigma) {
      return euler_poly(n, m + 2 * sigma, Rational(static_cast<unsigned long>(sigma)) + x);
    });
    out.partial.push_back(acc);
    out.partial_alt.push_back(acc_alt);
  }
  return out;
}

/// B_{n+1}((2+x)/(m+2)) - B_{n+1}(x/(m+2))
///   = (n+1)/(m+2)^n sum_k sum_{k_vec} multinom prod q_j^{k_j} / 2^m
///     * E_n^{(m+2 sigma)}(sigma + x),
/// with q_j the coefficients of Q_m.
inline PartialSums bessel_identity_partial(std::size_t m, std::size_t n, const Rational& x, std::size_t max_k) {
  const BracketPoly poly = bessel_bracket_poly(m);
  const Rational width(static_cast<unsigned long>(m + 2));
  const Rational scale = Rational(static_cast<unsigned long>(n + 1)) / (pow(width, n) * pow(Rational(2), m));
  PartialSums out;
  out.target = bernoulli_poly(n + 1, 1, (2 + x) / width) - bernoulli_poly(n + 1, 1, x / width);
  Rational acc = 0;
  for (std::size_t k = 0; k <= max_k; ++k) {
    acc += scale * detail::bracket_row(poly, k, [&](std::size_t sigma) {
      return euler_poly(n, m + 2 * sigma, Rational(static_cast<unsigned long>(sigma)) + x);
    });
    out.partial.push_back(acc);
  }
  return out;
}

struct TailReport {
  std::size_t max_k = 0;
  std::vector<Rational> errors;  // [w^j] (1/(1-P) - sum_{k<=K} P^k)
};

/// Truncation error of the geometric sum of the bracket evaluated at s = sech w.
inline TailReport geometric_tail_report(const BracketPoly& bracket, std::size_t order, std::size_t max_k) {
  const Series p = evaluate_bracket(bracket, sech_series(order));
  if (abs(p[0]) >= 1) {
    throw ContractionViolated("bracket value at w = 0 is " + to_string(p[0]) + ", |.| >= 1");
  }
  const Series exact = reciprocal(Series::one(order) - p);
  Series partial = Series::one(order);
  Series power = Series::one(order);
  for (std::size_t k = 1; k <= max_k; ++k) {
    power *= p;
    partial += power;
  }
  TailReport report{max_k, {}};
  const Series diff = exact - partial;
  report.errors.assign(diff.coeffs().begin(), diff.coeffs().end());
  return report;
}

/// Runs the exact closed-form check for a spec. For the three-loop Bessel case
/// the generating-function proof is also checked at every x point.
inline std::vector<std::pair<std::string, VerificationReport>> verify_identity(const IdentitySpec& spec) {
  std::vector<std::pair<std::string, VerificationReport>> out;
  if (spec.model == IdentityModel::BM) {
    out.emplace_back("bm_master", bm_master_check(spec.m, spec.order));
  } else {
    out.emplace_back("bessel_master", bessel_master_check(spec.m, spec.order));
    if (spec.m == 3) {
      for (const auto& x : spec.x_points) {
        out.emplace_back("egf_proof x=" + to_string(x), egf_proof_check(x, spec.order));
      }
    }
  }
  return out;
}

}  // namespace loopwalk
