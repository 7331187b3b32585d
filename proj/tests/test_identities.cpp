#include <gtest/gtest.h>

#include "loopwalk/identities.hpp"
#include "loopwalk/models.hpp"
#include "oracles.hpp"

namespace loopwalk {
namespace {

TEST(Bracket, BrownianExamples) {
  EXPECT_EQ(bm_bracket_poly(1), (BracketPoly{{2, Rational(1, 2)}}));
  EXPECT_EQ(bm_bracket_poly(3), (BracketPoly{{2, 1}, {4, Rational(-1, 8)}}));
  EXPECT_EQ(bm_bracket_poly(4), (BracketPoly{{2, Rational(5, 4)}, {4, Rational(-5, 16)}}));
  // The triple {5,3,1} enters the denominator with a minus sign, so P_5 carries +1/32 s^6.
  EXPECT_EQ(bm_bracket_poly(5), (BracketPoly{{2, Rational(3, 2)}, {4, Rational(-9, 16)}, {6, Rational(1, 32)}}));
}

TEST(Bracket, BesselExamples) {
  EXPECT_EQ(bessel_bracket_poly(3), (BracketPoly{{2, Rational(3, 4)}, {4, Rational(-1, 16)}}));
  EXPECT_EQ(bessel_bracket_poly(4), (BracketPoly{{2, 1}, {4, Rational(-3, 16)}}));
  EXPECT_THROW(bessel_bracket_poly(0), PreconditionError);
}

TEST(Bracket, MatchesLoopDenominators) {
  const std::size_t order = 20;
  const Series s = sech_series(order);
  for (std::size_t m = 1; m <= 6; ++m) {
    const Series bm = Series::one(order) - evaluate_bracket(bm_bracket_poly(m), s);
    EXPECT_EQ(bm, denominator_series(bm_system(SiteConfig::equally_spaced(m + 2), order).loops)) << m;
    const Series bessel = Series::one(order) - evaluate_bracket(bessel_bracket_poly(m), s);
    EXPECT_EQ(bessel, denominator_series(bessel_system(SiteConfig::equally_spaced(m + 3), order).loops)) << m;
  }
}

TEST(MasterCheck, Brownian) {
  for (std::size_t m = 1; m <= 6; ++m) EXPECT_TRUE(bm_master_check(m, 30).equal) << m;
}

TEST(MasterCheck, Bessel) {
  for (std::size_t m = 1; m <= 5; ++m) EXPECT_TRUE(bessel_master_check(m, 30).equal) << m;
  EXPECT_THROW(bessel_master_check(0, 10), PreconditionError);
}

TEST(MasterCheck, WrongBracketIsDetected) {
  // A perturbed pair coefficient in P_3 must break the identity.
  const std::size_t order = 12;
  const Series s = sech_series(order);
  const Series lhs = reciprocal(cosh_series(4, order)) * Rational(8);
  const BracketPoly wrong{{2, 1}, {4, Rational(-1, 16)}};
  const Series rhs = pow(s, 4) * reciprocal(Series::one(order) - evaluate_bracket(wrong, s));
  EXPECT_FALSE(compare_series(lhs, rhs).equal);
}

TEST(EgfProof, PassesAtSamplePoints) {
  for (const Rational& x : {Rational(0), Rational(1), Rational(-2), Rational(1, 2), Rational(7, 5)}) {
    EXPECT_TRUE(egf_proof_check(x, 20).equal) << x;
  }
}

TEST(EgfProof, CoefficientsAreBernoulliDifferences) {
  // n! [t^n] t (e^{(x+2)t/5} - e^{xt/5}) / (e^t - 1) = B_n((x+2)/5) - B_n(x/5)
  const std::size_t order = 14;
  for (const Rational& x : {Rational(0), Rational(3, 2)}) {
    Series numerator = exp_series((x + 2) / 5, order + 1) - exp_series(x / 5, order + 1);
    Series e_minus_one = exp_series(1, order + 1);
    e_minus_one[0] -= 1;
    const Series lhs = numerator * reciprocal(divide_by_w_power(e_minus_one, 1));
    for (std::size_t n = 0; n <= order; ++n) {
      EXPECT_EQ(egf_coeff(lhs.truncated(order), n),
                oracle::bernoulli_poly(n, 1, (x + 2) / 5) - oracle::bernoulli_poly(n, 1, x / 5));
    }
    if (x == 0) {
      EXPECT_EQ(egf_coeff(lhs, 1), Rational(2, 5));
    }
  }
}

TEST(PartialSums, Targets) {
  EXPECT_EQ(euler_identity_partial(3, 2, 1, 0).target, Rational(-3, 16));
  EXPECT_EQ(euler_identity_partial(4, 1, 0, 0).target, Rational(-1, 2));
  EXPECT_EQ(bessel_identity_partial(3, 0, 0, 0).target, Rational(2, 5));
}

TEST(PartialSums, DegreeZeroRowsAreTheGeometricSeriesAtZero) {
  // With n = 0 every Euler factor is 1, so row k is P_3(1)^k / 2^3 = 7^k / 8^{k+1}.
  const auto sums = euler_identity_partial(3, 0, 0, 30);
  Rational expected = 0;
  for (std::size_t k = 0; k <= 30; ++k) {
    expected += pow(Rational(7), k) / pow(Rational(8), k + 1);
    EXPECT_EQ(sums.partial[k], expected);
  }
  EXPECT_LT(Rational(abs(sums.partial.back() - sums.target)), Rational(1, 50));
}

// Rows in the closed two-index form, summed directly.
Rational bessel_three_loop(std::size_t n, const Rational& x, std::size_t max_k) {
  Rational sum = 0;
  for (std::size_t k = 0; k <= max_k; ++k) {
    for (std::size_t l = 0; l <= k; ++l) {
      const Rational sign = l % 2 == 0 ? 1 : -1;
      sum += pow(Rational(3), k) / pow(Rational(2), 2 * k + 3) * Rational(binomial(static_cast<long>(k), static_cast<long>(l))) *
             sign / pow(Rational(12), l) * oracle::euler_poly(n, 2 * k + 2 * l + 3, Rational(static_cast<unsigned long>(k + l)) + x);
    }
  }
  return sum * Rational(static_cast<unsigned long>(n + 1)) / pow(Rational(5), n);
}

Rational bessel_four_loop(std::size_t n, const Rational& x, std::size_t max_k) {
  Rational sum = 0;
  for (std::size_t k = 0; k <= max_k; ++k) {
    for (std::size_t l = 0; l <= k; ++l) {
      const Rational sign = l % 2 == 0 ? 1 : -1;
      sum += pow(Rational(4), k) / pow(Rational(2), 2 * k + 4) * Rational(binomial(static_cast<long>(k), static_cast<long>(l))) *
             sign * pow(Rational(3), l) / pow(Rational(4), 2 * l) *
             oracle::euler_poly(n, 2 * k + 2 * l + 4, Rational(static_cast<unsigned long>(k + l)) + x);
    }
  }
  return sum * Rational(static_cast<unsigned long>(n + 1)) / pow(Rational(6), n);
}

Rational brownian_three_loop(std::size_t n, const Rational& x, std::size_t max_k) {
  // E_n(x/4) = 4^{-n} sum (-1)^l C(k,l) / 8^{l+1} E_n^{(2k+2l+4)}(x + k + l)
  Rational sum = 0;
  for (std::size_t k = 0; k <= max_k; ++k) {
    for (std::size_t l = 0; l <= k; ++l) {
      const Rational sign = l % 2 == 0 ? 1 : -1;
      sum += sign * Rational(binomial(static_cast<long>(k), static_cast<long>(l))) / pow(Rational(8), l + 1) *
             oracle::euler_poly(n, 2 * k + 2 * l + 4, Rational(static_cast<unsigned long>(k + l)) + x);
    }
  }
  return sum / pow(Rational(4), n);
}

Rational brownian_four_loop(std::size_t n, const Rational& x, std::size_t max_k) {
  Rational sum = 0;
  for (std::size_t k = 0; k <= max_k; ++k) {
    for (std::size_t l = 0; l <= k; ++l) {
      const Rational sign = l % 2 == 0 ? 1 : -1;
      sum += pow(Rational(5), k) * sign / pow(Rational(2), 2 * k + 2 * l + 4) *
             Rational(binomial(static_cast<long>(k), static_cast<long>(l))) *
             oracle::euler_poly(n, 2 * l + 2 * k + 5, x + Rational(static_cast<unsigned long>(l + k)));
    }
  }
  return sum / pow(Rational(5), n);
}

Rational brownian_five_loop(std::size_t n, const Rational& x, std::size_t max_k) {
  // coefficient (-1)^{n1} 3^{k+n1-n2} / 2^{k+3n1+4n2+5} times the trinomial
  Rational sum = 0;
  for (std::size_t k = 0; k <= max_k; ++k) {
    for (std::size_t n1 = 0; n1 <= k; ++n1) {
      for (std::size_t n2 = 0; n1 + n2 <= k; ++n2) {
        const Rational sign = n1 % 2 == 0 ? 1 : -1;
        sum += sign * pow(Rational(3), k + n1) / pow(Rational(3), n2) / pow(Rational(2), k + 3 * n1 + 4 * n2 + 5) *
               Rational(multinomial({k - n1 - n2, n1, n2})) *
               oracle::euler_poly(n, 2 * k + 2 * n1 + 4 * n2 + 6, x + Rational(static_cast<unsigned long>(k + n1 + 2 * n2)));
      }
    }
  }
  return sum / pow(Rational(6), n);
}

TEST(PartialSums, MatchWorkedExampleRows) {
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const Rational& x : {Rational(0), Rational(2, 3)}) {
      for (std::size_t K : {0, 1, 4}) {
        EXPECT_EQ(bessel_identity_partial(3, n, x, K).partial[K], bessel_three_loop(n, x, K));
        EXPECT_EQ(bessel_identity_partial(4, n, x, K).partial[K], bessel_four_loop(n, x, K));
        EXPECT_EQ(euler_identity_partial(3, n, x, K).partial[K], brownian_three_loop(n, x, K));
        EXPECT_EQ(euler_identity_partial(4, n, x, K).partial[K], brownian_four_loop(n, x, K));
        EXPECT_EQ(euler_identity_partial(5, n, x, K).partial[K], brownian_five_loop(n, x, K));
      }
    }
  }
}

TEST(PartialSums, AlternativeVariantIsReported) {
  const auto sums = euler_identity_partial(3, 2, 1, 5);
  ASSERT_EQ(sums.partial_alt.size(), sums.partial.size());
  EXPECT_NE(sums.partial_alt.back(), sums.partial.back());
  EXPECT_TRUE(bessel_identity_partial(3, 2, 1, 5).partial_alt.empty());
}

TEST(Tail, ZeroAndTrivialCases) {
  const auto zero = geometric_tail_report({}, 10, 5);
  for (const auto& e : zero.errors) EXPECT_EQ(e, Rational(0));
  const BracketPoly p3 = bm_bracket_poly(3);
  const auto k0 = geometric_tail_report(p3, 10, 0);
  const Series exact = reciprocal(Series::one(10) - evaluate_bracket(p3, sech_series(10)));
  EXPECT_EQ(k0.errors[0], exact[0] - 1);
  EXPECT_EQ(exact[0], Rational(8));
  EXPECT_THROW(geometric_tail_report({{2, 1}}, 10, 5), ContractionViolated);
}

TEST(Tail, ThreeLoopBrownianErrorsShrink) {
  // The constant coefficient decays like (7/8)^K, coefficient 2j picks up a
  // factor of order K^j, so only the lowest coefficients are tiny at K = 200.
  const BracketPoly p3 = bm_bracket_poly(3);
  const auto at50 = geometric_tail_report(p3, 10, 50);
  const auto at200 = geometric_tail_report(p3, 10, 200);
  for (std::size_t j = 0; j <= 10; j += 2) {
    EXPECT_LT(abs(at200.errors[j]), abs(at50.errors[j])) << j;
  }
  EXPECT_LT(abs(at200.errors[0]), Rational(1, 100000000));
  EXPECT_LT(abs(at200.errors[2]), Rational(1, 100000000));
  EXPECT_GT(abs(at200.errors[10]), Rational(1, 100000000));
  for (std::size_t j = 1; j <= 9; j += 2) EXPECT_EQ(at200.errors[j], Rational(0));
}

TEST(VerifyIdentity, NamedReports) {
  const auto bm = verify_identity({IdentityModel::BM, 3, 20, {}});
  ASSERT_EQ(bm.size(), 1U);
  EXPECT_EQ(bm[0].first, "bm_master");
  EXPECT_TRUE(bm[0].second.equal);
  const auto bessel = verify_identity({IdentityModel::Bessel, 3, 20, {0, 1}});
  ASSERT_EQ(bessel.size(), 3U);
  for (const auto& [name, report] : bessel) EXPECT_TRUE(report.equal) << name;
}

}  // namespace
}  // namespace loopwalk
