#include <gtest/gtest.h>

#include <random>

#include "loopwalk/special_polys.hpp"
#include "loopwalk/umbral.hpp"
#include "oracles.hpp"

namespace loopwalk {
namespace {

const std::vector<Rational> kPoints = {Rational(0), Rational(1), Rational(-2), Rational(1, 2), Rational(7, 5)};

TEST(SpecialPolys, ConstantTermIsOne) {
  for (std::size_t p = 1; p <= 4; ++p) {
    for (const auto& x : kPoints) {
      EXPECT_EQ(bernoulli_poly(0, p, x), Rational(1));
      EXPECT_EQ(euler_poly(0, p, x), Rational(1));
    }
  }
}

TEST(SpecialPolys, SmallValues) {
  EXPECT_EQ(bernoulli_poly(2, 1, 0), Rational(1, 6));
  EXPECT_EQ(euler_poly(1, 1, Rational(3, 7)), Rational(3, 7) - Rational(1, 2));
  EXPECT_EQ(euler_poly(4, 1, Rational(1, 2)) * 16, Rational(5));
  for (std::size_t n = 2; n <= 16; ++n) EXPECT_EQ(bernoulli_poly(n, 1, 1), bernoulli_poly(n, 1, 0)) << n;
}

TEST(SpecialPolys, RejectsOrderZero) {
  EXPECT_THROW(bernoulli_poly(3, 0, 0), PreconditionError);
  EXPECT_THROW(euler_poly(3, 0, 0), PreconditionError);
}

TEST(SpecialPolys, NumberConventions) {
  EXPECT_EQ(euler_number(0), Rational(1));
  EXPECT_EQ(euler_number(2), Rational(-1));
  EXPECT_EQ(euler_number(4), Rational(5));
  for (std::size_t n = 1; n <= 15; n += 2) EXPECT_EQ(euler_number(n), Rational(0)) << n;
  EXPECT_EQ(bernoulli_number_at(1, 1), Rational(1, 2));
  EXPECT_EQ(bernoulli_number_at(1, 0), Rational(-1, 2));
  EXPECT_EQ(bernoulli_number_at(4, 0), Rational(-1, 30));
  EXPECT_EQ(bernoulli_number_at(4, 1), Rational(-1, 30));
  EXPECT_THROW(bernoulli_number_at(2, 2), PreconditionError);
}

TEST(SpecialPolys, EulerNumbersMatchSechOracle) {
  const auto oracle = oracle::euler_numbers(20);
  for (std::size_t n = 0; n <= 20; ++n) EXPECT_EQ(euler_number(n), oracle[n]) << n;
}

// Recurrence-based oracle, higher orders by binomial convolution.
TEST(SpecialPolys, AgreeWithRecurrenceOracle) {
  for (std::size_t p = 1; p <= 6; ++p) {
    for (const auto& x : kPoints) {
      for (std::size_t n = 0; n <= 20; ++n) {
        EXPECT_EQ(bernoulli_poly(n, p, x), oracle::bernoulli_poly(n, p, x)) << "B n=" << n << " p=" << p << " x=" << x;
        EXPECT_EQ(euler_poly(n, p, x), oracle::euler_poly(n, p, x)) << "E n=" << n << " p=" << p << " x=" << x;
      }
    }
  }
}

TEST(SpecialPolysProperty, Reflection) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational x = oracle::random_rational(rng);
    for (std::size_t p = 1; p <= 6; ++p) {
      const Rational px = Rational(static_cast<unsigned long>(p)) - x;
      for (std::size_t n = 0; n <= 12; ++n) {
        const Rational sign = n % 2 == 0 ? 1 : -1;
        EXPECT_EQ(euler_poly(n, p, px), sign * euler_poly(n, p, x));
        EXPECT_EQ(bernoulli_poly(n, p, px), sign * bernoulli_poly(n, p, x));
      }
    }
  }
}

TEST(SpecialPolysProperty, OrderAdditivity) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> order(1, 4);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t p = order(rng), q = order(rng);
    const Rational x = oracle::random_rational(rng), y = oracle::random_rational(rng);
    for (std::size_t n = 0; n <= 8; ++n) {
      Rational sum = 0;
      for (std::size_t k = 0; k <= n; ++k) {
        sum += Rational(binomial(static_cast<long>(n), static_cast<long>(k))) * euler_poly(k, p, x) *
               euler_poly(n - k, q, y);
      }
      EXPECT_EQ(sum, euler_poly(n, p + q, x + y));
    }
  }
}

TEST(SpecialPolys, MatchesUmbralMoments) {
  for (std::size_t p = 1; p <= 4; ++p) {
    for (const auto& x : kPoints) {
      const SymbolCombo e{x, {{SymbolKind::Euler, p, 1}}};
      const SymbolCombo b{x, {{SymbolKind::Bernoulli, p, 1}}};
      for (std::size_t n = 0; n <= 10; ++n) {
        EXPECT_EQ(combo_moment(e, n), euler_poly(n, p, x));
        EXPECT_EQ(combo_moment(b, n), bernoulli_poly(n, p, x));
      }
    }
  }
}

}  // namespace
}  // namespace loopwalk
