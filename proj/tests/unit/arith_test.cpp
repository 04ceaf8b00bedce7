#include <gtest/gtest.h>

#include "cdr/cyclotomic.hpp"
#include "cdr/errors.hpp"
#include "cdr/laurent.hpp"
#include "cdr/rational.hpp"

using namespace cdr;

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));
  EXPECT_EQ(Rational::parse("-3").str(), "-3");
  EXPECT_EQ(Rational(2, -4).str(), "-1/2");
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_THROW(Rational::parse("1/0"), InputError);
  EXPECT_THROW(Rational::parse("x"), InputError);
  EXPECT_THROW(Rational::parse(""), InputError);
}

TEST(Rational, ArithmeticAndOrder) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_LT(b, a);
  EXPECT_THROW(a / Rational(0), DomainError);
  EXPECT_THROW(Rational(1, 2).to_long(), DomainError);
  EXPECT_EQ(lcm_long(4, 6), 12);
}

TEST(Cyclotomic, CanonicalFormModuloCyclotomicPolynomial) {
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<long>{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<long>{1, 0, -1, 0, 1}));
  EXPECT_EQ(euler_phi(12), 4);
  // 1 + w + w^2 = 0 for a primitive cube root.
  const auto w = Cyclotomic::zeta(3, 1);
  EXPECT_TRUE((Cyclotomic(1) + w + w * w).is_zero());
  // i^2 = -1
  const auto i = Cyclotomic::root_of_unity(Rational(1, 4));
  EXPECT_EQ(i * i, Cyclotomic(-1));
  // zeta_6 = -zeta_3^2, compared across orders.
  EXPECT_EQ(Cyclotomic::zeta(6, 1), -(w * w));
  EXPECT_EQ(Cyclotomic::root_of_unity(Rational(1, 2)), Cyclotomic(-1));
  EXPECT_EQ(Cyclotomic::root_of_unity(Rational(5, 4)), i);
}

TEST(Cyclotomic, InverseAndRationality) {
  const auto z = Cyclotomic::zeta(5, 2);
  EXPECT_EQ(z * z.inverse(), Cyclotomic(1));
  const Cyclotomic x = Cyclotomic(2) + Cyclotomic::zeta(7, 3);
  EXPECT_EQ(x * x.inverse(), Cyclotomic(1));
  EXPECT_FALSE(x.is_rational());
  EXPECT_THROW(x.to_rational(), DomainError);
  // Sum of all 4th roots of unity vanishes; sum of a root and its conjugate is real.
  Cyclotomic s;
  for (int k = 0; k < 4; ++k) s += Cyclotomic::zeta(4, k);
  EXPECT_TRUE(s.is_zero());
  const auto c = Cyclotomic::zeta(6, 1) + Cyclotomic::zeta(6, 5);
  EXPECT_TRUE(c.is_rational());
  EXPECT_EQ(c.to_rational(), Rational(1));
  EXPECT_THROW(Cyclotomic().inverse(), DomainError);
}

TEST(Laurent, RationalFunctionCollapsesWhenExact) {
  const LaurentT t = LaurentT::monomial(Cyclotomic(1), 1);
  const LaurentT ti = LaurentT::monomial(Cyclotomic(1), -1);
  // 1/(1 - t^-1) + 1/(1 - t) = 1
  const RationalFunctionT f = RationalFunctionT(LaurentT(1), LaurentT(1) - ti) + RationalFunctionT(LaurentT(1), LaurentT(1) - t);
  ASSERT_TRUE(f.as_laurent().has_value());
  EXPECT_TRUE(f.is_constant());
  EXPECT_EQ(f.constant(), Cyclotomic(1));
  // (1 - t^3)/(1 - t) = 1 + t + t^2
  const RationalFunctionT g(LaurentT(1) - t * t * t, LaurentT(1) - t);
  EXPECT_EQ(*g.as_laurent(), LaurentT(1) + t + t * t);
  // 1/(1 - t) stays a genuine fraction.
  EXPECT_FALSE(RationalFunctionT(LaurentT(1), LaurentT(1) - t).as_laurent().has_value());
  EXPECT_THROW(RationalFunctionT(LaurentT(1), LaurentT()), DomainError);
}

TEST(Laurent, DivisionWithRemainder) {
  const LaurentT t = LaurentT::monomial(Cyclotomic(1), 1);
  const auto [q, r] = divide(t * t + LaurentT(1), t + LaurentT(1));
  EXPECT_EQ(q * (t + LaurentT(1)) + r, t * t + LaurentT(1));
  EXPECT_EQ(r, LaurentT(2));
  EXPECT_EQ((t * t + t).at_one(), Cyclotomic(2));
}
