#include <gtest/gtest.h>

#include "cdr/errors.hpp"
#include "cdr/fock.hpp"
#include "oracles.hpp"

using namespace cdr;

namespace {

Monomial vac() { return {}; }

Monomial single(const FockModule& m, Family f, int dir, const Rational& level) {
  auto v = m.apply_mode(m.mode(f, dir, level), Monomial{});
  return v.begin()->first;
}

}  // namespace

TEST(Twist, ParseAndValidate) {
  const auto t = TwistData::parse("0,1/2");
  EXPECT_EQ(t.n, 2);
  EXPECT_EQ(t.order, 2);
  EXPECT_EQ(t.shift(), Rational(1, 2));
  EXPECT_EQ(t.fixed_directions(), 1);
  EXPECT_EQ(t.str(), "0,1/2");
  EXPECT_THROW(TwistData::parse("2/2"), InputError);
  EXPECT_THROW(TwistData::parse("a/2"), InputError);
  EXPECT_THROW(TwistData::parse("1/0"), InputError);
  EXPECT_EQ(TwistData::parse("0").order, 1);
}

TEST(Fock, LevelLattices) {
  const FockModule u(TwistData::identity(1));
  EXPECT_TRUE(u.on_lattice(Family::B, 0, 0));
  EXPECT_TRUE(FockModule::is_annihilator(Family::A, 0));
  EXPECT_FALSE(FockModule::is_annihilator(Family::B, 0));

  const FockModule t(TwistData::parse("1/2"));
  EXPECT_NO_THROW(t.mode(Family::A, 0, Rational(1, 2)));
  EXPECT_NO_THROW(t.mode(Family::B, 0, Rational(-1, 2)));
  EXPECT_THROW(t.mode(Family::B, 0, Rational(0)), DomainError);
  EXPECT_THROW(t.mode(Family::Phi, 0, Rational(0)), DomainError);
  EXPECT_THROW(t.mode(Family::A, 0, Rational(1, 3)), DomainError);

  const FockModule m(TwistData::parse("0,1/2"));
  EXPECT_NO_THROW(m.mode(Family::Phi, 0, Rational(0)));
  EXPECT_THROW(m.mode(Family::Phi, 1, Rational(0)), DomainError);
}

TEST(Fock, ModeActionBasics) {
  const FockModule m(TwistData::identity(1));
  const Monomial b1 = single(m, Family::B, 0, Rational(-1));
  EXPECT_EQ(m.apply_mode(m.mode(Family::A, 0, Rational(1)), b1), (StateVector{{vac(), Rational(1)}}));
  EXPECT_TRUE(m.apply_mode(m.mode(Family::Psi, 0, Rational(0)), vac()).empty());
  const Monomial phi0 = single(m, Family::Phi, 0, Rational(0));
  EXPECT_TRUE(m.apply_mode(m.mode(Family::Phi, 0, Rational(0)), phi0).empty());
  // b_1 a_{-1}^2 |0> = -2 a_{-1} |0>
  auto a2 = m.apply_mode(m.mode(Family::A, 0, Rational(-1)), single(m, Family::A, 0, Rational(-1)));
  const auto r = m.apply_mode(m.mode(Family::B, 0, Rational(1)), a2);
  EXPECT_EQ(r, (StateVector{{single(m, Family::A, 0, Rational(-1)), Rational(-2)}}));
}

TEST(Fock, FermionSigns) {
  const FockModule m(TwistData::identity(1));
  const Mode p1 = m.mode(Family::Psi, 0, Rational(-1));
  const Mode f0 = m.mode(Family::Phi, 0, Rational(0));
  const auto ab = m.apply_mode(p1, m.apply_mode(f0, vac()));
  const auto ba = m.apply_mode(f0, m.apply_mode(p1, vac()));
  ASSERT_EQ(ab.size(), 1u);
  EXPECT_EQ(ab.begin()->first, ba.begin()->first);
  EXPECT_EQ(ab.begin()->second, -ba.begin()->second);
}

TEST(Fock, WeightAndCharge) {
  const FockModule t(TwistData::parse("1/2"));
  EXPECT_EQ(t.state_weight(vac()), Rational(0));
  EXPECT_EQ(t.state_charge(vac()), Rational(1, 2));
  const Monomial psi = single(t, Family::Psi, 0, Rational(-1, 2));
  EXPECT_EQ(t.state_weight(psi), Rational(1, 2));
  EXPECT_EQ(t.state_charge(psi), Rational(-1, 2));
}

TEST(Fock, SmallBases) {
  const FockModule u(TwistData::identity(1));
  const auto b0 = u.basis_up_to(Rational(0));
  ASSERT_EQ(b0->states.size(), 2u);
  EXPECT_EQ(b0->blocks.size(), 2u);

  const auto b1 = u.basis_up_to(Rational(1));
  std::map<int, int> tally;
  for (const auto& s : b1->states) {
    if (u.weight_ticks(s) == 1) ++tally[FockModule::charge_offset(s)];
  }
  EXPECT_EQ(tally, (std::map<int, int>{{-1, 1}, {0, 3}, {1, 3}, {2, 1}}));

  const FockModule t(TwistData::parse("1/2"));
  EXPECT_EQ(t.basis_up_to(Rational(0))->states.size(), 1u);
  EXPECT_THROW(u.basis_up_to(Rational(-1)), DomainError);
  EXPECT_THROW(u.character(Rational(1), true), DomainError);
}

TEST(Fock, BasisWithZeroModes) {
  const FockModule u(TwistData::identity(1));
  const auto b = u.basis_up_to(Rational(0), 2);
  // b_0^k phi_0^e with k <= 2
  EXPECT_EQ(b->states.size(), 6u);
}

TEST(Fock, CharacterMatchesEnumerationOracle) {
  for (const char* text : {"0/1", "1/2", "1/3", "2/3", "0,0/1", "0,1/2", "1,1/2", "1,2/3"}) {
    const FockModule m(TwistData::parse(text));
    const Rational q(2);
    const auto ch = m.character(q);
    const auto ref = oracle::enumerate_character(m.twist().exponents, m.order(), 2L * m.order());
    std::size_t nonzero = 0;
    for (const auto& [k, c] : ref) {
      ++nonzero;
      EXPECT_EQ(ch.coefficient(m.weight(static_cast<int>(k.first)), Rational(k.second) + m.shift()), Rational(c))
          << text;
    }
    EXPECT_EQ(ch.size(), nonzero) << text;
  }
}

TEST(Fock, CharacterSpotValues) {
  const FockModule u(TwistData::identity(1));
  const auto ch = u.character(Rational(1));
  EXPECT_EQ(ch.coefficient(Rational(0), Rational(0)), Rational(1));
  EXPECT_EQ(ch.coefficient(Rational(0), Rational(1)), Rational(1));
  EXPECT_EQ(ch.coefficient(Rational(1), Rational(-1)), Rational(1));
  EXPECT_EQ(ch.coefficient(Rational(1), Rational(2)), Rational(1));

  const FockModule t(TwistData::parse("1/2"));
  const auto tc = t.character(Rational(1, 2));
  EXPECT_EQ(tc.q_slice(Rational(0)), (std::map<Rational, Rational>{{Rational(1, 2), Rational(1)}}));

  const FockModule three(TwistData::identity(3));
  const auto c0 = three.character(Rational(0));
  EXPECT_EQ(c0.coefficient(Rational(0), Rational(1)), Rational(3));
  EXPECT_EQ(c0.coefficient(Rational(0), Rational(2)), Rational(3));
}
