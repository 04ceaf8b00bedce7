#include <gtest/gtest.h>

#include "cdr/brst.hpp"
#include "cdr/errors.hpp"

using namespace cdr;

namespace {

std::map<std::pair<Rational, Rational>, std::size_t> nonzero(const CohomologyTable& t) {
  std::map<std::pair<Rational, Rational>, std::size_t> out;
  for (const auto& [k, n] : t.nonzero()) out[{t.weight(k), t.charge(k)}] = n;
  return out;
}

}  // namespace

TEST(Brst, DifferentialExamples) {
  const FockModule m(TwistData::identity(1));
  const auto d = brst_operator(m, Rational(1));
  const auto& basis = d.basis();
  const auto vac = *basis.find(Monomial{});
  EXPECT_TRUE(d.column(vac).empty());
  const Monomial b1 = m.apply_mode(m.mode(Family::B, 0, Rational(-1)), Monomial{}).begin()->first;
  const Monomial phi1 = m.apply_mode(m.mode(Family::Phi, 0, Rational(-1)), Monomial{}).begin()->first;
  EXPECT_EQ(d.column(*basis.find(b1)), (OperatorMatrix::Column{{*basis.find(phi1), Rational(-1)}}));

  const FockModule t(TwistData::parse("1/2"));
  const auto dt = brst_operator(t, Rational(1, 2));
  const Monomial bh = t.apply_mode(t.mode(Family::B, 0, Rational(-1, 2)), Monomial{}).begin()->first;
  const Monomial ph = t.apply_mode(t.mode(Family::Phi, 0, Rational(-1, 2)), Monomial{}).begin()->first;
  EXPECT_EQ(dt.column(*dt.basis().find(bh)), (OperatorMatrix::Column{{*dt.basis().find(ph), Rational(-1)}}));
}

TEST(Brst, ExactRank) {
  using M = std::vector<std::vector<Rational>>;
  EXPECT_EQ(exact_rank(M{}), 0u);
  EXPECT_EQ(exact_rank(M{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}), 1u);
  EXPECT_EQ(exact_rank(M{{Rational(0), Rational(1)}, {Rational(1, 3), Rational(0)}}), 2u);
  EXPECT_EQ(exact_rank(M{{Rational(0)}, {Rational(0)}}), 0u);
}

TEST(Brst, HomotopyIdentityWithOneSign) {
  for (const auto& [text, w] : {std::pair{"0/1", 2}, {"1/2", 1}, {"0,1/2", 1}}) {
    const FockModule m(TwistData::parse(text));
    const auto r = homotopy_identity_check(m, Rational(w));
    EXPECT_TRUE(r.holds) << text << " " << r.failure.value_or("");
    EXPECT_EQ(r.sign, -1) << text;
    EXPECT_TRUE(d_squared_check(m, Rational(3, 2)).holds) << text;
  }
}

TEST(Brst, CohomologyExamples) {
  const FockModule u(TwistData::identity(1));
  const auto tu = cohomology_table(u, Rational(2));
  EXPECT_EQ(nonzero(tu), (std::map<std::pair<Rational, Rational>, std::size_t>{
                             {{Rational(0), Rational(0)}, 1}, {{Rational(0), Rational(1)}, 1}}));
  const FockModule t(TwistData::parse("1/2"));
  EXPECT_EQ(nonzero(cohomology_table(t, Rational(3, 2))),
            (std::map<std::pair<Rational, Rational>, std::size_t>{{{Rational(0), Rational(1, 2)}, 1}}));
  const FockModule two(TwistData::parse("0,1/2"));
  EXPECT_EQ(nonzero(cohomology_table(two, Rational(1))),
            (std::map<std::pair<Rational, Rational>, std::size_t>{{{Rational(0), Rational(1, 2)}, 1},
                                                                   {{Rational(0), Rational(3, 2)}, 1}}));
}

TEST(Brst, AcyclicAwayFromWeightZero) {
  const FockModule m(TwistData::parse("1,2/3"));
  const auto t = cohomology_table(m, Rational(1));
  for (const auto& [k, e] : t.blocks) {
    if (k.weight_ticks != 0) EXPECT_EQ(e.cohomology(), 0u);
    EXPECT_LE(e.image_in, e.kernel);
  }
}

TEST(Brst, PermutingEqualExponentsKeepsDims) {
  const auto a = cohomology_table(FockModule(TwistData::parse("0,1/2")), Rational(1));
  const auto b = cohomology_table(FockModule(TwistData::parse("1,0/2")), Rational(1));
  EXPECT_EQ(nonzero(a), nonzero(b));
}

TEST(Brst, ZeroModeSubcomplexes) {
  // With b_0 present, each #b_0 + #phi_0 degree is a subcomplex; only degree 0 carries cohomology.
  const FockModule m(TwistData::identity(1));
  for (int deg = 0; deg <= 2; ++deg) {
    const auto t = cohomology_table(m, Rational(1), deg);
    EXPECT_EQ(t.total(), deg == 0 ? 1u : 0u) << deg;
    EXPECT_TRUE(d_squared_check(m, Rational(1), deg).holds);
    EXPECT_TRUE(homotopy_identity_check(m, Rational(1), deg).holds);
  }
  EXPECT_THROW(cohomology_table(m, Rational(1), -1), DomainError);
}
