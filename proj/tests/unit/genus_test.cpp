#include <gtest/gtest.h>

#include <string>

#include "cdr/cli/input.hpp"
#include "cdr/errors.hpp"
#include "cdr/genus.hpp"
#include "oracles.hpp"

using namespace cdr;

namespace {

std::string data(const std::string& name) { return std::string(CDR_DATA_DIR) + "/" + name; }

QYSeries<Rational> at_one(const QYSeries<LaurentT>& s) {
  return s.map_coefficients([](const LaurentT& c) { return c.at_one().to_rational(); });
}

std::vector<FixedPoint> p1_points(const Rational& zeta) {
  return {FixedPoint{"0", {LineDatum{Rational(0), zeta, 1, true}}},
          FixedPoint{"inf", {LineDatum{Rational(0), zeta, -1, true}}}};
}

}  // namespace

TEST(Genus, LineCharacterLowOrder) {
  const auto half = at_one(sector_bundle_character({LineDatum{Rational(1, 2), Rational(0), 0, false}}, Rational(0)));
  EXPECT_EQ(series_text(half), "1");
  const auto zero = at_one(sector_bundle_character({LineDatum{Rational(0), Rational(0), 0, false}}, Rational(0)));
  EXPECT_EQ(zero.q_slice(Rational(0)), (std::map<Rational, Rational>{{Rational(0), Rational(1)}, {Rational(1), Rational(1)}}));
  const auto flip = sector_bundle_character({LineDatum{Rational(0), Rational(1, 2), 0, false}}, Rational(0));
  EXPECT_EQ(flip.coefficient(Rational(0), Rational(1)).at_one(), Cyclotomic(-1));
}

TEST(Genus, LineCharacterMatchesOracle) {
  for (long num : {0L, 1L}) {
    const long den = 2;
    const LineDatum l{Rational(num, den), Rational(0), 1, false};
    const Rational q_max(3);
    const auto ch = sector_bundle_character({l}, q_max);
    const auto ref = oracle::line_trace(num, den, 3 * den);
    std::size_t n = 0;
    for (const auto& [e, c] : ch.terms()) {
      for (const auto& [k, v] : c.terms()) {
        ++n;
        const auto key = std::make_tuple((e.q * Rational(den)).to_long(), e.y.to_long(), k);
        ASSERT_TRUE(ref.count(key)) << num << " q=" << e.q.str() << " y=" << e.y.str() << " t^" << k;
        EXPECT_EQ(v, Cyclotomic(ref.at(key)));
      }
    }
    EXPECT_EQ(n, ref.size());
  }
}

TEST(Genus, FockTraceAgreesWithProduct) {
  for (const auto& lines : std::vector<std::vector<LineDatum>>{
           {LineDatum{Rational(1, 2), Rational(1, 2), 1, false}},
           {LineDatum{Rational(1, 3), Rational(0), 2, false}, LineDatum{Rational(0), Rational(1, 3), -1, false}}}) {
    const auto a = fock_trace_character(lines, Rational(2));
    auto b = sector_bundle_character(lines, Rational(2));
    // the Fock trace includes y^iota
    Rational iota(0);
    for (const auto& l : lines) iota += l.lambda;
    b = b.shifted(LaurentT(1), Rational(0), iota);
    EXPECT_EQ(a, b);
  }
}

TEST(Genus, EulerCharacteristicsOfP1) {
  const std::vector<FixedPoint> pts = p1_points(Rational(0));
  // chi(O) = 1: constant sections only.
  const auto o = localize({{QYSeries<LaurentT>::one(Rational(0)), tangent_denominator(pts[0].lines)},
                           {QYSeries<LaurentT>::one(Rational(0)), tangent_denominator(pts[1].lines)}},
                          Rational(0));
  EXPECT_TRUE(o.t_independent);
  EXPECT_EQ(o.value.coefficient(Rational(0), Rational(0)), Cyclotomic(1));
  // chi(Omega) = -1: the cotangent fiber has character u^{-1}.
  auto cot = [&](const FixedPoint& p) {
    return QYSeries<LaurentT>::monomial(LaurentT::monomial(Cyclotomic(1), -p.lines[0].w), Rational(0), Rational(0),
                                        Rational(0));
  };
  const auto om = localize({{cot(pts[0]), tangent_denominator(pts[0].lines)},
                            {cot(pts[1]), tangent_denominator(pts[1].lines)}},
                           Rational(0));
  EXPECT_TRUE(om.t_independent);
  EXPECT_EQ(om.value.coefficient(Rational(0), Rational(0)), Cyclotomic(-1));
}

TEST(Genus, P1LefschetzMatchesSheafOracle) {
  const Rational q_max(2);
  for (long zk : {0L, 1L}) {
    const auto res = lefschetz_localized(p1_points(Rational(zk, 2)), q_max);
    // expected: sum over fiber terms c * u^m of c * trace(h x torus | chi(P1, T^m))
    std::map<std::pair<long, long>, LaurentT> expected;
    for (const auto& [k, c] : oracle::line_trace(0, 1, 2)) {
      const auto [q, y, m] = k;
      for (const auto& [zt, v] : oracle::p1_lefschetz(m, zk, 2)) {
        expected[{q, y}] += LaurentT::monomial(Cyclotomic::zeta(2, zt.first) * Cyclotomic(c * v), zt.second);
      }
    }
    std::size_t nonzero = 0;
    for (const auto& [k, v] : expected) {
      if (v.is_zero()) continue;
      ++nonzero;
      EXPECT_EQ(res.equivariant.coefficient(Rational(k.first), Rational(k.second)), v)
          << "h=" << zk << " q^" << k.first << " y^" << k.second;
    }
    EXPECT_EQ(res.equivariant.size(), nonzero);
  }
}

TEST(Genus, StrictModeRejectsTorusDependence) {
  const auto pts = p1_points(Rational(0));
  const auto loose = lefschetz_localized(pts, Rational(1));
  EXPECT_FALSE(loose.t_independent);
  ASSERT_TRUE(loose.first_t_dependent.has_value());
  EXPECT_THROW(lefschetz_localized(pts, Rational(1), true), LocalizationError);
  EXPECT_NO_THROW(lefschetz_localized(pts, Rational(0), true));
}

TEST(Genus, ResidualPoleIsAnError) {
  // one fixed point alone leaves 1/(1 - t^{-1}) uncancelled
  const std::vector<FixedPoint> lone{FixedPoint{"0", {LineDatum{Rational(0), Rational(0), 1, true}}}};
  EXPECT_THROW(lefschetz_localized(lone, Rational(0)), LocalizationError);
}

TEST(Genus, P1Z2BothRoutesAgree) {
  const auto in = cli::parse_orbifold_input(data("p1_z2.json"));
  GenusDiagnostics d;
  const auto a = ell_orb(in, Rational(2), {}, &d);
  const auto b = ell_orb_via_traces(in, Rational(2));
  EXPECT_EQ(first_series_difference(a, b), std::nullopt);
  EXPECT_TRUE(d.integral());
  EXPECT_EQ(a.q_slice(Rational(0)), (std::map<Rational, Rational>{
                                        {Rational(-1, 2), Rational(1)}, {Rational(0), Rational(2)}, {Rational(1, 2), Rational(-1)}}));
}

TEST(Genus, ConjugationInvarianceOnS3) {
  const auto in = cli::parse_orbifold_input(data("s3_p1.json"));
  const auto base = ell_orb_via_traces(in, Rational(1));
  for (std::size_t k = 1; k < in.classes.size(); ++k) {
    for (int h : {1, 4}) {
      EXPECT_EQ(ell_orb_via_traces(conjugate_class(in, k, h), Rational(1)), base) << k << " " << h;
    }
  }
}

TEST(Genus, ParallelMatchesSerial) {
  const auto in = cli::parse_orbifold_input(data("p1_z2.json"));
  GenusOptions par;
  par.jobs = 4;
  EXPECT_EQ(ell_orb(in, Rational(1), par), ell_orb(in, Rational(1)));
  EXPECT_EQ(ell_orb_via_traces(in, Rational(1), par), ell_orb_via_traces(in, Rational(1)));
}
