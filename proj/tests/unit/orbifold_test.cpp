#include <gtest/gtest.h>

#include <string>

#include "cdr/cli/input.hpp"
#include "cdr/errors.hpp"
#include "cdr/orbifold.hpp"

using namespace cdr;

namespace {

std::string data(const std::string& name) { return std::string(CDR_DATA_DIR) + "/" + name; }

SectorComponent point_component(std::vector<Cyclotomic> e, std::vector<Cyclotomic> g) {
  SectorComponent c;
  c.name = "pt";
  c.twist = TwistData::identity(0);
  c.characters[0] = std::move(e);
  c.characters[1] = std::move(g);
  return c;
}

}  // namespace

TEST(Group, CyclicAndSymmetric) {
  const auto z2 = GroupData::from_table({{0, 1}, {1, 0}});
  EXPECT_TRUE(z2.is_abelian());
  EXPECT_EQ(z2.conjugacy_classes().size(), 2u);
  EXPECT_EQ(z2.element_order(1), 2);

  const auto s3 = GroupData::from_permutations({{1, 0, 2}, {1, 2, 0}});
  EXPECT_EQ(s3.order(), 6);
  EXPECT_FALSE(s3.is_abelian());
  std::vector<std::pair<std::size_t, std::size_t>> shape;
  for (const auto& c : s3.conjugacy_classes()) shape.emplace_back(c.members.size(), s3.centralizer(c.rep).size());
  EXPECT_EQ(shape, (std::vector<std::pair<std::size_t, std::size_t>>{{1, 6}, {3, 2}, {2, 3}}));
  for (int h = 0; h < 6; ++h) {
    for (int g = 0; g < 6; ++g) EXPECT_EQ(s3.class_of(s3.conjugate(h, g)), s3.class_of(g));
  }
}

TEST(Group, MalformedTables) {
  EXPECT_THROW(GroupData::from_table({{0, 1}, {0, 1}}), InputError);
  EXPECT_THROW(GroupData::from_table({{0, 1}, {1}}), InputError);
  EXPECT_THROW(GroupData::from_table({{0, 2}, {1, 0}}), InputError);
  EXPECT_NO_THROW(GroupData::from_table({{1, 0}, {0, 1}}));
  // a Latin square that is not associative
  EXPECT_THROW(GroupData::from_table({{0, 1, 2, 3, 4},
                                      {1, 0, 3, 4, 2},
                                      {2, 4, 0, 1, 3},
                                      {3, 2, 4, 0, 1},
                                      {4, 3, 1, 2, 0}}),
               InputError);
  EXPECT_THROW(GroupData::from_permutations({{0, 0, 1}}), InputError);
}

TEST(Orbifold, InvariantDims) {
  const auto z2 = GroupData::from_table({{0, 1}, {1, 0}});
  EXPECT_EQ(invariant_dims(point_component({Cyclotomic(2)}, {Cyclotomic(0)}), z2), (std::vector<long>{1}));
  EXPECT_EQ(invariant_dims(point_component({Cyclotomic(1)}, {Cyclotomic(-1)}), z2), (std::vector<long>{0}));
  EXPECT_THROW(invariant_dims(point_component({Cyclotomic(1)}, {Cyclotomic(0)}), z2), InputError);
}

TEST(Orbifold, FermionicShift) {
  SectorComponent c;
  c.twist = TwistData::parse("1,2/3");
  EXPECT_EQ(fermionic_shift(c), Rational(1));
  c.twist = TwistData::parse("1/2");
  EXPECT_EQ(fermionic_shift(c), Rational(1, 2));
}

TEST(Orbifold, ChenRuanPolynomials) {
  const auto p1 = cli::parse_orbifold_input(data("p1_z2.json"));
  EXPECT_EQ(polynomial_text(cr_poincare(p1)), "1 + 2*t + t^2");
  const auto s3 = cli::parse_orbifold_input(data("s3_p1.json"));
  EXPECT_EQ(cr_poincare(s3), (TPolynomial{{Rational(0), Rational(2)}, {Rational(1), Rational(2)}, {Rational(2), Rational(2)}}));
}

TEST(Orbifold, ConjugationInvariance) {
  const auto s3 = cli::parse_orbifold_input(data("s3_p1.json"));
  const auto base = cr_poincare(s3);
  for (std::size_t k = 0; k < s3.classes.size(); ++k) {
    for (int h = 0; h < s3.group.order(); ++h) {
      const auto moved = conjugate_class(s3, k, h);
      EXPECT_EQ(cr_poincare(moved), base) << k << " " << h;
    }
  }
}

TEST(Orbifold, ValidationErrors) {
  auto in = cli::parse_orbifold_input(data("p1_z2.json"));
  auto dup = in;
  dup.classes.push_back(dup.classes.back());
  EXPECT_THROW(validate(dup), InputError);

  auto missing = in;
  missing.classes.pop_back();
  EXPECT_THROW(validate(missing), InputError);

  auto bad_order = in;
  bad_order.classes[1].components[0].twist = TwistData::parse("1/3");
  EXPECT_THROW(validate(bad_order), InputError);

  auto bad_trace = in;
  bad_trace.classes[0].components[0].characters[0] = {Cyclotomic(1), Cyclotomic(0), Cyclotomic(Rational(1, 2))};
  EXPECT_THROW(validate(bad_trace), InputError);

  auto no_chars = in;
  no_chars.classes[1].components[0].characters.erase(1);
  EXPECT_THROW(validate(no_chars), InputError);

  auto empty = in;
  empty.classes[1].components.clear();
  EXPECT_NO_THROW(validate(empty));
  EXPECT_FALSE(empty.warnings.empty());
}
