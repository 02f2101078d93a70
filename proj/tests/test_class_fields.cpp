#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace divsel;
using namespace divsel::testing;

TEST(Spinor, ConstraintsOfB6) {
  auto C = spinor_classfield_constraints(B6());
  EXPECT_EQ(C.exponent, 6);
  EXPECT_EQ(C.archimedean_unramified, (std::vector<std::string>{"w"}));
  EXPECT_EQ(C.inertia_bound_at("p1"), 2);
  EXPECT_EQ(C.inertia_bound_at("p2"), 2);
  EXPECT_EQ(C.inertia_bound_at("p3"), 6);
  EXPECT_TRUE(validate_spinor_constraints(C).empty());
}

TEST(Spinor, ConstraintsOfB1) {
  auto C = spinor_classfield_constraints(B1());
  EXPECT_EQ(C.exponent, 2);
  EXPECT_EQ(C.archimedean_unramified, (std::vector<std::string>{"w"}));
  EXPECT_TRUE(C.finite_inertia_bound.empty());
  auto Bf = algebra(fixture_places(), {{"p1", "1/2"}, {"p2", "1/2"}}, 2);
  auto Cf = spinor_classfield_constraints(Bf);
  EXPECT_EQ(Cf.inertia_bound_at("p1"), 1);
  EXPECT_EQ(Cf.archimedean_unramified, (std::vector<std::string>{"v1", "v2", "w"}));
}

TEST(Spinor, ValidationRules) {
  auto C = spinor_classfield_constraints(B6());
  C.finite_inertia_bound["p3"] = 4;
  C.archimedean_unramified.push_back("p1");
  EXPECT_EQ(validate_spinor_constraints(C).size(), 2u);
}

TEST(Spinor, QuadraticWithin) {
  auto C = spinor_classfield_constraints(B1());
  EXPECT_TRUE(quadratic_within_spinor(E1(), C));
  auto ram = quadratic_within_spinor(profile({{"p2", "ramified"}}), C);
  ASSERT_FALSE(ram);
  EXPECT_EQ(ram.witness->place_id, "p2");

  auto odd = quadratic_within_spinor(E1(), spinor_classfield_constraints(B3()));
  EXPECT_FALSE(odd);
  EXPECT_EQ(odd.reason, "exponent");

  auto Bf = algebra(fixture_places(), {{"p1", "1/2"}, {"p2", "1/2"}}, 2);
  auto Cf = spinor_classfield_constraints(Bf);
  auto inert = quadratic_within_spinor(profile({{"p1", "inert"}}), Cf);
  ASSERT_FALSE(inert);
  EXPECT_EQ(*inert.witness->value, 1);
  auto real = quadratic_within_spinor(profile({{"v1", "ramified"}}), Cf);
  ASSERT_FALSE(real);
  EXPECT_EQ(real.witness->place_id, "v1");
}

TEST(Eichler, Condition) {
  EXPECT_TRUE(eichler_condition(B1()));  // complex place w
  auto P = make_placeset({{"v1", PlaceKind::real}, {"v2", PlaceKind::real}, {"p1", PlaceKind::finite}});
  EXPECT_FALSE(eichler_condition(algebra(P, {{"v1", "1/2"}, {"v2", "1/2"}}, 2)));
  EXPECT_TRUE(eichler_condition(algebra(P, {{"v1", "1/2"}, {"p1", "1/2"}}, 2)));
  EXPECT_TRUE(eichler_condition(B6()));
}

TEST(Proportion, OneOverDegree) {
  EXPECT_EQ(selectivity_proportion(2), Rational(1, 2));
  EXPECT_EQ(selectivity_proportion(1), Rational(1));
  EXPECT_THROW(selectivity_proportion(0), PreconditionError);
}
