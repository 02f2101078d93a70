#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace divsel;
using namespace divsel::testing;

namespace {

RawInvariants raw(std::initializer_list<std::pair<const char*, const char*>> xs) {
  RawInvariants r;
  for (auto [id, s] : xs) r.emplace(id, QMod1(*parse_fraction(s).value));
  return r;
}

PlaceSetPtr four_places() { return make_placeset(PlaceTemplate{1, 0, 3}); }

}  // namespace

TEST(ValidateClass, AcceptsFixtureClass) {
  auto v = validate_class(raw({{"v1", "1/2"}, {"v2", "1/2"}, {"p1", "1/3"}, {"p2", "2/3"}}), fixture_places());
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(class_order(v.value()), 6);
  EXPECT_EQ(to_string(v.value()), "{v1:1/2, v2:1/2, p1:1/3, p2:2/3}");
}

TEST(ValidateClass, RealPlaceMustBeHalf) {
  auto v = validate_class(raw({{"v1", "1/3"}, {"p1", "2/3"}}), fixture_places());
  ASSERT_FALSE(v.ok());
  ASSERT_EQ(v.violations().size(), 1u);
  EXPECT_EQ(v.violations()[0].place_id, "v1");
  EXPECT_EQ(v.violations()[0].message, "real place invariant must be 0 or 1/2, got 1/3");
}

TEST(ValidateClass, SumMustVanish) {
  auto v = validate_class(raw({{"p1", "1/3"}, {"p2", "1/3"}}), fixture_places());
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violations().back().message, "sum = 2/3 ≢ 0");
  EXPECT_THROW(v.value(), ValidationError);
}

TEST(ValidateClass, ComplexMustBeZeroAndUnknownThrows) {
  auto v = validate_class(raw({{"w", "1/2"}, {"v1", "1/2"}}), fixture_places());
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violations()[0].place_id, "w");
  EXPECT_THROW(validate_class(raw({{"p9", "1/2"}}), fixture_places()), UnknownPlaceError);
}

TEST(ValidateClass, ReducesAndDropsZeros) {
  auto v = validate_class(raw({{"p1", "2/6"}, {"p2", "5/3"}, {"p3", "0"}}), fixture_places());
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v.value().support().size(), 2u);
  EXPECT_EQ(v.value().invariant_at("p2"), QMod1(2, 3));
  EXPECT_EQ(v.value().invariant_at("p3"), QMod1());
}

TEST(BrauerGroup, Examples) {
  auto a = make_class(fixture_places(), {{"p1", "1/3"}, {"p2", "2/3"}});
  auto b = make_class(fixture_places(), {{"p1", "2/3"}, {"p2", "1/3"}});
  EXPECT_TRUE(tensor(a, b).is_trivial());
  EXPECT_EQ(opposite(a), b);
  EXPECT_EQ(power(a, 2), b);
  EXPECT_EQ(power(a, -1), b);
  EXPECT_TRUE(power(a, 3).is_trivial());
  EXPECT_EQ(class_order(B6().brauer_class()), 6);
  EXPECT_EQ(local_index(B6(), "p2"), 3);
  EXPECT_EQ(local_index(B6(), "w"), 1);
}

TEST(BrauerGroup, MismatchedPlaceSetsThrow) {
  auto other = make_placeset({{"v1", PlaceKind::real}, {"v2", PlaceKind::real}});
  auto a = make_class(other, {{"v1", "1/2"}, {"v2", "1/2"}});
  EXPECT_THROW(tensor(a, B1().brauer_class()), PreconditionError);
}

TEST(BrauerGroup, RamificationSet) {
  auto ids = [](const std::vector<Place>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.id());
    return out;
  };
  auto B = B6();
  const auto& c = B.brauer_class();
  EXPECT_EQ(ids(ramification_set(c)), (std::vector<std::string>{"v1", "v2", "p1", "p2"}));
  EXPECT_EQ(ids(ramification_set(c, PlaceKind::real)), (std::vector<std::string>{"v1", "v2"}));
  EXPECT_EQ(ids(ramification_set(c, PlaceKind::finite)), (std::vector<std::string>{"p1", "p2"}));
}

TEST(BrauerGroup, LawsAgainstPointwiseOracle) {
  EnumerationSpec spec{{1, 0, 3}, 6, {1, 2, 3, 6}};
  auto P = make_placeset(spec.places);
  auto classes = enumerate_classes(spec, P);
  for (const auto& a : classes) {
    EXPECT_EQ(class_order(a), oracle::brute_order(a));
    for (const auto& b : classes) {
      auto ab = tensor(a, b);
      EXPECT_EQ(oracle::raw(ab), oracle::pointwise_add(oracle::raw(a), oracle::raw(b)));
      EXPECT_TRUE(validate_class(ab.to_raw(), P).ok());
    }
  }
}

TEST(Enumeration, MatchesGenerateAndFilter) {
  for (PlaceTemplate t : {PlaceTemplate{0, 0, 4}, PlaceTemplate{1, 0, 3}, PlaceTemplate{2, 1, 2}}) {
    EnumerationSpec spec{t, 6, {1, 2, 3, 6}};
    auto P = make_placeset(t);
    auto fast = enumerate_classes(spec, P);
    auto slow = oracle::classes_by_filter(spec, P);
    auto key = [](const std::vector<BrauerClass>& cs) {
      std::set<std::string> s;
      for (const auto& c : cs) s.insert(to_string(c));
      return s;
    };
    EXPECT_EQ(fast.size(), slow.size());
    EXPECT_EQ(key(fast), key(slow));
    EXPECT_EQ(key(fast).size(), fast.size());
  }
  EXPECT_EQ(enumerate_classes(EnumerationSpec{{0, 0, 4}, 6, {1, 2, 3, 6}}).size(), 216u);
}

TEST(AlgebraDescriptor, DivisionAndMatrixSize) {
  EXPECT_TRUE(B6().is_division());
  AlgebraDescriptor M(make_class(fixture_places(), {{"p1", "1/3"}, {"p2", "2/3"}}), 6);
  EXPECT_FALSE(M.is_division());
  EXPECT_EQ(M.matrix_size(), 2);
  EXPECT_THROW(AlgebraDescriptor(B6().brauer_class(), 4), PreconditionError);
  EXPECT_THROW(AlgebraDescriptor(B6().brauer_class(), 0), PreconditionError);
  EXPECT_EQ(validate_descriptor(B6().brauer_class(), 4).size(), 1u);
}

TEST(AlgebraDescriptor, PrimaryWitness) {
  EXPECT_EQ(p_primary_witness(B6(), 2).id(), "v1");
  EXPECT_EQ(p_primary_witness(B6(), 3).id(), "p1");
  EXPECT_THROW(p_primary_witness(B6(), 5), PreconditionError);
  EXPECT_THROW(p_primary_witness(B6(), 4), PreconditionError);
}
