#pragma once

// The running example: K with two real places, one complex place and three
// finite places; B6 of degree 6 with maximal subfield L6 and quadratic E1.

#include "divsel/divsel.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace divsel::testing {

inline PlaceSetPtr fixture_places() {
  static const PlaceSetPtr P = make_placeset({{"v1", PlaceKind::real},
                                              {"v2", PlaceKind::real},
                                              {"w", PlaceKind::complex},
                                              {"p1", PlaceKind::finite},
                                              {"p2", PlaceKind::finite},
                                              {"p3", PlaceKind::finite}});
  return P;
}

inline AlgebraDescriptor algebra(const PlaceSetPtr& P, std::vector<std::pair<std::string, std::string>> inv,
                                 int degree) {
  return AlgebraDescriptor(make_class(P, inv), degree);
}

inline AlgebraDescriptor B6() {
  return algebra(fixture_places(), {{"v1", "1/2"}, {"v2", "1/2"}, {"p1", "1/3"}, {"p2", "2/3"}}, 6);
}
inline AlgebraDescriptor B3() { return algebra(fixture_places(), {{"p1", "1/3"}, {"p2", "2/3"}}, 3); }
inline AlgebraDescriptor B1() { return algebra(fixture_places(), {{"v1", "1/2"}, {"v2", "1/2"}}, 2); }

inline Partition parts(std::initializer_list<int> xs) {
  Partition p;
  for (int x : xs) p.emplace_back(x);
  return p;
}
inline Partition ones(int n) { return Partition(static_cast<std::size_t>(n), Integer(1)); }

inline FieldLocalData L6() {
  return FieldLocalData(6, {{"v1", parts({2, 2, 2})},
                            {"v2", parts({2, 2, 2})},
                            {"w", ones(6)},
                            {"p1", parts({6})},
                            {"p2", parts({3, 3})},
                            {"p3", ones(6)}});
}

inline QuadraticProfile profile(std::initializer_list<std::pair<const char*, const char*>> xs) {
  QuadraticProfile::Behaviors b;
  for (auto [id, s] : xs) b.emplace(id, *parse_quadratic_behavior(s));
  return QuadraticProfile(std::move(b));
}

inline QuadraticProfile E1() {
  return profile({{"v1", "ramified"}, {"v2", "ramified"}, {"p1", "inert"}, {"p2", "split"}, {"p3", "split"}});
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(DIVSEL_FIXTURES) + "/" + name, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ProblemFile load_fixture(const std::string& name) {
  auto r = parse_problem_file(read_fixture(name));
  if (!r.problem) throw Error("fixture " + name + " failed to parse");
  return *r.problem;
}

}  // namespace divsel::testing
