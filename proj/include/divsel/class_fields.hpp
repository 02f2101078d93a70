#pragma once

// Local constraints on the spinor class field of the genus of maximal orders
// in a central simple algebra. The field itself is never built: only the
// necessary local conditions on a subextension are modelled.

#include "divsel/brauer.hpp"
#include "divsel/decision.hpp"
#include "divsel/places.hpp"

#include <map>
#include <string>
#include <vector>

namespace divsel {

struct SpinorConstraints {
  PlaceSetPtr places;
  Integer exponent = 1;
  /// Archimedean places where the algebra is a matrix algebra, in place-set order.
  std::vector<std::string> archimedean_unramified;
  /// Upper bound (as a divisor) for the inertia degree at finite places;
  /// absent means the bound is the exponent.
  std::map<std::string, Integer, std::less<>> finite_inertia_bound;
  bool finite_unramified = true;

  Integer inertia_bound_at(std::string_view id) const {
    auto it = finite_inertia_bound.find(id);
    return it == finite_inertia_bound.end() ? exponent : it->second;
  }

  bool archimedean_is_unramified(std::string_view id) const {
    return std::find(archimedean_unramified.begin(), archimedean_unramified.end(), id) != archimedean_unramified.end();
  }
};

inline std::vector<Violation> validate_spinor_constraints(const SpinorConstraints& C) {
  std::vector<Violation> out;
  if (C.exponent < 1) out.push_back({"", "exponent", "exponent must be positive"});
  for (const auto& id : C.archimedean_unramified) {
    const Place& p = C.places->at(id);
    if (!p.is_archimedean()) out.push_back({id, "archimedean", "not an archimedean place"});
  }
  for (const auto& [id, f] : C.finite_inertia_bound) {
    const Place& p = C.places->at(id);
    if (!p.is_finite()) out.push_back({id, "finite", "inertia bound at a non-finite place"});
    if (f < 1 || !divides(f, C.exponent))
      out.push_back({id, "bound-divides-exponent", "inertia bound " + f.str() + " does not divide " + C.exponent.str()});
  }
  return out;
}

/// Spinor class field of maximal orders: unramified of exponent n, unramified
/// at archimedean places where B is a matrix algebra, and with inertia degree
/// dividing n / e_p(B/K) at each finite place.
inline SpinorConstraints spinor_classfield_constraints(const AlgebraDescriptor& B) {
  SpinorConstraints C;
  C.places = B.places();
  C.exponent = B.degree();
  const PlaceSet& P = B.placeset();
  for (std::size_t i = 0; i < P.size(); ++i) {
    const QMod1 inv = B.brauer_class().invariant_at(i);
    if (P[i].is_archimedean() && inv.is_zero()) C.archimedean_unramified.push_back(P[i].id());
    if (P[i].is_finite() && !inv.is_zero()) C.finite_inertia_bound.emplace(P[i].id(), B.degree() / inv.denominator());
  }
  return C;
}

/// Necessary local conditions for E/K to lie inside the spinor class field.
inline Decision quadratic_within_spinor(const QuadraticProfile& E, const SpinorConstraints& C) {
  if (!divides(2, C.exponent)) {
    Decision d;
    d.holds = false;
    d.reason = "exponent";
    d.notes.push_back("exponent " + C.exponent.str() + " is odd; no quadratic subextension");
    return d;
  }
  for (const Place& place : *C.places) {
    auto b = E.at(place.id());
    if (!b || place.is_complex()) continue;
    const auto& id = place.id();
    if (place.is_finite()) {
      if (*b == QuadraticBehavior::ramified)
        return Decision::fail({id, "E ramifies at finite place " + id + "; the spinor class field is unramified there"},
                              "finite ramification");
      Integer bound = C.inertia_bound_at(id);
      if (*b == QuadraticBehavior::inert && !divides(2, bound))
        return Decision::fail({id, "E is inert at " + id + " but the inertia bound " + bound.str() + " is odd", bound},
                              "inertia bound");
    } else if (*b == QuadraticBehavior::ramified && C.archimedean_is_unramified(id)) {
      return Decision::fail({id, "E ramifies at real place " + id + " where the algebra is a matrix algebra"},
                            "archimedean ramification");
    }
  }
  return {};
}

/// Strong approximation for the norm-one group holds (so spinor genera are
/// conjugacy classes) unless B is a totally definite quaternion algebra.
inline bool eichler_condition(const AlgebraDescriptor& B) {
  if (B.degree() != 2) return true;
  for (std::size_t i = 0; i < B.placeset().size(); ++i) {
    const Place& p = B.placeset()[i];
    if (p.is_complex()) return true;
    if (p.is_real() && B.brauer_class().invariant_at(i).is_zero()) return true;
  }
  return false;
}

/// Proportion of conjugacy classes of maximal orders containing a copy of
/// the order, given the degree [F:K] of its representation field.
inline ReducedFraction selectivity_proportion(const Integer& representation_degree) {
  if (representation_degree < 1)
    throw PreconditionError("representation field degree must be positive, got " + representation_degree.str());
  return ReducedFraction(1, representation_degree);
}

}  // namespace divsel
