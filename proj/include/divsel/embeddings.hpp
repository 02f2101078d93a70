#pragma once

// Albert-Brauer-Hasse-Noether: a degree-n field L embeds in a central simple
// algebra of degree n iff every local degree of L is divisible by the local
// index of the algebra at the place below it.

#include "divsel/brauer.hpp"
#include "divsel/places.hpp"

namespace divsel {

inline Decision embeds_as_maximal_subfield(const FieldLocalData& L, const AlgebraDescriptor& B) {
  if (L.degree() != B.degree())
    throw PreconditionError("degree mismatch: [L:K] = " + L.degree().str() + ", algebra degree " + B.degree().str());
  const PlaceSet& P = B.placeset();
  for (const auto& [id, _] : L.splittings())
    if (!P.contains(id)) throw UnknownPlaceError(id);
  for (const Place& place : P) {
    bool required = place.is_archimedean() || !B.brauer_class().invariant_at(place.id()).is_zero();
    if (required && !L.declares(place.id()))
      throw PreconditionError("L has no local data at " + place.id() + ", which is archimedean or ramified");
  }

  Decision d;
  if (!B.is_division()) d.notes.push_back("algebra is not a division algebra; divisibility test applied as is");
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Partition* parts = L.at(P[i].id());
    if (!parts) continue;
    const Integer e = local_index(B.brauer_class(), i);
    for (const Integer& part : *parts) {
      if (divides(e, part)) continue;
      auto notes = std::move(d.notes);
      d = Decision::fail({P[i].id(),
                          "local index " + e.str() + " does not divide local degree " + part.str() + " at " + P[i].id(),
                          part, e},
                         "local index does not divide a local degree");
      d.notes = std::move(notes);
      return d;
    }
  }
  return d;
}

/// Quadratic E/K inside a quaternion algebra: E must not split at any
/// place where the quaternion algebra ramifies.
inline Decision quadratic_embeds_in_quaternion(const QuadraticProfile& E, const AlgebraDescriptor& B1) {
  if (B1.degree() != 2) throw PreconditionError("expected a quaternion algebra, got degree " + B1.degree().str());
  const PlaceSet& P = B1.placeset();
  for (const auto& [id, _] : E.behavior())
    if (!P.contains(id)) throw UnknownPlaceError(id);
  for (const Place& place : ramification_set(B1.brauer_class()))
    if (!E.declares(place.id()))
      throw PreconditionError("E has no local data at ramified place " + place.id());

  for (const Place& place : ramification_set(B1.brauer_class())) {
    auto b = *E.at(place.id());
    if (b != QuadraticBehavior::split) continue;
    std::string why = place.is_real() ? "E is split at real place " + place.id() + " where the algebra is Hamiltonian"
                                      : "E is split at finite place " + place.id() + " where the algebra ramifies";
    return Decision::fail({place.id(), why, std::nullopt, Integer(2)}, "split at a ramified place");
  }
  return {};
}

}  // namespace divsel
