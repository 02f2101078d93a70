#pragma once

// Abstract places of a number field K and local splitting data of finite
// extensions of K. Places are opaque tokens; nothing here factors ideals
// or builds completions.

#include "divsel/arith.hpp"
#include "divsel/decision.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divsel {

enum class PlaceKind { finite, real, complex };

inline std::string_view to_string(PlaceKind k) {
  switch (k) {
    case PlaceKind::finite: return "finite";
    case PlaceKind::real: return "real";
    case PlaceKind::complex: return "complex";
  }
  return "?";
}

inline std::optional<PlaceKind> parse_place_kind(std::string_view s) {
  if (s == "finite") return PlaceKind::finite;
  if (s == "real") return PlaceKind::real;
  if (s == "complex") return PlaceKind::complex;
  return std::nullopt;
}

class Place {
 public:
  Place(std::string id, PlaceKind kind, std::string label = {})
      : id_(std::move(id)), kind_(kind), label_(std::move(label)) {}

  const std::string& id() const { return id_; }
  PlaceKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  bool is_finite() const { return kind_ == PlaceKind::finite; }
  bool is_real() const { return kind_ == PlaceKind::real; }
  bool is_complex() const { return kind_ == PlaceKind::complex; }
  bool is_archimedean() const { return kind_ != PlaceKind::finite; }

  bool operator==(const Place&) const = default;

 private:
  std::string id_;
  PlaceKind kind_;
  std::string label_;
};

/// Ordered, duplicate-free collection of places. Iteration follows
/// insertion order, which is also the tie-breaking order everywhere.
class PlaceSet {
 public:
  PlaceSet() = default;

  explicit PlaceSet(std::vector<Place> places) : places_(std::move(places)) {
    for (std::size_t i = 0; i < places_.size(); ++i) {
      const auto& id = places_[i].id();
      if (id.empty()) throw Error("place id must be non-empty");
      if (!index_.emplace(id, i).second) throw Error("duplicate place id '" + id + "'");
    }
  }

  std::size_t size() const { return places_.size(); }
  bool empty() const { return places_.empty(); }
  auto begin() const { return places_.begin(); }
  auto end() const { return places_.end(); }
  const Place& operator[](std::size_t i) const { return places_[i]; }

  std::optional<std::size_t> index_of(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::string_view id) const { return index_.find(id) != index_.end(); }

  const Place& at(std::string_view id) const {
    auto i = index_of(id);
    if (!i) throw UnknownPlaceError(id);
    return places_[*i];
  }

  std::size_t require_index(std::string_view id) const {
    auto i = index_of(id);
    if (!i) throw UnknownPlaceError(id);
    return *i;
  }

  bool has_complex() const {
    return std::any_of(places_.begin(), places_.end(), [](const Place& p) { return p.is_complex(); });
  }

  friend bool operator==(const PlaceSet& a, const PlaceSet& b) { return a.places_ == b.places_; }

 private:
  std::vector<Place> places_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

using PlaceSetPtr = std::shared_ptr<const PlaceSet>;

inline PlaceSetPtr make_placeset(std::vector<Place> places) {
  return std::make_shared<const PlaceSet>(std::move(places));
}

inline bool same_placeset(const PlaceSetPtr& a, const PlaceSetPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Local splitting data of an extension L/K.

/// Local degrees [L_P : K_p] over one place, non-increasing.
using Partition = std::vector<Integer>;

inline Partition canonical_partition(Partition parts) {
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

inline Integer partition_sum(const Partition& parts) {
  Integer s = 0;
  for (const auto& p : parts) s += p;
  return s;
}

inline std::string to_string(const Partition& parts) {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i].str();
  }
  return s + "]";
}

class FieldLocalData {
 public:
  using Splittings = std::map<std::string, Partition, std::less<>>;

  FieldLocalData() = default;
  FieldLocalData(Integer degree, Splittings splittings) : degree_(std::move(degree)) {
    for (auto& [id, parts] : splittings) splittings_.emplace(id, canonical_partition(std::move(parts)));
  }

  const Integer& degree() const { return degree_; }
  const Splittings& splittings() const { return splittings_; }

  bool declares(std::string_view id) const { return splittings_.find(id) != splittings_.end(); }

  const Partition* at(std::string_view id) const {
    auto it = splittings_.find(id);
    return it == splittings_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> coverage() const {
    std::vector<std::string> ids;
    for (const auto& [id, _] : splittings_) ids.push_back(id);
    return ids;
  }

  bool operator==(const FieldLocalData&) const = default;

 private:
  Integer degree_ = 1;
  Splittings splittings_;
};

/// Checks every invariant of L at every declared place. Unknown place ids
/// are a hard error, not a violation.
inline std::vector<Violation> validate_field_local_data(const FieldLocalData& L, const PlaceSet& P) {
  for (const auto& [id, _] : L.splittings())
    if (!P.contains(id)) throw UnknownPlaceError(id);

  std::vector<Violation> out;
  const Integer& m = L.degree();
  if (m < 1) out.push_back({"", "degree", "degree must be positive, got " + m.str()});

  for (const Place& place : P) {
    const Partition* parts = L.at(place.id());
    if (!parts) continue;
    const auto& id = place.id();
    if (parts->empty()) {
      out.push_back({id, "partition-empty", "partition is empty"});
      continue;
    }
    bool positive = std::all_of(parts->begin(), parts->end(), [](const Integer& x) { return x > 0; });
    if (!positive) out.push_back({id, "part-positive", "every local degree must be positive"});
    Integer sum = partition_sum(*parts);
    if (sum != m)
      out.push_back({id, "partition-sum", "partition sums to " + sum.str() + " ≠ " + m.str()});
    if (place.is_real()) {
      bool ok = std::all_of(parts->begin(), parts->end(), [](const Integer& x) { return x == 1 || x == 2; });
      if (!ok) out.push_back({id, "real-parts", "local degrees at a real place must be 1 or 2"});
    } else if (place.is_complex()) {
      bool ok = std::all_of(parts->begin(), parts->end(), [](const Integer& x) { return x == 1; });
      if (!ok) out.push_back({id, "complex-parts", "local degrees at a complex place must all be 1"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadratic extensions E/K.

enum class QuadraticBehavior { split, inert, ramified };

inline std::string_view to_string(QuadraticBehavior b) {
  switch (b) {
    case QuadraticBehavior::split: return "split";
    case QuadraticBehavior::inert: return "inert";
    case QuadraticBehavior::ramified: return "ramified";
  }
  return "?";
}

inline std::optional<QuadraticBehavior> parse_quadratic_behavior(std::string_view s) {
  if (s == "split") return QuadraticBehavior::split;
  if (s == "inert") return QuadraticBehavior::inert;
  if (s == "ramified") return QuadraticBehavior::ramified;
  return std::nullopt;
}

/// Local behavior of a quadratic extension. "ramified" at a real place means
/// the place becomes complex in E. Complex places are implicitly split.
class QuadraticProfile {
 public:
  using Behaviors = std::map<std::string, QuadraticBehavior, std::less<>>;

  QuadraticProfile() = default;
  explicit QuadraticProfile(Behaviors behavior) : behavior_(std::move(behavior)) {}

  const Behaviors& behavior() const { return behavior_; }
  bool declares(std::string_view id) const { return behavior_.find(id) != behavior_.end(); }

  std::optional<QuadraticBehavior> at(std::string_view id) const {
    auto it = behavior_.find(id);
    if (it == behavior_.end()) return std::nullopt;
    return it->second;
  }

  QuadraticProfile without(std::string_view id) const {
    QuadraticProfile copy = *this;
    if (auto it = copy.behavior_.find(id); it != copy.behavior_.end()) copy.behavior_.erase(it);
    return copy;
  }

  QuadraticProfile with(const std::string& id, QuadraticBehavior b) const {
    QuadraticProfile copy = *this;
    copy.behavior_[id] = b;
    return copy;
  }

  bool operator==(const QuadraticProfile&) const = default;

 private:
  Behaviors behavior_;
};

/// Behavior of E at a place, treating complex places as split.
inline std::optional<QuadraticBehavior> behavior_at(const QuadraticProfile& E, const Place& place) {
  if (place.is_complex()) return QuadraticBehavior::split;
  return E.at(place.id());
}

inline std::vector<Violation> validate_quadratic_profile(const QuadraticProfile& E, const PlaceSet& P) {
  for (const auto& [id, _] : E.behavior())
    if (!P.contains(id)) throw UnknownPlaceError(id);

  std::vector<Violation> out;
  for (const Place& place : P) {
    auto b = E.at(place.id());
    if (!b) continue;
    if (place.is_real() && *b == QuadraticBehavior::inert)
      out.push_back({place.id(), "real-inert", "a real place cannot be inert"});
    if (place.is_complex() && *b != QuadraticBehavior::split)
      out.push_back({place.id(), "complex-split", "a complex place is always split"});
  }
  return out;
}

/// Whether E can sit inside L as far as the declared local data can tell.
/// Where E is inert or ramified, every place of L above it contains the
/// quadratic local field, so every local degree of L there must be even.
inline Decision quadratic_compatible_with(const FieldLocalData& L, const QuadraticProfile& E, const PlaceSet& P) {
  if (!divides(2, L.degree()))
    throw PreconditionError("degree " + L.degree().str() + " of L is odd; L has no quadratic subfield");
  for (const auto& [id, _] : L.splittings())
    if (!P.contains(id)) throw UnknownPlaceError(id);
  for (const auto& [id, _] : E.behavior())
    if (!P.contains(id)) throw UnknownPlaceError(id);

  Decision d;
  for (const Place& place : P) {
    const Partition* parts = L.at(place.id());
    auto b = behavior_at(E, place);
    bool e_declared = b.has_value() && (place.is_complex() || E.declares(place.id()));
    if (!parts && !e_declared) continue;
    if (!parts || !e_declared) {
      d.unchecked.push_back(place.id());
      continue;
    }
    if (*b == QuadraticBehavior::split) continue;
    for (const Integer& part : *parts) {
      if (divides(2, part)) continue;
      Witness w{place.id(),
                "E is " + std::string(to_string(*b)) + " at " + place.id() + " but L has local degree " +
                    part.str(),
                part, std::nullopt};
      Decision fail = Decision::fail(std::move(w), "odd local degree under a non-split place of E");
      fail.unchecked = std::move(d.unchecked);
      return fail;
    }
  }
  return d;
}

}  // namespace divsel
