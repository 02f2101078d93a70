#pragma once

// Brauer classes of a number field as finite-support maps from places to
// Hasse invariants in Q/Z, and central simple algebras as (class, degree).

#include "divsel/decision.hpp"
#include "divsel/places.hpp"
#include "divsel/qmod1.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace divsel {

/// Invariant map as written by a user: place id -> value in Q/Z.
using RawInvariants = std::map<std::string, QMod1, std::less<>>;

/// A class in Br(K). Zero invariants are never stored, so two classes are
/// equal exactly when their supports agree.
class BrauerClass {
 public:
  using Entry = std::pair<std::size_t, QMod1>;  // (place index, invariant)

  explicit BrauerClass(PlaceSetPtr places) : places_(std::move(places)) {}

  /// Builds a class from invariants already known to satisfy every rule.
  /// Entries must be sorted by place index; zeros are dropped.
  static BrauerClass from_canonical(PlaceSetPtr places, std::vector<Entry> entries) {
    BrauerClass c(std::move(places));
    for (auto& e : entries)
      if (!e.second.is_zero()) c.support_.push_back(std::move(e));
    return c;
  }

  const PlaceSetPtr& places() const { return places_; }
  const PlaceSet& placeset() const { return *places_; }
  const std::vector<Entry>& support() const { return support_; }
  bool is_trivial() const { return support_.empty(); }

  QMod1 invariant_at(std::size_t index) const {
    for (const auto& [i, q] : support_)
      if (i == index) return q;
    return {};
  }
  QMod1 invariant_at(std::string_view id) const { return invariant_at(places_->require_index(id)); }

  RawInvariants to_raw() const {
    RawInvariants raw;
    for (const auto& [i, q] : support_) raw.emplace((*places_)[i].id(), q);
    return raw;
  }

  friend bool operator==(const BrauerClass& a, const BrauerClass& b) {
    return same_placeset(a.places_, b.places_) && a.support_ == b.support_;
  }

 private:
  PlaceSetPtr places_;
  std::vector<Entry> support_;
};

inline std::string to_string(const BrauerClass& c) {
  std::string s = "{";
  bool first = true;
  for (const auto& [i, q] : c.support()) {
    if (!first) s += ", ";
    first = false;
    s += c.placeset()[i].id() + ":" + q.str();
  }
  return s + "}";
}

/// Validates a raw invariant map: real places carry 0 or 1/2, complex places
/// carry 0, and the invariants sum to 0 in Q/Z.
inline Validated<BrauerClass> validate_class(const RawInvariants& raw, const PlaceSetPtr& P) {
  std::vector<BrauerClass::Entry> entries;
  for (const auto& [id, q] : raw) entries.emplace_back(P->require_index(id), q);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Violation> out;
  QMod1 sum;
  const QMod1 half(Rational(1, 2));
  for (const auto& [i, q] : entries) {
    const Place& place = (*P)[i];
    if (place.is_real() && !(q.is_zero() || q == half))
      out.push_back({place.id(), "real-invariant", "real place invariant must be 0 or 1/2, got " + q.str()});
    if (place.is_complex() && !q.is_zero())
      out.push_back({place.id(), "complex-invariant", "complex place invariant must be 0, got " + q.str()});
    sum += q;
  }
  if (!sum.is_zero())
    out.push_back({"", "sum-zero", "sum = " + sum.str() + " ≢ 0"});
  if (!out.empty()) return out;
  return BrauerClass::from_canonical(P, std::move(entries));
}

/// Convenience wrapper that throws ValidationError on bad input.
inline BrauerClass make_class(const PlaceSetPtr& P, const std::vector<std::pair<std::string, std::string>>& values) {
  RawInvariants raw;
  for (const auto& [id, text] : values) {
    auto f = parse_fraction(text);
    if (!f.value) throw Error(f.error);
    raw[id] = QMod1(*f.value);
  }
  return validate_class(raw, P).value();
}

/// [C][D] = [C ⊗ D]: pointwise sum of invariants.
inline BrauerClass tensor(const BrauerClass& a, const BrauerClass& b) {
  if (!same_placeset(a.places(), b.places())) throw PreconditionError("tensor of classes over different place sets");
  std::vector<BrauerClass::Entry> out;
  auto ia = a.support().begin(), ea = a.support().end();
  auto ib = b.support().begin(), eb = b.support().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == ea || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      QMod1 s = ia->second + ib->second;
      if (!s.is_zero()) out.emplace_back(ia->first, s);
      ++ia;
      ++ib;
    }
  }
  return BrauerClass::from_canonical(a.places(), std::move(out));
}

/// [C^op] = -[C].
inline BrauerClass opposite(const BrauerClass& a) {
  std::vector<BrauerClass::Entry> out;
  for (const auto& [i, q] : a.support()) out.emplace_back(i, -q);
  return BrauerClass::from_canonical(a.places(), std::move(out));
}

/// k-fold tensor power, k >= 0.
inline BrauerClass power(const BrauerClass& a, const Integer& k) {
  std::vector<BrauerClass::Entry> out;
  for (const auto& [i, q] : a.support()) out.emplace_back(i, q * k);
  return BrauerClass::from_canonical(a.places(), std::move(out));
}

/// Order in Br(K): lcm of the denominators of the local invariants.
inline Integer class_order(const BrauerClass& a) {
  Integer order = 1;
  for (const auto& [_, q] : a.support()) order = lcm(order, q.denominator());
  return order;
}

/// Local index e_p(B/K): the denominator of the invariant at the place.
inline Integer local_index(const BrauerClass& a, std::size_t index) { return a.invariant_at(index).denominator(); }
inline Integer local_index(const BrauerClass& a, std::string_view id) { return a.invariant_at(id).denominator(); }

/// Places with nonzero invariant, in place-set order, optionally by kind.
inline std::vector<Place> ramification_set(const BrauerClass& a, std::optional<PlaceKind> kind = std::nullopt) {
  std::vector<Place> out;
  for (const auto& [i, _] : a.support()) {
    const Place& p = a.placeset()[i];
    if (!kind || p.kind() == *kind) out.push_back(p);
  }
  return out;
}

/// A central simple algebra of dimension degree^2, up to isomorphism: its
/// Brauer class together with its degree. The class order must divide the
/// degree; the algebra is a division algebra exactly when they are equal.
class AlgebraDescriptor {
 public:
  AlgebraDescriptor(BrauerClass cls, Integer degree) : class_(std::move(cls)), degree_(std::move(degree)) {
    if (degree_ < 1) throw PreconditionError("algebra degree must be positive, got " + degree_.str());
    Integer order = class_order(class_);
    if (!divides(order, degree_))
      throw PreconditionError("class order " + order.str() + " does not divide degree " + degree_.str());
  }

  const BrauerClass& brauer_class() const { return class_; }
  const PlaceSet& placeset() const { return class_.placeset(); }
  const PlaceSetPtr& places() const { return class_.places(); }
  const Integer& degree() const { return degree_; }

  bool is_division() const { return class_order(class_) == degree_; }
  /// m with B = M_m(D) for the division algebra D in the class.
  Integer matrix_size() const { return degree_ / class_order(class_); }

  bool operator==(const AlgebraDescriptor&) const = default;

 private:
  BrauerClass class_;
  Integer degree_;
};

/// Violations that make (class, degree) unusable as a descriptor.
inline std::vector<Violation> validate_descriptor(const BrauerClass& cls, const Integer& degree) {
  std::vector<Violation> out;
  if (degree < 1) {
    out.push_back({"", "degree", "degree must be positive, got " + degree.str()});
    return out;
  }
  Integer order = class_order(cls);
  if (!divides(order, degree))
    out.push_back({"", "order-divides-degree", "class order " + order.str() + " does not divide degree " + degree.str()});
  return out;
}

inline Integer local_index(const AlgebraDescriptor& B, std::string_view id) { return local_index(B.brauer_class(), id); }

/// For a division algebra of degree n and a prime p | n, a place whose local
/// index is divisible by p^{v_p(n)}. The first such place in place-set order.
inline Place p_primary_witness(const AlgebraDescriptor& B, const Integer& p) {
  if (!is_prime(p)) throw PreconditionError(p.str() + " is not prime");
  if (!divides(p, B.degree())) throw PreconditionError(p.str() + " ∤ " + B.degree().str());
  if (!B.is_division()) throw PreconditionError("p-primary witness needs a division algebra");
  const Integer pt = ipow(p, valuation(B.degree(), p));
  for (const auto& [i, q] : B.brauer_class().support())
    if (divides(pt, q.denominator())) return B.placeset()[i];
  // Unreachable: the class order is the lcm of the local indices.
  throw Error("no p-primary witness place for p = " + p.str());
}

}  // namespace divsel
