#pragma once

// Decision procedure for selectivity of commutative orders in central
// division algebras over number fields.
//
// A division algebra B of degree n admits selective orders in a maximal
// subfield L only if n = 2 * odd, every finite local index is odd, B splits
// as (quaternion) ⊗ (odd degree division algebra), and L contains a quadratic
// extension that is selective for the quaternion factor. Conversely those
// conditions make the maximal order of L embed in exactly half of the
// conjugacy classes of maximal orders.

#include "divsel/brauer.hpp"
#include "divsel/class_fields.hpp"
#include "divsel/embeddings.hpp"
#include "divsel/places.hpp"

#include <optional>
#include <string>
#include <vector>

namespace divsel {

enum class ObstructionKind { degree_not_twice_odd, even_finite_ramification, no_embedding, no_selective_quadratic };

inline std::string_view to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::degree_not_twice_odd: return "degree_not_twice_odd";
    case ObstructionKind::even_finite_ramification: return "even_finite_ramification";
    case ObstructionKind::no_embedding: return "no_embedding";
    case ObstructionKind::no_selective_quadratic: return "no_selective_quadratic";
  }
  return "?";
}

struct Obstruction {
  ObstructionKind kind;
  std::optional<std::string> place_id;
  std::optional<Integer> value;
  std::string narrative;
};

namespace detail {

inline void require_division(const AlgebraDescriptor& B, std::string_view what) {
  if (!B.is_division())
    throw PreconditionError(std::string(what) + " needs a division algebra; class order " +
                            class_order(B.brauer_class()).str() + " ≠ degree " + B.degree().str());
}

}  // namespace detail

/// ok (nullopt) iff the degree is twice an odd number.
inline std::optional<Obstruction> check_degree_condition(const AlgebraDescriptor& B) {
  detail::require_division(B, "degree condition");
  const Integer& n = B.degree();
  if (n % 2 == 0 && (n / 2) % 2 == 1) return std::nullopt;
  std::string why;
  if (n % 2 == 1) {
    why = "degree " + n.str() +
          " is odd: for each prime p | n some finite place has p^{v_p(n)} | e_p, so p ∤ [F:K] and F = K";
  } else {
    why = "4 divides degree " + n.str() +
          ": a finite place has 2^{v_2(n)} | e_p, so 2 ∤ [F:K]; odd primes are excluded likewise, so F = K";
  }
  return Obstruction{ObstructionKind::degree_not_twice_odd, std::nullopt, n, why};
}

/// ok (nullopt) iff every finite local index is odd.
inline std::optional<Obstruction> check_finite_odd_condition(const AlgebraDescriptor& B) {
  detail::require_division(B, "finite ramification condition");
  for (const auto& [i, q] : B.brauer_class().support()) {
    const Place& p = B.placeset()[i];
    if (!p.is_finite() || q.denominator() % 2 != 0) continue;
    return Obstruction{ObstructionKind::even_finite_ramification, p.id(), q.denominator(),
                       "local index " + q.denominator().str() + " at finite place " + p.id() +
                           " is even, so 2 ∤ [F:K] and F = K"};
  }
  return std::nullopt;
}

/// Structured replay of the local-global divisibility argument for one prime.
struct DivisibilityCertificate {
  Integer prime;
  unsigned exponent = 0;  // t = v_p(n)
  Integer prime_power;    // p^t
  std::optional<std::string> witness;  // finite place with p^t | e
  Integer local_index;                 // e at the witness
  Integer inertia_bound;               // n / e, coprime to p
  struct PartFact {
    Integer local_degree;
    bool divisible = false;
  };
  std::vector<PartFact> part_facts;
  /// True iff the certificate proves p ∤ [F:K].
  bool concludes = false;
  std::string narrative;
};

/// For an embedded maximal subfield L and a prime p | n: at a finite place
/// where p^t divides the local index, the spinor class field has inertia
/// degree prime to p and no ramification, while every local degree of L is a
/// multiple of p^t. Summing over the places of L above the place of F gives
/// p^t | [L:F], hence p ∤ [F:K].
inline DivisibilityCertificate divisibility_obstruction_oracle(const AlgebraDescriptor& B, const FieldLocalData& L,
                                                               const Integer& p) {
  if (!is_prime(p)) throw PreconditionError(p.str() + " is not prime");
  if (!divides(p, B.degree())) throw PreconditionError(p.str() + " ∤ " + B.degree().str());
  detail::require_division(B, "divisibility oracle");
  if (!embeds_as_maximal_subfield(L, B)) throw PreconditionError("L does not embed into the algebra");

  DivisibilityCertificate cert;
  cert.prime = p;
  cert.exponent = valuation(B.degree(), p);
  cert.prime_power = ipow(p, cert.exponent);
  for (const auto& [i, q] : B.brauer_class().support()) {
    const Place& place = B.placeset()[i];
    if (place.is_finite() && divides(cert.prime_power, q.denominator())) {
      cert.witness = place.id();
      cert.local_index = q.denominator();
      break;
    }
  }
  if (!cert.witness) {
    cert.narrative = "no finite place has " + cert.prime_power.str() +
                     " | e_p; the divisibility argument does not apply to p = " + p.str();
    return cert;
  }
  cert.inertia_bound = B.degree() / cert.local_index;
  bool all = !divides(p, cert.inertia_bound);
  for (const Integer& part : *L.at(*cert.witness)) {
    bool ok = divides(cert.prime_power, part);
    cert.part_facts.push_back({part, ok});
    all = all && ok;
  }
  cert.concludes = all;
  cert.narrative = all ? p.str() + "^" + std::to_string(cert.exponent) + " divides every local degree of L over " +
                             *cert.witness + " and f_p(F/K) | " + cert.inertia_bound.str() + ", so " +
                             cert.prime_power.str() + " | [L:F] and " + p.str() + " ∤ [F:K]"
                       : "divisibility facts at " + *cert.witness + " fail; no conclusion";
  return cert;
}

struct Decomposition {
  AlgebraDescriptor quaternion_part;  // degree 2, ramified exactly at T
  AlgebraDescriptor odd_part;         // odd degree division algebra
  std::vector<std::string> T;         // real places where B ramifies
};

/// B = B1 ⊗ B2 with B1 quaternion ramified exactly at the real ramified places
/// of B, and B2 carrying the finite invariants of B.
inline Decomposition decompose(const AlgebraDescriptor& B) {
  if (auto o = check_degree_condition(B)) throw PreconditionError("degree condition fails: " + o->narrative);
  if (auto o = check_finite_odd_condition(B))
    throw PreconditionError("finite ramification condition fails: " + o->narrative);

  const QMod1 half(Rational(1, 2));
  std::vector<BrauerClass::Entry> quaternion, odd;
  std::vector<std::string> T;
  for (const auto& [i, q] : B.brauer_class().support()) {
    const Place& p = B.placeset()[i];
    if (p.is_real()) {
      quaternion.emplace_back(i, half);
      T.push_back(p.id());
    } else {
      odd.emplace_back(i, q);
    }
  }
  // The 2-primary part of the invariant sum vanishes and the finite
  // invariants have odd denominators, so |T| is even.
  if (T.size() % 2 != 0) throw Error("odd number of real ramified places in a valid class");

  Decomposition d{AlgebraDescriptor(BrauerClass::from_canonical(B.places(), std::move(quaternion)), 2),
                  AlgebraDescriptor(BrauerClass::from_canonical(B.places(), std::move(odd)), B.degree() / 2),
                  std::move(T)};
  if (!d.odd_part.is_division()) throw Error("odd part of the decomposition is not a division algebra");
  if (tensor(d.quaternion_part.brauer_class(), d.odd_part.brauer_class()) != B.brauer_class())
    throw Error("decomposition does not reconstruct the class");
  return d;
}

// ---------------------------------------------------------------------------
// Local requirements on the selective quadratic subfield.

enum class Requirement { unconstrained, must_split, must_be_unramified, must_ramify };

inline std::string_view to_string(Requirement r) {
  switch (r) {
    case Requirement::unconstrained: return "unconstrained";
    case Requirement::must_split: return "must_split";
    case Requirement::must_be_unramified: return "must_be_unramified";
    case Requirement::must_ramify: return "must_ramify";
  }
  return "?";
}

inline bool requirement_admits(Requirement r, QuadraticBehavior b) {
  switch (r) {
    case Requirement::unconstrained: return true;
    case Requirement::must_split: return b == QuadraticBehavior::split;
    case Requirement::must_be_unramified: return b != QuadraticBehavior::ramified;
    case Requirement::must_ramify: return b == QuadraticBehavior::ramified;
  }
  return false;
}

class QuadraticConstraintTable {
 public:
  struct Entry {
    std::string place_id;
    Requirement requirement = Requirement::unconstrained;
    std::vector<std::string> provenance;
  };
  struct Conflict {
    std::string place_id;
    Requirement existing;
    Requirement incoming;
    std::string existing_provenance;
    std::string incoming_provenance;
  };

  explicit QuadraticConstraintTable(PlaceSetPtr places) : places_(std::move(places)) {
    for (const Place& p : *places_) entries_.push_back({p.id(), Requirement::unconstrained, {}});
  }

  /// Adds a requirement, merging with what is already there. must_split
  /// refines must_be_unramified; ramified versus unramified is a conflict,
  /// which is recorded while the entry keeps its earlier requirement.
  void require(std::string_view place_id, Requirement r, std::string provenance) {
    Entry& e = entries_[places_->require_index(place_id)];
    if (r == Requirement::unconstrained) return;
    auto first_provenance = [&] { return e.provenance.empty() ? std::string() : e.provenance.front(); };
    Requirement cur = e.requirement;
    if (cur == Requirement::unconstrained || cur == r) {
      e.requirement = r;
    } else if ((cur == Requirement::must_be_unramified && r == Requirement::must_split) ||
               (cur == Requirement::must_split && r == Requirement::must_be_unramified)) {
      e.requirement = Requirement::must_split;
    } else {
      conflicts_.push_back({e.place_id, cur, r, first_provenance(), provenance});
      return;
    }
    e.provenance.push_back(std::move(provenance));
  }

  /// A global reason that no quadratic extension can qualify.
  void block(std::string reason) { blocked_.push_back(std::move(reason)); }

  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<Conflict>& conflicts() const { return conflicts_; }
  const std::vector<std::string>& blocked() const { return blocked_; }
  const PlaceSetPtr& places() const { return places_; }

  Requirement at(std::string_view place_id) const { return entries_[places_->require_index(place_id)].requirement; }

  bool satisfiable() const { return conflicts_.empty() && blocked_.empty(); }

  /// Undeclared places satisfy every requirement except must_ramify, which
  /// needs positive evidence.
  bool satisfied_by(const QuadraticProfile& E) const {
    if (!satisfiable()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      auto b = behavior_at(E, (*places_)[i]);
      if (!b) {
        if (entries_[i].requirement == Requirement::must_ramify) return false;
        continue;
      }
      if (!requirement_admits(entries_[i].requirement, *b)) return false;
    }
    return true;
  }

 private:
  PlaceSetPtr places_;
  std::vector<Entry> entries_;
  std::vector<Conflict> conflicts_;
  std::vector<std::string> blocked_;
};

inline QuadraticConstraintTable derive_quadratic_constraints(const AlgebraDescriptor& B, const FieldLocalData& L) {
  Decomposition d = decompose(B);
  if (!embeds_as_maximal_subfield(L, B)) throw PreconditionError("L does not embed into the algebra");
  const AlgebraDescriptor& B1 = d.quaternion_part;
  const SpinorConstraints C = spinor_classfield_constraints(B1);

  QuadraticConstraintTable table(B.places());
  if (!eichler_condition(B1)) table.block("quaternion factor is totally definite; the Eichler condition fails");

  const PlaceSet& P = B.placeset();
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Place& place = P[i];
    const auto& id = place.id();
    if (place.is_real()) {
      if (!B1.brauer_class().invariant_at(i).is_zero())
        table.require(id, Requirement::must_ramify, "quaternion factor ramifies at " + id);
      else
        table.require(id, Requirement::must_split, "spinor class field is unramified at matrix place " + id);
    } else if (place.is_finite()) {
      table.require(id, Requirement::must_be_unramified, "spinor class field is unramified at finite places");
      if (!divides(2, C.inertia_bound_at(id)))
        table.require(id, Requirement::must_split, "odd inertia bound " + C.inertia_bound_at(id).str() + " at " + id);
      if (const Partition* parts = L.at(id)) {
        for (const Integer& part : *parts) {
          if (divides(2, part)) continue;
          table.require(id, Requirement::must_split, "L has odd local degree " + part.str() + " at " + id);
          break;
        }
      }
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Candidate quadratic subfields and the verdict.

struct SubCheck {
  std::string name;
  Decision decision;
};

struct CandidateReport {
  bool accepted = false;
  std::vector<SubCheck> checks;

  const SubCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.decision.holds) return &c;
    return nullptr;
  }
};

inline constexpr std::string_view kCheckCompatible = "compatible with L";
inline constexpr std::string_view kCheckEmbeds = "embeds into B1";
inline constexpr std::string_view kCheckSpinor = "within spinor constraints";
inline constexpr std::string_view kCheckEichler = "Eichler condition";

/// Whether E is a quadratic subfield of L that is selective for the
/// quaternion factor of B. Every sub-check runs and is reported.
inline CandidateReport check_candidate_E(const QuadraticProfile& E, const AlgebraDescriptor& B,
                                         const FieldLocalData& L) {
  Decomposition d = decompose(B);
  if (L.degree() != B.degree()) throw PreconditionError("degree mismatch between L and the algebra");
  if (auto vs = validate_quadratic_profile(E, B.placeset()); !vs.empty()) throw ValidationError(vs);
  const AlgebraDescriptor& B1 = d.quaternion_part;

  CandidateReport r;
  r.checks.push_back({std::string(kCheckCompatible), quadratic_compatible_with(L, E, B.placeset())});

  Decision embeds;
  bool covered = true;
  for (const Place& p : ramification_set(B1.brauer_class())) {
    if (E.declares(p.id())) continue;
    embeds = Decision::fail({p.id(), "E has no local data at ramified place " + p.id()}, "undeclared");
    covered = false;
    break;
  }
  if (covered) embeds = quadratic_embeds_in_quaternion(E, B1);
  r.checks.push_back({std::string(kCheckEmbeds), embeds});

  r.checks.push_back({std::string(kCheckSpinor), quadratic_within_spinor(E, spinor_classfield_constraints(B1))});

  Decision eichler;
  if (!eichler_condition(B1)) {
    eichler.holds = false;
    eichler.reason = "quaternion factor is totally definite";
  }
  r.checks.push_back({std::string(kCheckEichler), eichler});

  r.accepted = std::all_of(r.checks.begin(), r.checks.end(), [](const SubCheck& c) { return c.decision.holds; });
  return r;
}

enum class VerdictStatus { not_selective, selective, conditionally_selective };

inline std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::not_selective: return "NotSelective";
    case VerdictStatus::selective: return "Selective";
    case VerdictStatus::conditionally_selective: return "ConditionallySelective";
  }
  return "?";
}

struct SelectivityVerdict {
  VerdictStatus status = VerdictStatus::not_selective;
  std::optional<Obstruction> obstruction;         // iff not_selective
  std::optional<Decomposition> decomposition;     // iff status != not_selective
  std::optional<std::size_t> chosen_index;        // iff selective
  std::optional<QuadraticProfile> chosen_E;       // iff selective
  std::optional<QuadraticConstraintTable> constraint_table;  // iff conditionally_selective
  std::optional<ReducedFraction> rate;            // 1/2 selective, 1/1 not selective
  std::vector<CandidateReport> candidate_reports;
  /// False when candidates were exhausted without proving none can exist.
  bool unconditional = true;
  bool quaternion_case = false;
  std::vector<std::string> notes;
};

/// Selectivity of the maximal order of L in the division algebra B, using the
/// given quadratic profiles as candidates for the selective subfield.
inline SelectivityVerdict decide_selectivity(const AlgebraDescriptor& B, const FieldLocalData& L,
                                             const std::vector<QuadraticProfile>& candidates) {
  if (auto vs = validate_field_local_data(L, B.placeset()); !vs.empty()) throw ValidationError(vs);
  if (L.degree() != B.degree())
    throw PreconditionError("degree mismatch: [L:K] = " + L.degree().str() + ", algebra degree " + B.degree().str());
  detail::require_division(B, "selectivity");

  SelectivityVerdict v;
  v.notes.push_back("verdict concerns the maximal order of L; for proper suborders only the necessary conditions apply");
  auto not_selective = [&](Obstruction o) {
    v.status = VerdictStatus::not_selective;
    v.obstruction = std::move(o);
    v.rate = selectivity_proportion(1);
    return v;
  };

  Decision emb = embeds_as_maximal_subfield(L, B);
  if (!emb) {
    const Witness& w = *emb.witness;
    return not_selective({ObstructionKind::no_embedding, w.place_id, w.value, w.message});
  }
  if (auto o = check_degree_condition(B)) return not_selective(*o);
  if (auto o = check_finite_odd_condition(B)) return not_selective(*o);

  v.decomposition = decompose(B);
  v.quaternion_case = B.degree() == 2;
  if (v.quaternion_case) v.notes.push_back("quaternion case: reduces to the Chinburg-Friedman criterion");

  if (candidates.empty()) {
    v.status = VerdictStatus::conditionally_selective;
    v.constraint_table = derive_quadratic_constraints(B, L);
    v.unconditional = false;
    v.notes.push_back("local constraints do not certify that a global quadratic extension exists");
    return v;
  }

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    v.candidate_reports.push_back(check_candidate_E(candidates[i], B, L));
    if (!v.candidate_reports.back().accepted) continue;
    v.status = VerdictStatus::selective;
    v.chosen_index = i;
    v.chosen_E = candidates[i];
    v.rate = selectivity_proportion(2);
    return v;
  }

  // Every candidate failed. The verdict is unconditional only when the local
  // constraints themselves cannot be met.
  v.unconditional = !derive_quadratic_constraints(B, L).satisfiable();
  if (!v.unconditional) v.notes.push_back("candidates exhausted, not proven exhaustive");
  v.decomposition.reset();
  return not_selective({ObstructionKind::no_selective_quadratic, std::nullopt, std::nullopt,
                        v.unconditional ? "no quadratic extension can satisfy the local constraints"
                                        : "no candidate quadratic extension is selective for the quaternion factor"});
}

}  // namespace divsel
