#pragma once

// Exhaustive small universes of Brauer classes, local field data and
// quadratic profiles, plus a sweep that replays the selectivity criterion
// over them and re-audits every verdict independently.

#include "divsel/brauer.hpp"
#include "divsel/selectivity.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace divsel {

struct PlaceTemplate {
  unsigned real = 0;
  unsigned complex = 0;
  unsigned finite = 0;

  unsigned total() const { return real + complex + finite; }
};

/// Places v1.., w1.., p1.. in that order.
inline PlaceSetPtr make_placeset(const PlaceTemplate& t) {
  std::vector<Place> places;
  for (unsigned i = 1; i <= t.real; ++i) places.emplace_back("v" + std::to_string(i), PlaceKind::real);
  for (unsigned i = 1; i <= t.complex; ++i) places.emplace_back("w" + std::to_string(i), PlaceKind::complex);
  for (unsigned i = 1; i <= t.finite; ++i) places.emplace_back("p" + std::to_string(i), PlaceKind::finite);
  return make_placeset(std::move(places));
}

struct EnumerationSpec {
  PlaceTemplate places;
  Integer max_degree = 1;
  std::vector<Integer> denominators{1};
};

inline std::vector<Violation> validate_enumeration_spec(const EnumerationSpec& spec) {
  std::vector<Violation> out;
  if (spec.max_degree < 1) out.push_back({"", "max-degree", "max_degree must be at least 1"});
  for (const auto& d : spec.denominators)
    if (d < 1) out.push_back({"", "denominators", "denominators must be positive"});
  return out;
}

/// Values a place may carry: zero always, plus every reduced a/d with d in
/// the allowed set and d | max_degree, restricted by the place kind.
/// Ascending order.
inline std::vector<QMod1> admissible_invariants(const Place& place, const EnumerationSpec& spec) {
  std::vector<QMod1> values{QMod1()};
  if (place.is_complex()) return values;
  for (const Integer& d : spec.denominators) {
    if (d <= 1 || !divides(d, spec.max_degree)) continue;
    if (place.is_real() && d != 2) continue;
    for (Integer a = 1; a < d; ++a)
      if (gcd(a, d) == 1) values.emplace_back(a, d);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

/// Every valid class over P allowed by spec, each once, in lexicographic
/// order of invariants with the first place most significant.
inline std::vector<BrauerClass> enumerate_classes(const EnumerationSpec& spec, const PlaceSetPtr& P) {
  if (auto vs = validate_enumeration_spec(spec); !vs.empty()) throw ValidationError(vs);
  const std::size_t k = P->size();
  std::vector<std::vector<QMod1>> values;
  for (const Place& p : *P) values.push_back(admissible_invariants(p, spec));

  std::vector<BrauerClass> out;
  std::vector<std::size_t> digit(k, 0);
  // partial[i] = sum of the chosen values at places < i
  std::vector<QMod1> partial(k + 1);
  std::size_t pos = 0;
  while (true) {
    for (; pos < k; ++pos) partial[pos + 1] = partial[pos] + values[pos][digit[pos]];
    if (partial[k].is_zero()) {
      std::vector<BrauerClass::Entry> entries;
      for (std::size_t i = 0; i < k; ++i) entries.emplace_back(i, values[i][digit[i]]);
      out.push_back(BrauerClass::from_canonical(P, std::move(entries)));
    }
    // advance the odometer from the last place
    std::size_t i = k;
    while (i > 0 && digit[i - 1] + 1 == values[i - 1].size()) digit[--i] = 0;
    if (i == 0) break;
    ++digit[i - 1];
    pos = i - 1;
  }
  return out;
}

inline std::vector<BrauerClass> enumerate_classes(const EnumerationSpec& spec) {
  return enumerate_classes(spec, make_placeset(spec.places));
}

/// Every assignment of a behavior to each finite place (split, inert,
/// ramified) and each real place (split, ramified). Complex places are left
/// implicit. First place most significant.
inline std::vector<QuadraticProfile> enumerate_quadratic_profiles(const PlaceSet& P) {
  using B = QuadraticBehavior;
  std::vector<QuadraticProfile> out{QuadraticProfile()};
  for (auto it = P.end(); it != P.begin();) {
    const Place& place = *--it;
    if (place.is_complex()) continue;
    std::vector<B> options = place.is_real() ? std::vector<B>{B::split, B::ramified}
                                             : std::vector<B>{B::split, B::inert, B::ramified};
    std::vector<QuadraticProfile> next;
    next.reserve(out.size() * options.size());
    for (B b : options)
      for (const auto& tail : out) next.push_back(tail.with(place.id(), b));
    out = std::move(next);
  }
  return out;
}

/// All partitions of n (non-increasing) whose parts satisfy allow(part).
inline std::vector<Partition> enumerate_partitions(const Integer& n, const std::function<bool(const Integer&)>& allow) {
  std::vector<Partition> out;
  Partition current;
  std::function<void(const Integer&, const Integer&)> rec = [&](const Integer& rest, const Integer& cap) {
    if (rest == 0) {
      out.push_back(current);
      return;
    }
    for (Integer part = std::min(rest, cap); part >= 1; --part) {
      if (!allow(part)) continue;
      current.push_back(part);
      rec(rest - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

/// Every partition of n that is a legal splitting over the given place.
inline std::vector<Partition> place_partitions(const Place& place, const Integer& n) {
  if (place.is_complex()) return {Partition(static_cast<std::size_t>(n), Integer(1))};
  if (place.is_real()) return enumerate_partitions(n, [](const Integer& x) { return x <= 2; });
  return enumerate_partitions(n, [](const Integer&) { return true; });
}

/// Every FieldLocalData of degree n declared at every place of P.
inline std::vector<FieldLocalData> enumerate_field_data(const PlaceSet& P, const Integer& n) {
  std::vector<FieldLocalData> out{FieldLocalData(n, {})};
  for (const Place& place : P) {
    std::vector<FieldLocalData> next;
    for (const auto& L : out) {
      for (const auto& parts : place_partitions(place, n)) {
        auto s = L.splittings();
        s.emplace(place.id(), parts);
        next.emplace_back(n, std::move(s));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Representative splittings for the sweep: partitions with parts drawn from
/// divisors of n, a few per place, covering both parities of local degree.
/// Only partitions compatible with local index e are produced.
inline std::vector<Partition> sweep_partitions(const Place& place, const Integer& n, const Integer& e) {
  auto repeat = [](const Integer& part, const Integer& count) {
    return Partition(static_cast<std::size_t>(count), part);
  };
  std::vector<Partition> out;
  auto add = [&](Partition p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  };
  if (place.is_complex()) {
    add(repeat(1, n));
  } else if (place.is_real()) {
    if (n % 2 == 0) add(repeat(2, n / 2));
    if (e == 1) add(repeat(1, n));
  } else {
    add({n});
    add(repeat(e, n / e));
    if (n % 2 == 0 && divides(e, n / 2)) add({n / 2, n / 2});
    if (e == 1) add(repeat(1, n));
  }
  return out;
}

inline std::vector<FieldLocalData> sweep_field_data(const AlgebraDescriptor& B) {
  const Integer& n = B.degree();
  std::vector<FieldLocalData> out{FieldLocalData(n, {})};
  const PlaceSet& P = B.placeset();
  for (std::size_t i = 0; i < P.size(); ++i) {
    std::vector<FieldLocalData> next;
    for (const auto& L : out) {
      for (auto& parts : sweep_partitions(P[i], n, local_index(B.brauer_class(), i))) {
        auto s = L.splittings();
        s.emplace(P[i].id(), std::move(parts));
        next.emplace_back(n, std::move(s));
      }
    }
    out = std::move(next);
  }
  // One field that fails to embed whenever B is nontrivial.
  if (!B.brauer_class().is_trivial()) {
    FieldLocalData::Splittings s;
    for (const Place& p : P) s.emplace(p.id(), Partition(static_cast<std::size_t>(n), Integer(1)));
    out.emplace_back(n, std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Independent audit of a Selective verdict, written from the raw invariants
// without going through the decision procedure.

inline std::vector<std::string> audit_selective(const AlgebraDescriptor& B, const FieldLocalData& L,
                                                const QuadraticProfile& E) {
  std::vector<std::string> failures;
  const PlaceSet& P = B.placeset();
  const Integer& n = B.degree();
  auto inv = [&](std::size_t i) { return B.brauer_class().invariant_at(i).representative(); };

  // L is a maximal subfield.
  if (L.degree() != n) failures.push_back("maximal subfield: [L:K] ≠ n");
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Partition* parts = L.at(P[i].id());
    Integer e = boost::multiprecision::denominator(inv(i));
    if (!parts) {
      if (P[i].is_archimedean() || e > 1) failures.push_back("maximal subfield: no data at " + P[i].id());
      continue;
    }
    for (const auto& part : *parts)
      if (part % e != 0) failures.push_back("maximal subfield: " + e.str() + " ∤ " + part.str() + " at " + P[i].id());
  }

  // (1) n = 2 * odd.
  if (n % 2 != 0 || (n / 2) % 2 != 1) failures.push_back("condition 1: n = " + n.str() + " is not twice an odd number");

  // (2) odd finite local indices.
  for (std::size_t i = 0; i < P.size(); ++i)
    if (P[i].is_finite() && boost::multiprecision::denominator(inv(i)) % 2 == 0)
      failures.push_back("condition 2: even local index at " + P[i].id());

  // (3) quaternion part on the real ramified places, odd part on the finite ones.
  Rational quaternion_sum = 0, odd_sum = 0;
  Integer odd_order = 1;
  std::vector<bool> in_T(P.size(), false);
  for (std::size_t i = 0; i < P.size(); ++i) {
    Rational q = inv(i);
    if (q == 0) continue;
    if (P[i].is_real()) {
      if (q != Rational(1, 2)) failures.push_back("condition 3: real invariant is not 1/2 at " + P[i].id());
      in_T[i] = true;
      quaternion_sum += Rational(1, 2);
    } else if (P[i].is_finite()) {
      odd_sum += q;
      odd_order = lcm(odd_order, boost::multiprecision::denominator(q));
    } else {
      failures.push_back("condition 3: complex place carries an invariant");
    }
  }
  if (boost::multiprecision::denominator(quaternion_sum) != 1)
    failures.push_back("condition 3: quaternion part has an odd number of ramified places");
  if (boost::multiprecision::denominator(odd_sum) != 1) failures.push_back("condition 3: odd part invariants do not sum to 0");
  if (n % 2 == 0 && odd_order != n / 2) failures.push_back("condition 3: odd part is not a division algebra of degree n/2");
  if (odd_order % 2 == 0) failures.push_back("condition 3: odd part has even order");

  // (4) E is a quadratic subfield of L selective for the quaternion part.
  bool eichler = false;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Place& place = P[i];
    if (place.is_complex() || (place.is_real() && !in_T[i])) eichler = true;
    if (place.is_complex()) continue;
    auto b = E.at(place.id());
    if (!b) {
      if (in_T[i]) failures.push_back("condition 4: E undeclared at " + place.id());
      continue;
    }
    if (in_T[i] && *b != QuadraticBehavior::ramified)
      failures.push_back("condition 4: E is not complex at Hamiltonian place " + place.id());
    if (place.is_real() && !in_T[i] && *b == QuadraticBehavior::ramified)
      failures.push_back("condition 4: E ramifies at unramified real place " + place.id());
    if (place.is_finite() && *b == QuadraticBehavior::ramified)
      failures.push_back("condition 4: E ramifies at finite place " + place.id());
    if (*b != QuadraticBehavior::split) {
      if (const Partition* parts = L.at(place.id()))
        for (const auto& part : *parts)
          if (part % 2 != 0) failures.push_back("condition 4: E ⊄ L locally at " + place.id());
    }
  }
  if (!eichler) failures.push_back("condition 4: quaternion part is totally definite");
  return failures;
}

// ---------------------------------------------------------------------------
// Sweep.

struct SweepConfig {
  PlaceTemplate places{2, 1, 3};
  unsigned min_degree = 1;
  unsigned max_degree = 6;
  /// Maximum number of (algebra, field) instances examined.
  std::uint64_t budget = 1'000'000;
  unsigned workers = 1;
};

struct SweepReport {
  bool complete = true;
  std::uint64_t algebras = 0;
  std::uint64_t instances = 0;
  std::uint64_t candidate_checks = 0;
  std::uint64_t selective = 0;
  std::uint64_t conditionally_selective = 0;
  std::uint64_t not_selective = 0;
  std::map<std::string, std::uint64_t> obstructions;
  std::map<std::string, std::uint64_t> selective_by_degree;
  std::vector<std::string> counterexamples;

  bool ok() const { return counterexamples.empty(); }

  /// Associative and commutative on the counters; counterexamples are
  /// concatenated in merge order.
  SweepReport& merge(const SweepReport& o) {
    complete = complete && o.complete;
    algebras += o.algebras;
    instances += o.instances;
    candidate_checks += o.candidate_checks;
    selective += o.selective;
    conditionally_selective += o.conditionally_selective;
    not_selective += o.not_selective;
    for (const auto& [k, v] : o.obstructions) obstructions[k] += v;
    for (const auto& [k, v] : o.selective_by_degree) selective_by_degree[k] += v;
    counterexamples.insert(counterexamples.end(), o.counterexamples.begin(), o.counterexamples.end());
    return *this;
  }
};

namespace detail {

inline std::string describe(const AlgebraDescriptor& B, const FieldLocalData& L) {
  std::string s = "B = " + to_string(B.brauer_class()) + " deg " + B.degree().str() + ", L = {";
  bool first = true;
  for (const auto& [id, parts] : L.splittings()) {
    if (!first) s += ", ";
    first = false;
    s += id + ":" + to_string(parts);
  }
  return s + "}";
}

inline void sweep_instance(const AlgebraDescriptor& B, const FieldLocalData& L,
                           const std::vector<QuadraticProfile>& profiles, SweepReport& report) {
  const Integer& n = B.degree();
  ++report.instances;
  auto fail = [&](const std::string& what) { report.counterexamples.push_back(describe(B, L) + ": " + what); };

  const bool cond1 = n % 2 == 0 && (n / 2) % 2 == 1;
  bool cond2 = true;
  for (const auto& [i, q] : B.brauer_class().support())
    if (B.placeset()[i].is_finite() && q.denominator() % 2 == 0) cond2 = false;
  const bool embeds = static_cast<bool>(embeds_as_maximal_subfield(L, B));

  SelectivityVerdict v = decide_selectivity(B, L, profiles);
  report.candidate_checks += v.candidate_reports.size();
  switch (v.status) {
    case VerdictStatus::selective: ++report.selective; ++report.selective_by_degree[n.str()]; break;
    case VerdictStatus::conditionally_selective: ++report.conditionally_selective; break;
    case VerdictStatus::not_selective:
      ++report.not_selective;
      ++report.obstructions[std::string(to_string(v.obstruction->kind))];
      break;
  }

  // Field presence and rate.
  const bool selective = v.status == VerdictStatus::selective;
  if (v.obstruction.has_value() != (v.status == VerdictStatus::not_selective)) fail("obstruction presence");
  if (v.decomposition.has_value() == (v.status == VerdictStatus::not_selective)) fail("decomposition presence");
  if (v.chosen_E.has_value() != selective) fail("chosen E presence");
  if (selective && v.rate != Rational(1, 2)) fail("selective rate is not 1/2");
  if (v.status == VerdictStatus::not_selective && v.rate != Rational(1)) fail("non-selective rate is not 1/1");

  // Necessity.
  if (selective && (!cond1 || !cond2 || !embeds)) fail("Selective verdict violates a necessary condition");
  if (selective) {
    for (const auto& f : audit_selective(B, L, *v.chosen_E)) fail("audit: " + f);
  }

  if (embeds && n > 1) {
    // The divisibility argument certifies p ∤ [F:K] for every prime p | n
    // exactly when condition 1 or 2 fails.
    bool all_certified = true;
    for (const Integer& p : prime_divisors(n))
      all_certified = all_certified && divisibility_obstruction_oracle(B, L, p).concludes;
    if (all_certified == (cond1 && cond2)) fail("divisibility oracle disagrees with conditions 1-2");
  }

  if (!v.decomposition) return;
  const Decomposition& d = *v.decomposition;
  if (tensor(d.quaternion_part.brauer_class(), d.odd_part.brauer_class()) != B.brauer_class())
    fail("decomposition does not reconstruct B");
  if (d.T.size() % 2 != 0) fail("|T| is odd");
  if (d.odd_part.degree() % 2 == 0 || !d.odd_part.is_division()) fail("odd part is not an odd division algebra");
  for (const auto& [i, q] : d.quaternion_part.brauer_class().support())
    if (!B.placeset()[i].is_real() || q != QMod1(Rational(1, 2))) fail("quaternion part off T");
  if (ramification_set(d.quaternion_part.brauer_class()).size() != d.T.size()) fail("quaternion support ≠ T");

  // Constraint table, candidate checker and audit agree on every profile.
  QuadraticConstraintTable table = derive_quadratic_constraints(B, L);
  bool any_accepted = false;
  for (const auto& E : profiles) {
    bool accepted = check_candidate_E(E, B, L).accepted;
    bool by_table = table.satisfied_by(E);
    bool by_audit = audit_selective(B, L, E).empty();
    any_accepted = any_accepted || accepted;
    if (accepted != by_table || accepted != by_audit) {
      std::string s = "profile disagreement (checker " + std::to_string(accepted) + ", table " +
                      std::to_string(by_table) + ", audit " + std::to_string(by_audit) + ")";
      fail(s);
    }
  }
  if (any_accepted != selective) fail("verdict disagrees with per-profile acceptance");
}

}  // namespace detail

/// Replays the selectivity criterion over every division algebra of degree in
/// [min_degree, max_degree] on the template place set, every representative
/// field datum, and every quadratic profile. Counterexamples are collected;
/// an empty list is the expected outcome.
inline SweepReport theorem_consistency_sweep(const SweepConfig& config) {
  PlaceSetPtr P = make_placeset(config.places);
  const std::vector<QuadraticProfile> profiles = enumerate_quadratic_profiles(*P);

  struct Instance {
    std::size_t algebra;
    FieldLocalData field;
  };
  std::vector<AlgebraDescriptor> algebras;
  std::vector<Instance> instances;
  SweepReport total;
  for (unsigned n = std::max(1u, config.min_degree); n <= config.max_degree && total.complete; ++n) {
    EnumerationSpec spec{config.places, n, divisors(n)};
    for (const BrauerClass& c : enumerate_classes(spec, P)) {
      if (class_order(c) != n) continue;
      algebras.emplace_back(c, n);
      ++total.algebras;
      for (auto& L : sweep_field_data(algebras.back())) {
        if (instances.size() >= config.budget) {
          total.complete = false;
          break;
        }
        instances.push_back({algebras.size() - 1, std::move(L)});
      }
      if (!total.complete) break;
    }
  }

  const unsigned workers = std::max(1u, config.workers);
  std::vector<SweepReport> partial(workers);
  auto run = [&](unsigned w) {
    const std::size_t begin = instances.size() * w / workers, end = instances.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i)
      detail::sweep_instance(algebras[instances[i].algebra], instances[i].field, profiles, partial[w]);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }
  for (const auto& r : partial) total.merge(r);
  return total;
}

}  // namespace divsel
