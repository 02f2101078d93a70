#pragma once

// Command dispatch over a parsed problem file. Every command produces a
// human-readable report and, on request, a JSON report with the same content.
//
// Exit codes: 0 success, 1 negative answer to a yes/no question, 2 input
// error (unknown names, unmet preconditions, unknown command).

#include "divsel/brauer.hpp"
#include "divsel/class_fields.hpp"
#include "divsel/embeddings.hpp"
#include "divsel/enumeration.hpp"
#include "divsel/problem_file.hpp"
#include "divsel/selectivity.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace divsel {

struct CommandOptions {
  std::optional<std::string> algebra;
  std::optional<std::string> field;
  std::vector<std::string> candidates;
  unsigned max_degree = 6;
  unsigned min_degree = 1;
  PlaceTemplate sweep_places{2, 1, 3};
  std::uint64_t budget = 1'000'000;
  unsigned workers = 1;
  bool json = false;
};

struct CommandResult {
  std::string out;
  std::string err;
  int exit_code = 0;
};

inline constexpr std::string_view kCommands[] = {"validate", "analyze", "decompose", "embed", "selectivity", "enumerate"};

inline std::string usage_text() {
  return "usage: divsel <command> [problem.json] [options]\n"
         "commands:\n"
         "  validate     check a problem file\n"
         "  analyze      Brauer data of algebras (--algebra NAME)\n"
         "  decompose    quaternion ⊗ odd decomposition (--algebra NAME)\n"
         "  embed        maximal subfield test (--field NAME --algebra NAME)\n"
         "  selectivity  selectivity verdict (--algebra NAME --field NAME [--candidate NAME]...)\n"
         "  enumerate    consistency sweep over small universes (--max-degree N)\n"
         "options: --json for a machine-readable report\n";
}

namespace detail {

/// Collects the human and JSON renderings of one report side by side.
class Report {
 public:
  void line(const std::string& s) { text_ << s << '\n'; }
  ordered_json& json() { return json_; }

  CommandResult finish(bool as_json, int exit_code) const {
    CommandResult r;
    r.out = as_json ? json_.dump(2) + "\n" : text_.str();
    r.exit_code = exit_code;
    return r;
  }

 private:
  std::ostringstream text_;
  ordered_json json_ = ordered_json::object();
};

struct InputError : Error {
  using Error::Error;
};

inline const AlgebraDescriptor& need_algebra(const ProblemFile& pf, const CommandOptions& o) {
  if (!o.algebra) throw InputError("missing --algebra");
  auto it = pf.algebras.find(*o.algebra);
  if (it == pf.algebras.end()) throw InputError("unknown algebra '" + *o.algebra + "'");
  return it->second;
}

inline const FieldLocalData& need_field(const ProblemFile& pf, const CommandOptions& o) {
  if (!o.field) throw InputError("missing --field");
  auto it = pf.fields.find(*o.field);
  if (it == pf.fields.end()) throw InputError("unknown field '" + *o.field + "'");
  return it->second;
}

inline std::string join(const std::vector<std::string>& xs, std::string_view sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += xs[i];
  }
  return s;
}

inline std::vector<std::string> ids(const std::vector<Place>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.id());
  return out;
}

inline ordered_json invariants_json(const BrauerClass& c) {
  ordered_json j = ordered_json::object();
  for (const auto& [i, q] : c.support()) j[c.placeset()[i].id()] = q.str();
  return j;
}

inline ordered_json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  ordered_json j = {{"place", w->place_id}, {"message", w->message}};
  if (w->value) j["value"] = integer_json(*w->value);
  if (w->index) j["index"] = integer_json(*w->index);
  return j;
}

inline ordered_json decision_json(const Decision& d) {
  ordered_json j = {{"holds", d.holds}};
  if (!d.reason.empty()) j["reason"] = d.reason;
  if (d.witness) j["witness"] = witness_json(d.witness);
  if (!d.unchecked.empty()) j["unchecked"] = d.unchecked;
  if (!d.notes.empty()) j["notes"] = d.notes;
  return j;
}

inline std::string describe(const Decision& d) {
  if (d.holds) return "holds";
  if (d.witness) return "fails at " + d.witness->place_id + ": " + d.witness->message;
  return "fails: " + (d.reason.empty() ? std::string("see notes") : d.reason);
}

inline std::string describe(const AlgebraDescriptor& B) {
  return "degree " + B.degree().str() + ", invariants " + to_string(B.brauer_class());
}

inline CommandResult cmd_validate(const ProblemFile& pf, const CommandOptions& o) {
  Report r;
  unsigned real = 0, complex = 0, finite = 0;
  for (const Place& p : *pf.places) (p.is_real() ? real : p.is_complex() ? complex : finite)++;
  r.line("valid problem file");
  r.line("places: " + std::to_string(pf.places->size()) + " (" + std::to_string(real) + " real, " +
         std::to_string(complex) + " complex, " + std::to_string(finite) + " finite)");
  r.json()["command"] = "validate";
  r.json()["valid"] = true;
  r.json()["places"] = {{"total", pf.places->size()}, {"real", real}, {"complex", complex}, {"finite", finite}};

  r.line("algebras: " + std::to_string(pf.algebras.size()));
  ordered_json algebras = ordered_json::array();
  for (const auto& [name, B] : pf.algebras) {
    Integer order = class_order(B.brauer_class());
    r.line("  " + name + ": degree " + B.degree().str() + ", order " + order.str() +
           (B.is_division() ? ", division" : ", matrix size " + B.matrix_size().str()));
    algebras.push_back({{"name", name}, {"degree", integer_json(B.degree())}, {"order", integer_json(order)},
                        {"division", B.is_division()}});
  }
  r.json()["algebras"] = std::move(algebras);

  ordered_json fields = ordered_json::array();
  r.line("fields: " + std::to_string(pf.fields.size()));
  for (const auto& [name, L] : pf.fields) {
    r.line("  " + name + ": degree " + L.degree().str() + ", declared at " + join(L.coverage()));
    fields.push_back({{"name", name}, {"degree", integer_json(L.degree())}, {"coverage", L.coverage()}});
  }
  r.json()["fields"] = std::move(fields);

  ordered_json quadratics = ordered_json::array();
  r.line("quadratics: " + std::to_string(pf.quadratics.size()));
  for (const auto& [name, E] : pf.quadratics) {
    std::vector<std::string> parts;
    for (const Place& p : *pf.places)
      if (auto b = E.at(p.id())) parts.push_back(p.id() + ":" + std::string(to_string(*b)));
    r.line("  " + name + ": " + join(parts));
    quadratics.push_back(name);
  }
  r.json()["quadratics"] = std::move(quadratics);
  r.line("queries: " + std::to_string(pf.queries.size()));
  r.json()["queries"] = pf.queries.size();
  return r.finish(o.json, 0);
}

inline void analyze_one(Report& r, ordered_json& out, const std::string& name, const AlgebraDescriptor& B) {
  const BrauerClass& c = B.brauer_class();
  Integer order = class_order(c);
  ordered_json j = {{"name", name}, {"degree", integer_json(B.degree())}, {"order", integer_json(order)},
                    {"division", B.is_division()}, {"matrix_size", integer_json(B.matrix_size())},
                    {"invariants", invariants_json(c)}};
  r.line("algebra " + name);
  r.line("  degree: " + B.degree().str());
  r.line("  class order: " + order.str());
  r.line("  division: " + std::string(B.is_division() ? "yes" : "no, matrix size " + B.matrix_size().str()));
  r.line("  invariants: " + to_string(c));

  std::vector<std::string> indices;
  ordered_json jindices = ordered_json::object();
  for (const auto& [i, q] : c.support()) {
    indices.push_back(c.placeset()[i].id() + ":" + q.denominator().str());
    jindices[c.placeset()[i].id()] = integer_json(q.denominator());
  }
  r.line("  local indices: " + (indices.empty() ? std::string("all 1") : join(indices)));
  j["local_indices"] = std::move(jindices);

  auto real = ids(ramification_set(c, PlaceKind::real));
  auto finite = ids(ramification_set(c, PlaceKind::finite));
  r.line("  ramified real places: " + (real.empty() ? std::string("none") : join(real)));
  r.line("  ramified finite places: " + (finite.empty() ? std::string("none") : join(finite)));
  j["ramified_real"] = real;
  j["ramified_finite"] = finite;

  ordered_json witnesses = ordered_json::object();
  if (B.is_division() && B.degree() > 1) {
    std::vector<std::string> ws;
    for (const Integer& p : prime_divisors(B.degree())) {
      Place w = p_primary_witness(B, p);
      ws.push_back(p.str() + " -> " + w.id());
      witnesses[p.str()] = w.id();
    }
    r.line("  p-primary witnesses: " + join(ws, ", "));
  } else {
    r.line("  p-primary witnesses: none");
  }
  j["p_primary_witnesses"] = std::move(witnesses);

  bool eichler = eichler_condition(B);
  r.line("  Eichler condition: " + std::string(eichler ? "holds" : "fails (totally definite quaternion algebra)"));
  j["eichler"] = eichler;

  SpinorConstraints C = spinor_classfield_constraints(B);
  std::vector<std::string> bounds;
  ordered_json jbounds = ordered_json::object();
  for (const Place& p : *C.places) {
    auto it = C.finite_inertia_bound.find(p.id());
    if (it == C.finite_inertia_bound.end()) continue;
    bounds.push_back(p.id() + ":" + it->second.str());
    jbounds[p.id()] = integer_json(it->second);
  }
  r.line("  spinor class field: exponent " + C.exponent.str() + "; unramified at archimedean " +
         (C.archimedean_unramified.empty() ? std::string("none") : join(C.archimedean_unramified)) +
         "; inertia bounds " + (bounds.empty() ? std::string("none") : join(bounds)));
  j["spinor"] = {{"exponent", integer_json(C.exponent)},
                 {"archimedean_unramified", C.archimedean_unramified},
                 {"finite_inertia_bound", std::move(jbounds)}};

  if (B.is_division()) {
    auto c1 = check_degree_condition(B);
    auto c2 = check_finite_odd_condition(B);
    r.line("  degree twice an odd number: " + std::string(c1 ? "no" : "yes"));
    r.line("  finite local indices odd: " +
           std::string(c2 ? "no (" + *c2->place_id + " has index " + c2->value->str() + ")" : "yes"));
    j["degree_twice_odd"] = !c1;
    j["finite_indices_odd"] = !c2;
  }
  out.push_back(std::move(j));
}

inline CommandResult cmd_analyze(const ProblemFile& pf, const CommandOptions& o) {
  Report r;
  r.json()["command"] = "analyze";
  ordered_json out = ordered_json::array();
  if (o.algebra) {
    analyze_one(r, out, *o.algebra, need_algebra(pf, o));
  } else {
    for (const auto& [name, B] : pf.algebras) analyze_one(r, out, name, B);
  }
  r.json()["algebras"] = std::move(out);
  return r.finish(o.json, 0);
}

inline ordered_json decomposition_json(const Decomposition& d) {
  return {{"T", d.T},
          {"quaternion_part", {{"degree", 2}, {"invariants", invariants_json(d.quaternion_part.brauer_class())}}},
          {"odd_part",
           {{"degree", integer_json(d.odd_part.degree())}, {"invariants", invariants_json(d.odd_part.brauer_class())}}}};
}

inline void decomposition_lines(Report& r, const Decomposition& d, const std::string& indent) {
  r.line(indent + "T: " + (d.T.empty() ? std::string("none") : join(d.T)) + " (|T| = " + std::to_string(d.T.size()) + ")");
  r.line(indent + "quaternion part: " + describe(d.quaternion_part));
  r.line(indent + "odd part: " + describe(d.odd_part));
}

inline CommandResult cmd_decompose(const ProblemFile& pf, const CommandOptions& o) {
  const AlgebraDescriptor& B = need_algebra(pf, o);
  if (!B.is_division()) throw InputError("algebra '" + *o.algebra + "' is not a division algebra");
  Report r;
  r.json()["command"] = "decompose";
  r.json()["algebra"] = *o.algebra;
  std::optional<Obstruction> failed = check_degree_condition(B);
  if (!failed) failed = check_finite_odd_condition(B);
  if (failed) {
    r.line("algebra " + *o.algebra + " does not decompose");
    r.line("  " + std::string(to_string(failed->kind)) + (failed->place_id ? " at " + *failed->place_id : "") + ": " +
           failed->narrative);
    r.json()["decomposes"] = false;
    r.json()["obstruction"] = {{"kind", std::string(to_string(failed->kind))},
                               {"place", failed->place_id ? ordered_json(*failed->place_id) : ordered_json(nullptr)},
                               {"narrative", failed->narrative}};
    return r.finish(o.json, 1);
  }
  Decomposition d = decompose(B);
  r.line("algebra " + *o.algebra + " decomposes");
  decomposition_lines(r, d, "  ");
  r.json()["decomposes"] = true;
  r.json()["decomposition"] = decomposition_json(d);
  return r.finish(o.json, 0);
}

inline CommandResult cmd_embed(const ProblemFile& pf, const CommandOptions& o) {
  const AlgebraDescriptor& B = need_algebra(pf, o);
  const FieldLocalData& L = need_field(pf, o);
  Decision d = embeds_as_maximal_subfield(L, B);
  Report r;
  r.json()["command"] = "embed";
  r.json()["field"] = *o.field;
  r.json()["algebra"] = *o.algebra;
  r.json()["embeds"] = d.holds;
  if (d.holds) {
    r.line(*o.field + " embeds into " + *o.algebra + " as a maximal subfield");
  } else {
    const Witness& w = *d.witness;
    r.line(*o.field + " does not embed into " + *o.algebra);
    r.line("  witness: place " + w.place_id + ", local degree " + w.value->str() + ", local index " + w.index->str());
    r.json()["witness"] = witness_json(d.witness);
  }
  for (const auto& n : d.notes) r.line("note: " + n);
  if (!d.notes.empty()) r.json()["notes"] = d.notes;
  return r.finish(o.json, d.holds ? 0 : 1);
}

inline CommandResult cmd_selectivity(const ProblemFile& pf, const CommandOptions& o) {
  const AlgebraDescriptor& B = need_algebra(pf, o);
  const FieldLocalData& L = need_field(pf, o);
  std::vector<QuadraticProfile> candidates;
  for (const auto& name : o.candidates) {
    auto it = pf.quadratics.find(name);
    if (it == pf.quadratics.end()) throw InputError("unknown quadratic '" + name + "'");
    candidates.push_back(it->second);
  }
  SelectivityVerdict v = decide_selectivity(B, L, candidates);

  Report r;
  auto& j = r.json();
  j["command"] = "selectivity";
  j["algebra"] = *o.algebra;
  j["field"] = *o.field;
  j["status"] = std::string(to_string(v.status));
  j["rate"] = v.rate ? ordered_json(to_string(*v.rate)) : ordered_json(nullptr);
  r.line("algebra: " + *o.algebra + " (" + describe(B) + ")");
  r.line("field: " + *o.field);
  switch (v.status) {
    case VerdictStatus::selective:
      r.line("verdict: Selective, rate " + to_string(*v.rate));
      break;
    case VerdictStatus::not_selective:
      r.line("verdict: NotSelective, rate " + to_string(*v.rate));
      break;
    case VerdictStatus::conditionally_selective:
      r.line("verdict: ConditionallySelective, rate 1/2 if a quadratic extension meeting the constraints exists, "
             "1/1 otherwise");
      break;
  }

  if (v.obstruction) {
    const Obstruction& ob = *v.obstruction;
    r.line("obstruction: " + std::string(to_string(ob.kind)) + (ob.place_id ? " at " + *ob.place_id : "") + ": " +
           ob.narrative);
    j["obstruction"] = {{"kind", std::string(to_string(ob.kind))},
                        {"place", ob.place_id ? ordered_json(*ob.place_id) : ordered_json(nullptr)},
                        {"value", ob.value ? integer_json(*ob.value) : ordered_json(nullptr)},
                        {"narrative", ob.narrative}};
    if (ob.kind == ObstructionKind::no_selective_quadratic) {
      r.line(std::string("unconditional: ") + (v.unconditional ? "yes" : "no"));
      j["unconditional"] = v.unconditional;
    }
  }
  if (v.decomposition) {
    r.line("decomposition:");
    decomposition_lines(r, *v.decomposition, "  ");
    j["decomposition"] = decomposition_json(*v.decomposition);
  }
  if (v.chosen_index) {
    r.line("selective quadratic subfield: " + o.candidates[*v.chosen_index]);
    j["chosen_E"] = o.candidates[*v.chosen_index];
  }
  if (!v.candidate_reports.empty()) {
    r.line("candidates:");
    ordered_json cands = ordered_json::array();
    for (std::size_t i = 0; i < v.candidate_reports.size(); ++i) {
      const CandidateReport& cr = v.candidate_reports[i];
      ordered_json cj = {{"name", o.candidates[i]}, {"accepted", cr.accepted}};
      ordered_json checks = ordered_json::array();
      for (const auto& sc : cr.checks) checks.push_back({{"check", sc.name}, {"decision", decision_json(sc.decision)}});
      cj["checks"] = std::move(checks);
      cands.push_back(std::move(cj));
      if (cr.accepted) {
        r.line("  " + o.candidates[i] + ": accepted");
      } else {
        const SubCheck* f = cr.first_failure();
        r.line("  " + o.candidates[i] + ": rejected by '" + f->name + "', " + describe(f->decision));
      }
    }
    j["candidates"] = std::move(cands);
  }
  if (v.constraint_table) {
    const auto& t = *v.constraint_table;
    r.line("quadratic subfield constraints (" + std::string(t.satisfiable() ? "satisfiable" : "unsatisfiable") + "):");
    ordered_json entries = ordered_json::array();
    for (const auto& e : t.entries()) {
      r.line("  " + e.place_id + ": " + std::string(to_string(e.requirement)) +
             (e.provenance.empty() ? "" : " (" + join(e.provenance, "; ") + ")"));
      entries.push_back({{"place", e.place_id},
                         {"requirement", std::string(to_string(e.requirement))},
                         {"provenance", e.provenance}});
    }
    ordered_json conflicts = ordered_json::array();
    for (const auto& c : t.conflicts()) {
      r.line("  conflict at " + c.place_id + ": " + std::string(to_string(c.existing)) + " (" + c.existing_provenance +
             ") vs " + std::string(to_string(c.incoming)) + " (" + c.incoming_provenance + ")");
      conflicts.push_back({{"place", c.place_id},
                           {"existing", std::string(to_string(c.existing))},
                           {"incoming", std::string(to_string(c.incoming))},
                           {"existing_provenance", c.existing_provenance},
                           {"incoming_provenance", c.incoming_provenance}});
    }
    for (const auto& b : t.blocked()) r.line("  blocked: " + b);
    j["constraints"] = {{"satisfiable", t.satisfiable()},
                        {"entries", std::move(entries)},
                        {"conflicts", std::move(conflicts)},
                        {"blocked", t.blocked()}};
  }
  j["quaternion_case"] = v.quaternion_case;
  j["notes"] = v.notes;
  for (const auto& n : v.notes) r.line("note: " + n);
  return r.finish(o.json, v.status == VerdictStatus::not_selective ? 1 : 0);
}

inline CommandResult cmd_enumerate(const CommandOptions& o) {
  SweepConfig config;
  config.places = o.sweep_places;
  config.min_degree = o.min_degree;
  config.max_degree = o.max_degree;
  config.budget = o.budget;
  config.workers = o.workers;
  if (config.max_degree < 1) throw InputError("--max-degree must be at least 1");
  if (config.places.total() > 8) throw InputError("at most 8 places are supported by the sweep");
  SweepReport s = theorem_consistency_sweep(config);

  Report r;
  auto& j = r.json();
  const auto& t = config.places;
  r.line("theorem consistency sweep: degrees " + std::to_string(config.min_degree) + "-" +
         std::to_string(config.max_degree) + ", places " + std::to_string(t.real) + " real, " +
         std::to_string(t.complex) + " complex, " + std::to_string(t.finite) + " finite");
  r.line("result: " + std::to_string(s.selective) + " selective, " + std::to_string(s.counterexamples.size()) +
         " counterexamples");
  r.line("division algebras: " + std::to_string(s.algebras));
  r.line("instances: " + std::to_string(s.instances));
  r.line("candidate checks: " + std::to_string(s.candidate_checks));
  r.line("selective: " + std::to_string(s.selective));
  r.line("conditionally selective: " + std::to_string(s.conditionally_selective));
  r.line("not selective: " + std::to_string(s.not_selective));
  for (const auto& [k, v] : s.obstructions) r.line("  " + k + ": " + std::to_string(v));
  for (const auto& [k, v] : s.selective_by_degree) r.line("selective at degree " + k + ": " + std::to_string(v));
  r.line(std::string("complete: ") + (s.complete ? "yes" : "no (budget exceeded)"));
  for (const auto& c : s.counterexamples) r.line("counterexample: " + c);

  j["command"] = "enumerate";
  j["min_degree"] = config.min_degree;
  j["max_degree"] = config.max_degree;
  j["places"] = {{"real", t.real}, {"complex", t.complex}, {"finite", t.finite}};
  j["algebras"] = s.algebras;
  j["instances"] = s.instances;
  j["candidate_checks"] = s.candidate_checks;
  j["selective"] = s.selective;
  j["conditionally_selective"] = s.conditionally_selective;
  j["not_selective"] = s.not_selective;
  j["obstructions"] = s.obstructions;
  j["selective_by_degree"] = s.selective_by_degree;
  j["complete"] = s.complete;
  j["counterexamples"] = s.counterexamples;
  return r.finish(o.json, s.ok() ? 0 : 1);
}

}  // namespace detail

/// Runs one command. The problem file may be null only for `enumerate`.
inline CommandResult run_command(std::string_view command, const CommandOptions& options, const ProblemFile* problem) {
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands))
    return {"", "unknown command '" + std::string(command) + "'\n" + usage_text(), 2};
  try {
    if (command == "enumerate") return detail::cmd_enumerate(options);
    if (!problem) return {"", "command '" + std::string(command) + "' needs a problem file\n", 2};
    if (command == "validate") return detail::cmd_validate(*problem, options);
    if (command == "analyze") return detail::cmd_analyze(*problem, options);
    if (command == "decompose") return detail::cmd_decompose(*problem, options);
    if (command == "embed") return detail::cmd_embed(*problem, options);
    return detail::cmd_selectivity(*problem, options);
  } catch (const Error& e) {
    return {"", std::string("error: ") + e.what() + "\n", 2};
  }
}

}  // namespace divsel
