#pragma once

// JSON problem files: places, named algebras, named field data, named
// quadratic profiles and optional queries. Fractions are strings "a/b";
// JSON floating point literals are rejected everywhere.

#include "divsel/brauer.hpp"
#include "divsel/places.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divsel {

struct Query {
  std::string command;
  std::optional<std::string> algebra;
  std::optional<std::string> field;
  std::vector<std::string> candidates;

  bool operator==(const Query&) const = default;
};

struct ProblemFile {
  PlaceSetPtr places = make_placeset(std::vector<Place>{});
  std::map<std::string, AlgebraDescriptor> algebras;
  std::map<std::string, FieldLocalData> fields;
  std::map<std::string, QuadraticProfile> quadratics;
  std::vector<Query> queries;

  friend bool operator==(const ProblemFile& a, const ProblemFile& b) {
    return *a.places == *b.places && a.algebras == b.algebras && a.fields == b.fields &&
           a.quadratics == b.quadratics && a.queries == b.queries;
  }
};

enum class DiagnosticCode { syntax_error, schema_error, invalid_value, unresolved_reference, validation_violation };

inline std::string_view to_string(DiagnosticCode c) {
  switch (c) {
    case DiagnosticCode::syntax_error: return "syntax-error";
    case DiagnosticCode::schema_error: return "schema-error";
    case DiagnosticCode::invalid_value: return "invalid-value";
    case DiagnosticCode::unresolved_reference: return "unresolved-reference";
    case DiagnosticCode::validation_violation: return "validation-violation";
  }
  return "?";
}

struct Diagnostic {
  DiagnosticCode code;
  std::string location;  // JSON pointer to the offending field
  std::optional<std::size_t> line;
  std::string message;
};

inline std::string to_string(const Diagnostic& d) {
  std::string s(to_string(d.code));
  if (d.line) s += " at line " + std::to_string(*d.line);
  if (!d.location.empty()) s += " " + d.location;
  return s + ": " + d.message;
}

struct ParseResult {
  std::optional<ProblemFile> problem;
  std::vector<Diagnostic> diagnostics;
};

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline std::string pointer_escape(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

class ProblemReader {
 public:
  explicit ProblemReader(std::vector<Diagnostic>& diags) : diags_(diags) {}

  void error(DiagnosticCode code, std::string location, std::string message) {
    diags_.push_back({code, std::move(location), std::nullopt, std::move(message)});
  }

  /// Positive integer from a JSON unsigned integer or a digit string.
  std::optional<Integer> positive_integer(const json& j, const std::string& where) {
    std::optional<Integer> value;
    if (j.is_number_unsigned()) value = Integer(j.get<std::uint64_t>());
    else if (j.is_number_integer()) value = Integer(j.get<std::int64_t>());
    else if (j.is_string()) value = parse_integer(j.get<std::string>());
    else if (j.is_number_float()) {
      error(DiagnosticCode::invalid_value, where, "floating point literals are not accepted");
      return std::nullopt;
    }
    if (!value) {
      error(DiagnosticCode::schema_error, where, "expected a positive integer");
      return std::nullopt;
    }
    if (*value < 1) {
      error(DiagnosticCode::invalid_value, where, "must be positive, got " + value->str());
      return std::nullopt;
    }
    return value;
  }

  bool expect_object(const json& j, const std::string& where) {
    if (j.is_object()) return true;
    error(DiagnosticCode::schema_error, where, "expected an object");
    return false;
  }

  void reject_unknown_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        error(DiagnosticCode::schema_error, where + "/" + pointer_escape(key), "unknown key '" + key + "'");
    }
  }

  std::optional<PlaceSetPtr> places(const json& root) {
    if (!root.contains("places")) {
      error(DiagnosticCode::schema_error, "/places", "missing required section");
      return std::nullopt;
    }
    const json& list = root["places"];
    if (!list.is_array()) {
      error(DiagnosticCode::schema_error, "/places", "expected an array");
      return std::nullopt;
    }
    std::vector<Place> out;
    std::map<std::string, std::size_t> seen;
    bool ok = true;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "/places/" + std::to_string(i);
      const json& p = list[i];
      if (!expect_object(p, where)) {
        ok = false;
        continue;
      }
      reject_unknown_keys(p, where, {"id", "kind", "label"});
      if (!p.contains("id") || !p["id"].is_string() || p["id"].get<std::string>().empty()) {
        error(DiagnosticCode::schema_error, where + "/id", "expected a non-empty string");
        ok = false;
        continue;
      }
      std::string id = p["id"].get<std::string>();
      std::optional<PlaceKind> kind;
      if (p.contains("kind") && p["kind"].is_string()) kind = parse_place_kind(p["kind"].get<std::string>());
      if (!kind) {
        error(DiagnosticCode::invalid_value, where + "/kind", "kind must be one of finite, real, complex");
        ok = false;
        continue;
      }
      std::string label;
      if (p.contains("label")) {
        if (p["label"].is_string()) label = p["label"].get<std::string>();
        else error(DiagnosticCode::schema_error, where + "/label", "expected a string");
      }
      if (!seen.emplace(id, i).second) {
        error(DiagnosticCode::validation_violation, where + "/id", "duplicate place id '" + id + "'");
        ok = false;
        continue;
      }
      out.emplace_back(std::move(id), *kind, std::move(label));
    }
    if (!ok) return std::nullopt;
    return make_placeset(std::move(out));
  }

  void algebras(const json& section, const PlaceSetPtr& P, ProblemFile& out) {
    if (!expect_object(section, "/algebras")) return;
    for (const auto& [name, a] : section.items()) {
      const std::string where = "/algebras/" + pointer_escape(name);
      if (!expect_object(a, where)) continue;
      reject_unknown_keys(a, where, {"degree", "invariants"});
      std::optional<Integer> degree;
      if (!a.contains("degree")) error(DiagnosticCode::schema_error, where + "/degree", "missing degree");
      else degree = positive_integer(a["degree"], where + "/degree");

      RawInvariants raw;
      bool ok = degree.has_value();
      if (a.contains("invariants")) {
        const json& inv = a["invariants"];
        if (!expect_object(inv, where + "/invariants")) {
          ok = false;
        } else {
          for (const auto& [id, value] : inv.items()) {
            const std::string at = where + "/invariants/" + pointer_escape(id);
            if (!P->contains(id)) {
              error(DiagnosticCode::unresolved_reference, at, "unresolved place '" + id + "'");
              ok = false;
              continue;
            }
            if (!value.is_string()) {
              error(DiagnosticCode::invalid_value, at,
                    value.is_number_float() ? "floating point literals are not accepted; write \"a/b\""
                                            : "invariants must be strings \"a/b\"");
              ok = false;
              continue;
            }
            auto f = parse_fraction(value.get<std::string>());
            if (!f.value) {
              error(DiagnosticCode::invalid_value, at, f.error);
              ok = false;
              continue;
            }
            raw[id] = QMod1(*f.value);
          }
        }
      }
      if (!ok) continue;
      auto cls = validate_class(raw, P);
      if (!cls) {
        for (const auto& v : cls.violations())
          error(DiagnosticCode::validation_violation,
                v.place_id.empty() ? where + "/invariants" : where + "/invariants/" + pointer_escape(v.place_id),
                v.message);
        continue;
      }
      auto dv = validate_descriptor(cls.value(), *degree);
      if (!dv.empty()) {
        for (const auto& v : dv) error(DiagnosticCode::validation_violation, where + "/degree", v.message);
        continue;
      }
      out.algebras.emplace(name, AlgebraDescriptor(cls.value(), *degree));
    }
  }

  void fields(const json& section, const PlaceSetPtr& P, ProblemFile& out) {
    if (!expect_object(section, "/fields")) return;
    for (const auto& [name, f] : section.items()) {
      const std::string where = "/fields/" + pointer_escape(name);
      if (!expect_object(f, where)) continue;
      reject_unknown_keys(f, where, {"degree", "splittings"});
      std::optional<Integer> degree;
      if (!f.contains("degree")) error(DiagnosticCode::schema_error, where + "/degree", "missing degree");
      else degree = positive_integer(f["degree"], where + "/degree");
      bool ok = degree.has_value();
      FieldLocalData::Splittings splittings;
      if (f.contains("splittings")) {
        const json& s = f["splittings"];
        if (!expect_object(s, where + "/splittings")) {
          ok = false;
        } else {
          for (const auto& [id, parts] : s.items()) {
            const std::string at = where + "/splittings/" + pointer_escape(id);
            if (!P->contains(id)) {
              error(DiagnosticCode::unresolved_reference, at, "unresolved place '" + id + "'");
              ok = false;
              continue;
            }
            if (!parts.is_array()) {
              error(DiagnosticCode::schema_error, at, "expected an array of local degrees");
              ok = false;
              continue;
            }
            Partition partition;
            for (std::size_t k = 0; k < parts.size(); ++k) {
              auto v = positive_integer(parts[k], at + "/" + std::to_string(k));
              if (!v) ok = false;
              else partition.push_back(*v);
            }
            splittings.emplace(id, std::move(partition));
          }
        }
      }
      if (!ok) continue;
      FieldLocalData L(*degree, std::move(splittings));
      auto vs = validate_field_local_data(L, *P);
      if (!vs.empty()) {
        for (const auto& v : vs)
          error(DiagnosticCode::validation_violation,
                v.place_id.empty() ? where : where + "/splittings/" + pointer_escape(v.place_id), v.message);
        continue;
      }
      out.fields.emplace(name, std::move(L));
    }
  }

  void quadratics(const json& section, const PlaceSetPtr& P, ProblemFile& out) {
    if (!expect_object(section, "/quadratics")) return;
    for (const auto& [name, q] : section.items()) {
      const std::string where = "/quadratics/" + pointer_escape(name);
      if (!expect_object(q, where)) continue;
      QuadraticProfile::Behaviors behavior;
      bool ok = true;
      for (const auto& [id, b] : q.items()) {
        const std::string at = where + "/" + pointer_escape(id);
        if (!P->contains(id)) {
          error(DiagnosticCode::unresolved_reference, at, "unresolved place '" + id + "'");
          ok = false;
          continue;
        }
        std::optional<QuadraticBehavior> parsed;
        if (b.is_string()) parsed = parse_quadratic_behavior(b.get<std::string>());
        if (!parsed) {
          error(DiagnosticCode::invalid_value, at, "behavior must be one of split, inert, ramified");
          ok = false;
          continue;
        }
        behavior.emplace(id, *parsed);
      }
      if (!ok) continue;
      QuadraticProfile E(std::move(behavior));
      auto vs = validate_quadratic_profile(E, *P);
      if (!vs.empty()) {
        for (const auto& v : vs)
          error(DiagnosticCode::validation_violation, where + "/" + pointer_escape(v.place_id), v.message);
        continue;
      }
      out.quadratics.emplace(name, std::move(E));
    }
  }

  void queries(const json& section, ProblemFile& out) {
    if (!section.is_array()) {
      error(DiagnosticCode::schema_error, "/queries", "expected an array");
      return;
    }
    for (std::size_t i = 0; i < section.size(); ++i) {
      const std::string where = "/queries/" + std::to_string(i);
      const json& q = section[i];
      if (!expect_object(q, where)) continue;
      reject_unknown_keys(q, where, {"command", "algebra", "field", "candidates"});
      Query query;
      if (!q.contains("command") || !q["command"].is_string()) {
        error(DiagnosticCode::schema_error, where + "/command", "expected a command name");
        continue;
      }
      query.command = q["command"].get<std::string>();
      auto ref = [&](const char* key, const auto& table, const char* what) -> std::optional<std::string> {
        if (!q.contains(key)) return std::nullopt;
        if (!q[key].is_string()) {
          error(DiagnosticCode::schema_error, where + "/" + key, "expected a name");
          return std::nullopt;
        }
        std::string name = q[key].get<std::string>();
        if (!table.count(name))
          error(DiagnosticCode::unresolved_reference, where + "/" + key, std::string("unresolved ") + what + " '" + name + "'");
        return name;
      };
      query.algebra = ref("algebra", out.algebras, "algebra");
      query.field = ref("field", out.fields, "field");
      if (q.contains("candidates")) {
        const json& c = q["candidates"];
        if (!c.is_array()) {
          error(DiagnosticCode::schema_error, where + "/candidates", "expected an array of names");
        } else {
          for (std::size_t k = 0; k < c.size(); ++k) {
            const std::string at = where + "/candidates/" + std::to_string(k);
            if (!c[k].is_string()) {
              error(DiagnosticCode::schema_error, at, "expected a name");
              continue;
            }
            std::string name = c[k].get<std::string>();
            if (!out.quadratics.count(name))
              error(DiagnosticCode::unresolved_reference, at, "unresolved quadratic '" + name + "'");
            query.candidates.push_back(std::move(name));
          }
        }
      }
      out.queries.push_back(std::move(query));
    }
  }

 private:
  std::vector<Diagnostic>& diags_;
};

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

inline ordered_json integer_json(const Integer& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max()) return ordered_json(n.convert_to<std::uint64_t>());
  return ordered_json(n.str());
}

}  // namespace detail

/// Parses and fully validates a problem file. Never throws; every problem is
/// reported as a diagnostic and the problem is absent if any was found.
inline ParseResult parse_problem_file(std::string_view text) {
  ParseResult result;
  detail::json root;
  try {
    root = detail::json::parse(text.begin(), text.end());
  } catch (const detail::json::parse_error& e) {
    result.diagnostics.push_back({DiagnosticCode::syntax_error, "", detail::line_of(text, e.byte), e.what()});
    return result;
  }
  try {
    detail::ProblemReader reader(result.diagnostics);
    if (!root.is_object()) {
      reader.error(DiagnosticCode::schema_error, "", "top level must be an object");
      return result;
    }
    reader.reject_unknown_keys(root, "", {"places", "algebras", "fields", "quadratics", "queries"});
    auto places = reader.places(root);
    if (!places) return result;
    ProblemFile pf;
    pf.places = *places;
    if (root.contains("algebras")) reader.algebras(root["algebras"], pf.places, pf);
    if (root.contains("fields")) reader.fields(root["fields"], pf.places, pf);
    if (root.contains("quadratics")) reader.quadratics(root["quadratics"], pf.places, pf);
    if (root.contains("queries")) reader.queries(root["queries"], pf);
    if (result.diagnostics.empty()) result.problem = std::move(pf);
  } catch (const std::exception& e) {
    result.diagnostics.push_back({DiagnosticCode::schema_error, "", std::nullopt, e.what()});
    result.problem.reset();
  }
  return result;
}

/// Canonical JSON: places in set order, names sorted, per-place maps in
/// place-set order, zero invariants omitted.
inline std::string serialize_problem_file(const ProblemFile& pf) {
  using detail::ordered_json;
  ordered_json root = ordered_json::object();
  ordered_json places = ordered_json::array();
  for (const Place& p : *pf.places) {
    ordered_json entry = {{"id", p.id()}, {"kind", std::string(to_string(p.kind()))}};
    if (!p.label().empty()) entry["label"] = p.label();
    places.push_back(std::move(entry));
  }
  root["places"] = std::move(places);

  ordered_json algebras = ordered_json::object();
  for (const auto& [name, B] : pf.algebras) {
    ordered_json inv = ordered_json::object();
    for (const auto& [i, q] : B.brauer_class().support()) inv[(*pf.places)[i].id()] = q.str();
    algebras[name] = {{"degree", detail::integer_json(B.degree())}, {"invariants", std::move(inv)}};
  }
  root["algebras"] = std::move(algebras);

  ordered_json fields = ordered_json::object();
  for (const auto& [name, L] : pf.fields) {
    ordered_json s = ordered_json::object();
    for (const Place& p : *pf.places) {
      const Partition* parts = L.at(p.id());
      if (!parts) continue;
      ordered_json arr = ordered_json::array();
      for (const auto& x : *parts) arr.push_back(detail::integer_json(x));
      s[p.id()] = std::move(arr);
    }
    fields[name] = {{"degree", detail::integer_json(L.degree())}, {"splittings", std::move(s)}};
  }
  root["fields"] = std::move(fields);

  ordered_json quadratics = ordered_json::object();
  for (const auto& [name, E] : pf.quadratics) {
    ordered_json q = ordered_json::object();
    for (const Place& p : *pf.places)
      if (auto b = E.at(p.id())) q[p.id()] = std::string(to_string(*b));
    quadratics[name] = std::move(q);
  }
  root["quadratics"] = std::move(quadratics);

  if (!pf.queries.empty()) {
    ordered_json queries = ordered_json::array();
    for (const auto& q : pf.queries) {
      ordered_json entry = {{"command", q.command}};
      if (q.algebra) entry["algebra"] = *q.algebra;
      if (q.field) entry["field"] = *q.field;
      if (!q.candidates.empty()) entry["candidates"] = q.candidates;
      queries.push_back(std::move(entry));
    }
    root["queries"] = std::move(queries);
  }
  return root.dump(2) + "\n";
}

}  // namespace divsel
