#pragma once

#include "divsel/arith.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace divsel {

/// One failed invariant. place_id is empty for global rules.
struct Violation {
  std::string place_id;
  std::string rule;
  std::string message;

  bool operator==(const Violation&) const = default;
};

/// Raised when a value is requested from a failed validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(summarize(violations)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& vs) {
    std::string s = "validation failed";
    for (const auto& v : vs) {
      s += "; ";
      if (!v.place_id.empty()) s += v.place_id + ": ";
      s += v.message;
    }
    return s;
  }
  std::vector<Violation> violations_;
};

/// Either a validated value or the complete list of violations.
template <class T>
class Validated {
 public:
  Validated(T value) : value_(std::move(value)) {}
  Validated(std::vector<Violation> violations) : violations_(std::move(violations)) {}

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    if (!value_) throw ValidationError(violations_);
    return *value_;
  }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::optional<T> value_;
  std::vector<Violation> violations_;
};

/// Local evidence for a negative decision.
struct Witness {
  std::string place_id;
  std::string message;
  std::optional<Integer> value{};  // offending local degree or bound
  std::optional<Integer> index{};  // local index of the algebra, if relevant
};

/// Outcome of a yes/no local-global test.
struct Decision {
  bool holds = true;
  std::optional<Witness> witness;
  std::string reason;
  std::vector<std::string> unchecked;
  std::vector<std::string> notes;

  explicit operator bool() const { return holds; }

  static Decision fail(Witness w, std::string reason = {}) {
    Decision d;
    d.holds = false;
    d.witness = std::move(w);
    d.reason = std::move(reason);
    return d;
  }
};

}  // namespace divsel
