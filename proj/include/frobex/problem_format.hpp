#ifndef FROBEX_PROBLEM_FORMAT_HPP
#define FROBEX_PROBLEM_FORMAT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobex/nested.hpp"

namespace frobex {

/// Load-time failures, each distinguishable in the report.
enum class LoadErrorKind { syntax, undefined_reference, structural };

struct LoadError {
  LoadErrorKind kind = LoadErrorKind::syntax;
  std::size_t line = 0;   // 1-based; 0 when not tied to a location
  std::size_t column = 0; // 1-based; 0 when not applicable
  std::string message;

  std::string render() const;
};

/// Result of parsing a problem file: either a full nested problem (file had
/// a tower line) or a bare bundle of named algebras, plus any errors.
struct ParsedProblem {
  std::optional<NestedProblem> nested;
  std::vector<std::pair<std::string, AlgebraPtr>> algebras;  // in declaration order
  std::vector<LoadError> errors;

  bool ok() const { return errors.empty(); }
};

/// Deterministic recursive-descent parse of the line-oriented `.frob`
/// grammar; all structural checks run at load.
ParsedProblem parse_problem(const std::string& text);

/// Canonical serialization; parse o serialize = identity on validated
/// problems, and the output is byte-stable across runs.
std::string serialize_problem(const NestedProblem& p);

}  // namespace frobex

#endif
