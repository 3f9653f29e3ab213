#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "odmx/graph.hpp"
#include "odmx/rule_lang.hpp"

namespace odmx {

struct Violation {
  ConstraintId id;
  std::string label;
  Binding witness;  // restricted to the constraint's report variables

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  Phase phase = Phase::Source;
  std::vector<ConstraintId> checked;
  std::vector<Violation> violations;
  // Violation counts keyed by "SC", "SR", "WF" and "TR".
  std::map<std::string, std::size_t> counts{{"SC", 0}, {"SR", 0}, {"WF", 0}, {"TR", 0}};

  [[nodiscard]] bool valid() const noexcept { return violations.empty(); }
};

// The models a check may read. Source-phase constraints read only the source,
// target-phase only the target, cross-phase the union of both.
struct ModelGraphs {
  const Graph* source = nullptr;
  const Graph* target = nullptr;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One violation per distinct witness, sorted. Throws ValidationError when the
// graph the constraint's phase needs is missing.
std::vector<Violation> check(const ModelGraphs& graphs, const Constraint& c);

struct CheckOptions {
  bool parallel = false;
};

// Checks every catalog constraint of the given phase independently.
ValidationReport check_catalog(const ModelGraphs& graphs, const std::vector<Constraint>& catalog, Phase phase,
                               CheckOptions options = {});

// ---- report rendering ------------------------------------------------------

// Shortest prefixed form of an IRI under the given prefixes, or "" if none
// applies.
std::string short_form(const Iri& iri, const PrefixMap& prefixes);

// `VIOLATION <id> <label> ?v=<term> ...` per violation, then
// `SUMMARY phase=<p> checked=<n> violations=<m>`.
std::string format_lines(const ValidationReport& report);

// Human-readable rendering; witnesses show the prefixed short form next to
// the full IRI.
std::string format_text(const ValidationReport& report, const std::vector<Constraint>& catalog,
                        const PrefixMap& prefixes);

}  // namespace odmx
