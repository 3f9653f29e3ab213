#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "odmx/errors.hpp"
#include "odmx/graph.hpp"
#include "odmx/rule_lang.hpp"

namespace odmx {

// Identifier construction: the first part's full IRI followed, without a
// separator, by the local name of each later IRI part or the lexical form of
// each later literal part. Throws EvalError if parts is empty or the first
// part is not an IRI.
Iri gen_id(std::span<const Term> parts);

// Receives every gen_id evaluation; used for collision reporting.
class GenIdObserver {
 public:
  virtual ~GenIdObserver() = default;
  virtual void on_gen_id(std::span<const Term> parts, const Iri& result) = 0;
};

// All maximal bindings extending seed that satisfy the body, evaluated left
// to right. Result is deduplicated and sorted.
std::vector<Binding> evaluate_body(const Dataset& data, const Body& body, const Binding& seed = {},
                                   GenIdObserver* observer = nullptr);

inline std::vector<Binding> evaluate_body(const Graph& graph, const Body& body, const Binding& seed = {}) {
  return evaluate_body(Dataset(graph), body, seed);
}

// Number of distinct values of count.var over solutions of count.over under
// binding, compared against count.bound.
bool count_eval(const Dataset& data, const Count& count, const Binding& binding);

struct TransformStats {
  std::size_t rules_fired = 0;          // rules with at least one solution
  std::size_t triples_produced = 0;     // head instantiations, before set collapse
  std::size_t duplicates_collapsed = 0;
  std::vector<std::string> warnings;    // gen_id collisions
};

struct TransformResult {
  Graph target;
  TransformStats stats;
};

struct TransformOptions {
  // Evaluate rules concurrently; the result is identical to sequential runs.
  bool parallel = false;
};

// Single pass over a fixed source: the target is the set of head
// instantiations of every rule under every solution of its body. Rules never
// read the target.
TransformResult apply_rules(const Graph& source, const std::vector<Rule>& rules, TransformOptions options = {});

}  // namespace odmx
