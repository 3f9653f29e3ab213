#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odmx/errors.hpp"
#include "odmx/graph.hpp"
#include "odmx/pattern.hpp"

namespace odmx {

// ---- AST ---------------------------------------------------------------------

struct BodyAtom;

// Arguments of builtins are variables or constant terms.
using Arg = PatternTerm;

struct Neq {
  Arg lhs, rhs;
  friend bool operator==(const Neq&, const Neq&) = default;
};

struct Eq {
  Arg lhs, rhs;
  friend bool operator==(const Eq&, const Eq&) = default;
};

// out = lhs ++ rhs over lexical forms; result is an xsd:string literal.
// When out is already bound it also runs backwards: with exactly one of
// lhs/rhs unbound, that side is solved as the matching suffix/prefix.
struct Concat {
  Arg lhs, rhs;
  Var out;
  friend bool operator==(const Concat&, const Concat&) = default;
};

// out = identifier built by gen_id() from the parts.
struct GenId {
  std::vector<Arg> parts;
  Var out;
  friend bool operator==(const GenId&, const GenId&) = default;
};

// Negation as failure: holds iff the inner conjunction has no solution.
struct Not {
  std::vector<BodyAtom> body;
  friend bool operator==(const Not&, const Not&) = default;
};

enum class CmpOp { Eq, Ne, Lt, Gt, Le, Ge };

// Counts distinct values of `var` over solutions of `over`; binds nothing.
// group_by variables must already be bound where the atom is evaluated.
struct Count {
  Var var;
  std::vector<BodyAtom> over;
  CmpOp cmp = CmpOp::Eq;
  std::int64_t bound = 0;
  std::vector<Var> group_by;
  friend bool operator==(const Count&, const Count&) = default;
};

struct BodyAtom {
  std::variant<TriplePattern, Neq, Eq, Concat, GenId, Not, Count> node;
  friend bool operator==(const BodyAtom&, const BodyAtom&) = default;
};

using Body = std::vector<BodyAtom>;

struct Rule {
  TriplePattern head;
  Body body;
  friend bool operator==(const Rule&, const Rule&) = default;
};

enum class Phase { Source, Target, Cross };
enum class Kind { SC, SR };
enum class Tag { WF, TR };

// Catalog identifier: a requirement number plus an optional variant suffix
// ("20b" is an alternate encoding of requirement 20).
struct ConstraintId {
  int number = 0;
  std::string variant;

  [[nodiscard]] std::string str() const { return std::to_string(number) + variant; }
  friend bool operator==(const ConstraintId&, const ConstraintId&) = default;
  friend auto operator<=>(const ConstraintId&, const ConstraintId&) = default;
};

// A requirement. The body describes a violation: every distinct solution,
// projected on `report`, is one violation. Several clauses act as a union.
struct Constraint {
  ConstraintId id;
  std::string label;
  Phase phase = Phase::Source;
  Kind kind = Kind::SC;
  Tag tag = Tag::WF;
  std::vector<Var> report;
  std::vector<Body> clauses;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

std::string_view to_string(Phase p);
std::string_view to_string(Kind k);
std::string_view to_string(Tag t);
std::string_view to_string(CmpOp op);
bool compare(std::int64_t lhs, CmpOp op, std::int64_t rhs);

// rdf, rdfs, owl, xsd and the two case-study namespaces mmA / mmB.
const PrefixMap& default_prefixes();

// ---- Parsing -----------------------------------------------------------------

// `.mtr` files. Enforces range restriction and the negation-free,
// aggregate-free restriction on transformation rules.
std::vector<Rule> parse_rules(std::string_view text, const PrefixMap& prefixes = default_prefixes());

// `.mtc` files. Enforces unique ids and that report variables are bound.
std::vector<Constraint> parse_constraints(std::string_view text,
                                          const PrefixMap& prefixes = default_prefixes());

// ---- Printing ----------------------------------------------------------------
// Output uses full IRIs and parses back to an equal AST.

std::string print_term(const PatternTerm& t);
std::string print_atom(const BodyAtom& atom);
std::string print_body(const Body& body);
std::string print_rule(const Rule& rule);
std::string print_rules(const std::vector<Rule>& rules);
std::string print_constraint(const Constraint& c);
std::string print_constraints(const std::vector<Constraint>& cs);

// ---- Static checks -----------------------------------------------------------

// Variables that are bound after the body succeeds (those introduced inside
// not/count excluded). Throws EvalError for a builtin whose inputs are not
// bound by earlier atoms.
std::vector<std::string> bound_variables(const Body& body, std::vector<std::string> already_bound = {});

// Every IRI used in predicate position, and every IRI used as the class of an
// rdf:type pattern, anywhere in the body (including nested atoms).
void collect_vocabulary(const Body& body, std::vector<Iri>& predicates, std::vector<Iri>& classes);

}  // namespace odmx
