#include "odmx/rule_lang.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "scanner.hpp"

namespace odmx {

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Source: return "source";
    case Phase::Target: return "target";
    case Phase::Cross: return "cross";
  }
  return "?";
}

std::string_view to_string(Kind k) { return k == Kind::SC ? "SC" : "SR"; }
std::string_view to_string(Tag t) { return t == Tag::WF ? "WF" : "TR"; }

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Gt: return ">";
    case CmpOp::Le: return "<=";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

bool compare(std::int64_t lhs, CmpOp op, std::int64_t rhs) {
  switch (op) {
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Gt: return lhs > rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Ge: return lhs >= rhs;
  }
  return false;
}

const PrefixMap& default_prefixes() {
  static const PrefixMap prefixes = {
      {"rdf", std::string(vocab::kRdf)},        {"rdfs", std::string(vocab::kRdfs)},
      {"owl", std::string(vocab::kOwl)},        {"xsd", std::string(vocab::kXsd)},
      {"mmA", std::string(vocab::kMetamodelA)}, {"mmB", std::string(vocab::kMetamodelB)},
  };
  return prefixes;
}

// ---- static analysis -------------------------------------------------------

namespace {

using Bound = std::set<std::string>;

bool is_bound(const Arg& a, const Bound& bound) {
  const auto* v = std::get_if<Var>(&a);
  return v == nullptr || bound.contains(v->name());
}

void mark_bound(const Arg& a, Bound& bound) {
  if (const auto* v = std::get_if<Var>(&a); v != nullptr && !v->anonymous()) bound.insert(v->name());
}

[[noreturn]] void unbound(const Arg& a, std::size_t k) {
  throw EvalError("unbound builtin argument " + std::get<Var>(a).name() + " at atom " + std::to_string(k));
}

void require_named(const Arg& a, std::size_t k) {
  if (const auto* v = std::get_if<Var>(&a); v != nullptr && v->anonymous()) {
    throw EvalError("anonymous variable ?_ cannot be a builtin argument at atom " + std::to_string(k));
  }
}

void analyze(const Body& body, Bound& bound) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    const std::size_t k = i + 1;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TriplePattern>) {
            mark_bound(n.subject, bound);
            mark_bound(n.predicate, bound);
            mark_bound(n.object, bound);
          } else if constexpr (std::is_same_v<T, Neq> || std::is_same_v<T, Eq>) {
            for (const Arg* a : {&n.lhs, &n.rhs}) {
              require_named(*a, k);
              if (!is_bound(*a, bound)) unbound(*a, k);
            }
          } else if constexpr (std::is_same_v<T, Concat>) {
            require_named(n.lhs, k);
            require_named(n.rhs, k);
            require_named(Arg(n.out), k);
            const bool l = is_bound(n.lhs, bound);
            const bool r = is_bound(n.rhs, bound);
            const bool o = bound.contains(n.out.name());
            if (!(l && r) && !(o && (l || r))) unbound(l ? n.rhs : n.lhs, k);
            mark_bound(n.lhs, bound);
            mark_bound(n.rhs, bound);
            mark_bound(Arg(n.out), bound);
          } else if constexpr (std::is_same_v<T, GenId>) {
            for (const auto& p : n.parts) {
              require_named(p, k);
              if (!is_bound(p, bound)) unbound(p, k);
            }
            require_named(Arg(n.out), k);
            mark_bound(Arg(n.out), bound);
          } else if constexpr (std::is_same_v<T, Not>) {
            Bound inner = bound;
            analyze(n.body, inner);
          } else if constexpr (std::is_same_v<T, Count>) {
            for (const auto& g : n.group_by) {
              if (!bound.contains(g.name())) {
                throw EvalError("unbound groupBy variable " + g.name() + " at atom " + std::to_string(k));
              }
            }
            Bound inner = bound;
            analyze(n.over, inner);
            if (n.var.anonymous() || !inner.contains(n.var.name())) {
              throw EvalError("count variable " + n.var.name() + " is not bound by its inner body at atom " +
                              std::to_string(k));
            }
          }
        },
        body[i].node);
  }
}

void collect_vars(const PatternTerm& t, std::vector<std::string>& out) {
  if (const auto* v = std::get_if<Var>(&t); v != nullptr && !v->anonymous()) out.push_back(v->name());
}

bool has_not_or_count(const Body& body, bool& is_not) {
  for (const auto& a : body) {
    if (std::holds_alternative<Not>(a.node)) {
      is_not = true;
      return true;
    }
    if (std::holds_alternative<Count>(a.node)) {
      is_not = false;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> bound_variables(const Body& body, std::vector<std::string> already_bound) {
  Bound bound(already_bound.begin(), already_bound.end());
  analyze(body, bound);
  return {bound.begin(), bound.end()};
}

void collect_vocabulary(const Body& body, std::vector<Iri>& predicates, std::vector<Iri>& classes) {
  for (const auto& a : body) {
    if (const auto* p = std::get_if<TriplePattern>(&a.node)) {
      const auto* pred = std::get_if<Term>(&p->predicate);
      if (pred != nullptr && pred->is_iri()) {
        predicates.push_back(pred->iri());
        const auto* obj = std::get_if<Term>(&p->object);
        if (pred->iri().str() == vocab::kRdfType && obj != nullptr && obj->is_iri()) classes.push_back(obj->iri());
      }
    } else if (const auto* n = std::get_if<Not>(&a.node)) {
      collect_vocabulary(n->body, predicates, classes);
    } else if (const auto* c = std::get_if<Count>(&a.node)) {
      collect_vocabulary(c->over, predicates, classes);
    }
  }
}

// ---- parser ----------------------------------------------------------------

namespace {

using detail::Position;
using detail::Scanner;

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_delim(char c) {
  return c == '\0' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == ')' || c == '(';
}

class Parser {
 public:
  Parser(std::string_view text, const PrefixMap& prefixes) : s_(text), prefixes_(prefixes) {}

  std::vector<Rule> rules() {
    std::vector<Rule> out;
    while (true) {
      s_.skip_space();
      if (s_.at_end()) break;
      if (prefix_directive()) continue;
      const Position at = s_.position();
      const std::size_t n = out.size() + 1;
      TriplePattern head = pattern();
      s_.skip_space();
      s_.expect(":-", "':-' after rule head");
      Rule r{std::move(head), atoms()};
      s_.skip_space();
      s_.expect(".", "'.' at end of rule");
      check_rule(r, n, at);
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<Constraint> constraints() {
    std::vector<Constraint> out;
    std::set<ConstraintId> seen;
    while (true) {
      s_.skip_space();
      if (s_.at_end()) break;
      if (prefix_directive()) continue;
      const Position at = s_.position();
      if (!keyword("constraint")) s_.fail("expected 'constraint' or '@prefix'");
      Constraint c;
      s_.skip_space();
      c.id = constraint_id();
      s_.skip_space();
      c.label = identifier("constraint label");
      s_.skip_space();
      c.phase = option<Phase>("phase", {{"source", Phase::Source}, {"target", Phase::Target}, {"cross", Phase::Cross}});
      s_.skip_space();
      c.kind = option<Kind>("kind", {{"SC", Kind::SC}, {"SR", Kind::SR}});
      s_.skip_space();
      c.tag = option<Tag>("tag", {{"WF", Tag::WF}, {"TR", Tag::TR}});
      s_.skip_space();
      if (!keyword("report")) s_.fail("expected report(...)");
      s_.skip_space();
      s_.expect("(", "'(' after report");
      s_.skip_space();
      if (s_.peek() != ')') {
        while (true) {
          s_.skip_space();
          c.report.push_back(variable());
          s_.skip_space();
          if (!s_.consume(",")) break;
        }
      }
      s_.expect(")", "')' closing report list");
      s_.skip_space();
      if (s_.peek() != '{') s_.fail("expected '{' starting constraint body");
      while (s_.peek() == '{') {
        s_.advance();
        c.clauses.push_back(atoms());
        s_.skip_space();
        s_.expect("}", "'}' closing constraint body");
        s_.skip_space();
      }
      if (!seen.insert(c.id).second) Scanner::fail_at(at, "duplicate constraint id " + c.id.str());
      check_constraint(c, at);
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  bool prefix_directive() {
    if (!s_.rest().starts_with("@prefix")) return false;
    s_.advance(7);
    s_.skip_space();
    detail::PrefixedName pn;
    if (!detail::read_pname(s_, pn) || !pn.local.empty()) s_.fail("expected prefix declaration 'name:'");
    s_.skip_space();
    const Position at = s_.position();
    std::string ns = s_.read_iriref();
    make_iri(ns, at);
    s_.skip_space();
    s_.expect(".", "'.' after @prefix declaration");
    prefixes_[pn.prefix] = ns;
    return true;
  }

  bool keyword(std::string_view kw) {
    const auto r = s_.rest();
    if (!r.starts_with(kw)) return false;
    if (r.size() > kw.size() && is_ident_char(r[kw.size()])) return false;
    s_.advance(kw.size());
    return true;
  }

  std::string identifier(std::string_view what) {
    if (!is_ident_char(s_.peek())) s_.fail("expected " + std::string(what));
    return s_.take_while(is_ident_char);
  }

  ConstraintId constraint_id() {
    ConstraintId id;
    std::string digits = s_.take_while([](char c) { return c >= '0' && c <= '9'; });
    if (digits.empty() || digits.size() > 6) s_.fail("expected numeric constraint id");
    id.number = std::stoi(digits);
    id.variant = s_.take_while([](char c) { return c >= 'a' && c <= 'z'; });
    if (is_ident_char(s_.peek())) s_.fail("malformed constraint id");
    return id;
  }

  template <typename E>
  E option(std::string_view name, std::initializer_list<std::pair<std::string_view, E>> values) {
    if (!keyword(name)) s_.fail("expected " + std::string(name) + "=...");
    s_.expect("=", "'=' after " + std::string(name));
    const Position at = s_.position();
    const std::string v = s_.take_while(is_ident_char);
    for (const auto& [text, e] : values) {
      if (v == text) return e;
    }
    Scanner::fail_at(at, "invalid " + std::string(name) + " '" + v + "'");
  }

  static Iri make_iri(const std::string& value, Position at) {
    try {
      return Iri(value);
    } catch (const TermError& e) {
      Scanner::fail_at(at, std::string("malformed IRI: ") + e.what());
    }
  }

  Var variable() {
    const Position at = s_.position();
    if (s_.peek() != '?') s_.fail("expected variable");
    s_.advance();
    std::string name = "?" + s_.take_while(is_ident_char);
    if (name.size() == 1) Scanner::fail_at(at, "empty variable name");
    return Var(std::move(name));
  }

  Iri iri_or_pname() {
    const Position at = s_.position();
    if (s_.peek() == '<') return make_iri(s_.read_iriref(), at);
    detail::PrefixedName pn;
    if (!detail::read_pname(s_, pn)) s_.fail("expected term");
    auto it = prefixes_.find(pn.prefix);
    if (it == prefixes_.end()) Scanner::fail_at(pn.at, "undefined prefix " + pn.prefix);
    return make_iri(it->second + pn.local, pn.at);
  }

  PatternTerm term() {
    s_.skip_space();
    const Position at = s_.position();
    const char c = s_.peek();
    if (c == '?') return variable();
    if (c == '"') {
      std::string lexical = s_.read_quoted();
      if (s_.consume("^^")) {
        Iri dt = iri_or_pname();
        try {
          return Term(Literal(std::move(lexical), std::move(dt)));
        } catch (const TermError& e) {
          Scanner::fail_at(at, e.what());
        }
      }
      return Term(Literal::string(std::move(lexical)));
    }
    if (c == 'a' && is_delim(s_.peek(1))) {
      s_.advance();
      return Term(Iri(std::string(vocab::kRdfType)));
    }
    return Term(iri_or_pname());
  }

  // The opening '(' has already been consumed.
  TriplePattern pattern_rest(Position at) {
    TriplePattern p{term(), PatternTerm(Var("?_")), PatternTerm(Var("?_"))};
    s_.skip_space();
    s_.expect(",", "',' in triple pattern");
    p.predicate = term();
    s_.skip_space();
    s_.expect(",", "',' in triple pattern");
    p.object = term();
    s_.skip_space();
    s_.expect(")", "')' closing triple pattern");
    for (const PatternTerm* pos : {&p.subject, &p.predicate}) {
      if (const auto* t = std::get_if<Term>(pos); t != nullptr && t->is_literal()) {
        Scanner::fail_at(at, "literal in subject or predicate position");
      }
    }
    return p;
  }

  TriplePattern pattern() {
    s_.skip_space();
    const Position at = s_.position();
    s_.expect("(", "'(' starting triple pattern");
    return pattern_rest(at);
  }

  Body atoms() {
    Body out;
    while (true) {
      out.push_back(atom());
      s_.skip_space();
      if (!s_.consume(",")) break;
    }
    return out;
  }

  bool starts_atom_keyword() {
    for (std::string_view kw : {"not", "count", "neq", "eq", "concat", "gen_id"}) {
      const auto r = s_.rest();
      if (!r.starts_with(kw)) continue;
      std::size_t i = kw.size();
      while (i < r.size() && (r[i] == ' ' || r[i] == '\t')) ++i;
      if (i < r.size() && r[i] == '(') return true;
    }
    return false;
  }

  BodyAtom atom() {
    s_.skip_space();
    if (s_.peek() == '(') return BodyAtom{pattern()};
    if (keyword("not")) {
      open();
      Body inner = atoms();
      close();
      return BodyAtom{Not{std::move(inner)}};
    }
    if (keyword("count")) return BodyAtom{count()};
    if (keyword("neq")) {
      open();
      Arg a = term();
      comma();
      Arg b = term();
      close();
      return BodyAtom{Neq{std::move(a), std::move(b)}};
    }
    if (keyword("eq")) {
      open();
      Arg a = term();
      comma();
      Arg b = term();
      close();
      return BodyAtom{Eq{std::move(a), std::move(b)}};
    }
    if (keyword("concat")) {
      open();
      Arg a = term();
      comma();
      Arg b = term();
      comma();
      s_.skip_space();
      Var out = variable();
      close();
      return BodyAtom{Concat{std::move(a), std::move(b), std::move(out)}};
    }
    if (keyword("gen_id")) {
      open();
      s_.skip_space();
      const Position list_at = s_.position();
      s_.expect("[", "'[' starting gen_id part list");
      GenId g{{}, Var("?_")};
      while (true) {
        g.parts.push_back(term());
        s_.skip_space();
        if (!s_.consume(",")) break;
      }
      s_.expect("]", "']' closing gen_id part list");
      if (const auto* t = std::get_if<Term>(&g.parts.front()); t != nullptr && !t->is_iri()) {
        Scanner::fail_at(list_at, "first gen_id part must be an IRI or a variable");
      }
      comma();
      s_.skip_space();
      g.out = variable();
      close();
      return BodyAtom{std::move(g)};
    }
    s_.fail("expected triple pattern, builtin, not(...) or count(...)");
  }

  Count count() {
    open();
    s_.skip_space();
    Count c{variable(), {}, CmpOp::Eq, 0, {}};
    s_.skip_space();
    if (!keyword("over")) s_.fail("expected 'over' in count");
    s_.skip_space();
    const Position at = s_.position();
    s_.expect("(", "'(' after over");
    s_.skip_space();
    if (s_.peek() == '(' || starts_atom_keyword()) {
      c.over = atoms();
      close();
    } else {
      c.over.push_back(BodyAtom{pattern_rest(at)});
    }
    s_.skip_space();
    if (keyword("groupBy")) {
      open();
      while (true) {
        s_.skip_space();
        c.group_by.push_back(variable());
        s_.skip_space();
        if (!s_.consume(",")) break;
      }
      close();
    }
    close();
    s_.skip_space();
    if (s_.consume("!=")) {
      c.cmp = CmpOp::Ne;
    } else if (s_.consume("<=")) {
      c.cmp = CmpOp::Le;
    } else if (s_.consume(">=")) {
      c.cmp = CmpOp::Ge;
    } else if (s_.consume("=")) {
      c.cmp = CmpOp::Eq;
    } else if (s_.consume("<")) {
      c.cmp = CmpOp::Lt;
    } else if (s_.consume(">")) {
      c.cmp = CmpOp::Gt;
    } else {
      s_.fail("expected comparison operator after count(...)");
    }
    s_.skip_space();
    const Position num_at = s_.position();
    std::string digits = s_.take_while([](char ch) { return ch >= '0' && ch <= '9'; });
    if (digits.empty()) s_.fail("expected integer bound");
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), c.bound);
    if (ec != std::errc{}) Scanner::fail_at(num_at, "integer bound out of range");
    return c;
  }

  void open() {
    s_.skip_space();
    s_.expect("(", "'('");
  }
  void close() {
    s_.skip_space();
    s_.expect(")", "')'");
  }
  void comma() {
    s_.skip_space();
    s_.expect(",", "','");
  }

  static void check_rule(const Rule& r, std::size_t n, Position at) {
    bool is_not = false;
    if (has_not_or_count(r.body, is_not)) {
      Scanner::fail_at(at, std::string(is_not ? "negation" : "aggregate") + " not allowed in transformation rule " +
                               std::to_string(n));
    }
    std::vector<std::string> bound;
    try {
      bound = bound_variables(r.body);
    } catch (const EvalError& e) {
      Scanner::fail_at(at, std::string(e.what()) + " in rule " + std::to_string(n));
    }
    std::vector<std::string> head;
    collect_vars(r.head.subject, head);
    collect_vars(r.head.predicate, head);
    collect_vars(r.head.object, head);
    for (const PatternTerm* pos : {&r.head.subject, &r.head.predicate, &r.head.object}) {
      if (const auto* v = std::get_if<Var>(pos); v != nullptr && v->anonymous()) {
        Scanner::fail_at(at, "unsafe head variable ?_ in rule " + std::to_string(n));
      }
    }
    for (const auto& v : head) {
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
        Scanner::fail_at(at, "unsafe head variable " + v + " in rule " + std::to_string(n));
      }
    }
  }

  static void check_constraint(const Constraint& c, Position at) {
    for (const auto& clause : c.clauses) {
      std::vector<std::string> bound;
      try {
        bound = bound_variables(clause);
      } catch (const EvalError& e) {
        Scanner::fail_at(at, std::string(e.what()) + " in constraint " + c.id.str());
      }
      for (const auto& v : c.report) {
        if (v.anonymous() || std::find(bound.begin(), bound.end(), v.name()) == bound.end()) {
          Scanner::fail_at(at, "report variable " + v.name() + " not bound in constraint " + c.id.str());
        }
      }
    }
  }

  Scanner s_;
  PrefixMap prefixes_;
};

}  // namespace

std::vector<Rule> parse_rules(std::string_view text, const PrefixMap& prefixes) {
  return Parser(text, prefixes).rules();
}

std::vector<Constraint> parse_constraints(std::string_view text, const PrefixMap& prefixes) {
  return Parser(text, prefixes).constraints();
}

// ---- printer ---------------------------------------------------------------

std::string print_term(const PatternTerm& t) { return to_string(t); }

namespace {

std::string print_args(const std::vector<Arg>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    out += print_term(args[i]);
  }
  return out;
}

std::string print_pattern(const TriplePattern& p) {
  return "(" + print_term(p.subject) + ", " + print_term(p.predicate) + ", " + print_term(p.object) + ")";
}

}  // namespace

std::string print_atom(const BodyAtom& atom) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TriplePattern>) {
          return print_pattern(n);
        } else if constexpr (std::is_same_v<T, Neq>) {
          return "neq(" + print_term(n.lhs) + ", " + print_term(n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, Eq>) {
          return "eq(" + print_term(n.lhs) + ", " + print_term(n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, Concat>) {
          return "concat(" + print_term(n.lhs) + ", " + print_term(n.rhs) + ", " + n.out.name() + ")";
        } else if constexpr (std::is_same_v<T, GenId>) {
          return "gen_id([" + print_args(n.parts) + "], " + n.out.name() + ")";
        } else if constexpr (std::is_same_v<T, Not>) {
          return "not(" + print_body(n.body) + ")";
        } else {
          std::string out = "count(" + n.var.name() + " over (" + print_body(n.over) + ")";
          if (!n.group_by.empty()) {
            out += " groupBy(";
            for (std::size_t i = 0; i < n.group_by.size(); ++i) {
              if (i > 0) out += ", ";
              out += n.group_by[i].name();
            }
            out += ")";
          }
          out += ") ";
          out += to_string(n.cmp);
          out += " " + std::to_string(n.bound);
          return out;
        }
      },
      atom.node);
}

std::string print_body(const Body& body) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i > 0) out += ", ";
    out += print_atom(body[i]);
  }
  return out;
}

std::string print_rule(const Rule& rule) { return print_pattern(rule.head) + " :- " + print_body(rule.body) + "."; }

std::string print_rules(const std::vector<Rule>& rules) {
  std::string out;
  for (const auto& r : rules) out += print_rule(r) + "\n";
  return out;
}

std::string print_constraint(const Constraint& c) {
  std::string out = "constraint " + c.id.str() + " " + c.label + " phase=" + std::string(to_string(c.phase)) +
                    " kind=" + std::string(to_string(c.kind)) + " tag=" + std::string(to_string(c.tag)) + " report(";
  for (std::size_t i = 0; i < c.report.size(); ++i) {
    if (i > 0) out += ", ";
    out += c.report[i].name();
  }
  out += ")";
  for (const auto& clause : c.clauses) out += "\n  { " + print_body(clause) + " }";
  return out;
}

std::string print_constraints(const std::vector<Constraint>& cs) {
  std::string out;
  for (const auto& c : cs) out += print_constraint(c) + "\n";
  return out;
}

}  // namespace odmx
