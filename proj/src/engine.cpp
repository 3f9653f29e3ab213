#include "odmx/engine.hpp"

#include <algorithm>
#include <future>
#include <optional>

namespace odmx {

Iri gen_id(std::span<const Term> parts) {
  if (parts.empty()) throw EvalError("gen_id needs at least one part");
  const Iri* first = parts.front().as_iri();
  if (first == nullptr) throw EvalError("first gen_id part must be an IRI, got " + parts.front().nt());
  std::string out = first->str();
  for (const auto& p : parts.subspan(1)) {
    if (const Iri* iri = p.as_iri()) {
      out += iri->local_name();
    } else {
      out += p.literal().lexical();
    }
  }
  return Iri(std::move(out));
}

namespace {

[[noreturn]] void unbound_arg(const Arg& a, std::size_t k) {
  throw EvalError("unbound builtin argument " + to_string(a) + " at atom " + std::to_string(k));
}

Term need(const Arg& a, const Binding& b, std::size_t k) {
  auto t = resolve(a, b);
  if (!t) unbound_arg(a, k);
  return *t;
}

void dedupe(std::vector<Binding>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

class Evaluator {
 public:
  Evaluator(const Dataset& data, GenIdObserver* observer) : data_(data), observer_(observer) {}

  std::vector<Binding> run(const Body& body, const Binding& seed) {
    std::vector<Binding> current{seed};
    for (std::size_t i = 0; i < body.size() && !current.empty(); ++i) {
      std::vector<Binding> next;
      for (const auto& b : current) step(body[i], i + 1, b, next);
      dedupe(next);
      current = std::move(next);
    }
    return current;
  }

  bool count(const Count& c, const Binding& b) {
    for (const auto& g : c.group_by) {
      if (!b.has(g.name())) throw EvalError("unbound groupBy variable " + g.name());
    }
    std::set<Term> values;
    for (const auto& sol : run(c.over, b)) {
      if (const Term* t = sol.get(c.var.name())) values.insert(*t);
    }
    return compare(static_cast<std::int64_t>(values.size()), c.cmp, c.bound);
  }

 private:
  void step(const BodyAtom& atom, std::size_t k, const Binding& b, std::vector<Binding>& out) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TriplePattern>) {
            auto found = data_.match(n, b);
            out.insert(out.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
          } else if constexpr (std::is_same_v<T, Neq>) {
            if (need(n.lhs, b, k) != need(n.rhs, b, k)) out.push_back(b);
          } else if constexpr (std::is_same_v<T, Eq>) {
            if (need(n.lhs, b, k) == need(n.rhs, b, k)) out.push_back(b);
          } else if constexpr (std::is_same_v<T, Concat>) {
            concat(n, k, b, out);
          } else if constexpr (std::is_same_v<T, GenId>) {
            std::vector<Term> parts;
            parts.reserve(n.parts.size());
            for (const auto& p : n.parts) parts.push_back(need(p, b, k));
            Iri id = gen_id(parts);
            if (observer_ != nullptr) observer_->on_gen_id(parts, id);
            unify_out(n.out, Term(std::move(id)), b, out);
          } else if constexpr (std::is_same_v<T, Not>) {
            if (run(n.body, b).empty()) out.push_back(b);
          } else {
            if (count(n, b)) out.push_back(b);
          }
        },
        atom.node);
  }

  static void unify_out(const Var& v, const Term& value, const Binding& b, std::vector<Binding>& out) {
    if (const Term* cur = b.get(v.name())) {
      if (*cur == value) out.push_back(b);
    } else {
      out.push_back(b.extended(v.name(), value));
    }
  }

  static void bind_arg(const Arg& a, const Term& value, Binding& b) {
    if (const auto* v = std::get_if<Var>(&a); v != nullptr && !v->anonymous()) b = b.extended(v->name(), value);
  }

  static void concat(const Concat& n, std::size_t k, const Binding& b, std::vector<Binding>& out) {
    const auto lhs = resolve(n.lhs, b);
    const auto rhs = resolve(n.rhs, b);
    if (lhs && rhs) {
      unify_out(n.out, Term(Literal::string(lhs->text() + rhs->text())), b, out);
      return;
    }
    const Term* whole = b.get(n.out.name());
    if (whole == nullptr || (!lhs && !rhs)) unbound_arg(lhs ? n.rhs : n.lhs, k);
    const std::string& w = whole->text();
    Binding ext = b;
    if (lhs) {
      if (!w.starts_with(lhs->text())) return;
      bind_arg(n.rhs, Term(Literal::string(w.substr(lhs->text().size()))), ext);
    } else {
      if (!w.ends_with(rhs->text())) return;
      bind_arg(n.lhs, Term(Literal::string(w.substr(0, w.size() - rhs->text().size()))), ext);
    }
    out.push_back(std::move(ext));
  }

  const Dataset& data_;
  GenIdObserver* observer_;
};

// Records, per generated identifier, the distinct part lists that produced it.
class CollisionTracker : public GenIdObserver {
 public:
  void on_gen_id(std::span<const Term> parts, const Iri& result) override {
    sources_[result].insert(std::vector<Term>(parts.begin(), parts.end()));
  }

  void merge(const CollisionTracker& other) {
    for (const auto& [id, lists] : other.sources_) sources_[id].insert(lists.begin(), lists.end());
  }

  [[nodiscard]] std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    for (const auto& [id, lists] : sources_) {
      if (lists.size() < 2) continue;
      std::string msg = "gen_id collision: " + id.nt() + " generated from";
      for (const auto& parts : lists) {
        msg += " [";
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i > 0) msg += ", ";
          msg += parts[i].nt();
        }
        msg += "]";
      }
      out.push_back(std::move(msg));
    }
    return out;
  }

 private:
  std::map<Iri, std::set<std::vector<Term>>> sources_;
};

struct RuleOutput {
  std::vector<Triple> triples;
  CollisionTracker collisions;
};

Iri head_iri(const PatternTerm& pt, const Binding& b, std::size_t rule_no, std::string_view role) {
  auto t = resolve(pt, b);
  if (!t) throw EvalError("unbound head variable " + to_string(pt) + " in rule " + std::to_string(rule_no));
  if (!t->is_iri()) {
    throw EvalError("rule " + std::to_string(rule_no) + " produced a literal in " + std::string(role) + " position");
  }
  return t->iri();
}

RuleOutput fire(const Graph& source, const Rule& rule, std::size_t rule_no) {
  RuleOutput out;
  const Dataset data(source);
  for (const auto& b : evaluate_body(data, rule.body, {}, &out.collisions)) {
    auto obj = resolve(rule.head.object, b);
    if (!obj) {
      throw EvalError("unbound head variable " + to_string(rule.head.object) + " in rule " + std::to_string(rule_no));
    }
    out.triples.push_back(Triple{head_iri(rule.head.subject, b, rule_no, "subject"),
                                 head_iri(rule.head.predicate, b, rule_no, "predicate"), std::move(*obj)});
  }
  return out;
}

}  // namespace

std::vector<Binding> evaluate_body(const Dataset& data, const Body& body, const Binding& seed,
                                   GenIdObserver* observer) {
  return Evaluator(data, observer).run(body, seed);
}

bool count_eval(const Dataset& data, const Count& count, const Binding& binding) {
  return Evaluator(data, nullptr).count(count, binding);
}

TransformResult apply_rules(const Graph& source, const std::vector<Rule>& rules, TransformOptions options) {
  std::vector<RuleOutput> outputs;
  outputs.reserve(rules.size());
  if (options.parallel && rules.size() > 1) {
    std::vector<std::future<RuleOutput>> jobs;
    jobs.reserve(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
      jobs.push_back(std::async(std::launch::async, [&source, &rules, i] { return fire(source, rules[i], i + 1); }));
    }
    for (auto& j : jobs) outputs.push_back(j.get());
  } else {
    for (std::size_t i = 0; i < rules.size(); ++i) outputs.push_back(fire(source, rules[i], i + 1));
  }

  TransformResult result;
  CollisionTracker collisions;
  for (auto& o : outputs) {
    if (!o.triples.empty()) ++result.stats.rules_fired;
    result.stats.triples_produced += o.triples.size();
    for (auto& t : o.triples) result.target.insert(t);
    collisions.merge(o.collisions);
  }
  result.stats.duplicates_collapsed = result.stats.triples_produced - result.target.size();
  result.stats.warnings = collisions.warnings();
  return result;
}

}  // namespace odmx
