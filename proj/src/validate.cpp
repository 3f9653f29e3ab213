#include "odmx/validate.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "odmx/engine.hpp"

namespace odmx {

namespace {

Dataset dataset_for(const ModelGraphs& graphs, const Constraint& c) {
  auto need = [&c](const Graph* g, std::string_view which) {
    if (g == nullptr) {
      throw ValidationError(std::string(which) + " graph required for constraint id " + c.id.str());
    }
    return g;
  };
  switch (c.phase) {
    case Phase::Source: return Dataset(*need(graphs.source, "source"));
    case Phase::Target: return Dataset(*need(graphs.target, "target"));
    case Phase::Cross: {
      const Graph* t = need(graphs.target, "target");
      const Graph* s = need(graphs.source, "source");
      return Dataset{s, t};
    }
  }
  return {};
}

}  // namespace

std::vector<Violation> check(const ModelGraphs& graphs, const Constraint& c) {
  const Dataset data = dataset_for(graphs, c);
  std::set<Binding> witnesses;
  for (const auto& clause : c.clauses) {
    for (const auto& b : evaluate_body(data, clause)) witnesses.insert(b.restricted(c.report));
  }
  std::vector<Violation> out;
  out.reserve(witnesses.size());
  for (const auto& w : witnesses) out.push_back(Violation{c.id, c.label, w});
  return out;
}

ValidationReport check_catalog(const ModelGraphs& graphs, const std::vector<Constraint>& catalog, Phase phase,
                               CheckOptions options) {
  std::vector<const Constraint*> selected;
  for (const auto& c : catalog) {
    if (c.phase == phase) selected.push_back(&c);
  }
  std::sort(selected.begin(), selected.end(), [](const Constraint* a, const Constraint* b) { return a->id < b->id; });

  std::vector<std::vector<Violation>> results;
  results.reserve(selected.size());
  if (options.parallel && selected.size() > 1) {
    std::vector<std::future<std::vector<Violation>>> jobs;
    for (const Constraint* c : selected) {
      jobs.push_back(std::async(std::launch::async, [&graphs, c] { return check(graphs, *c); }));
    }
    for (auto& j : jobs) results.push_back(j.get());
  } else {
    for (const Constraint* c : selected) results.push_back(check(graphs, *c));
  }

  ValidationReport report;
  report.phase = phase;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const Constraint& c = *selected[i];
    report.checked.push_back(c.id);
    report.counts[std::string(to_string(c.kind))] += results[i].size();
    report.counts[std::string(to_string(c.tag))] += results[i].size();
    for (auto& v : results[i]) report.violations.push_back(std::move(v));
  }
  return report;
}

std::string short_form(const Iri& iri, const PrefixMap& prefixes) {
  std::string best;
  std::size_t best_len = 0;
  for (const auto& [prefix, ns] : prefixes) {
    if (ns.size() > best_len && iri.str().size() > ns.size() && iri.str().starts_with(ns)) {
      best = prefix + ":" + iri.str().substr(ns.size());
      best_len = ns.size();
    }
  }
  return best;
}

std::string format_lines(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report.violations) {
    out += "VIOLATION " + v.id.str() + " " + v.label;
    for (const auto& [var, term] : v.witness) out += " " + var + "=" + term.nt();
    out += "\n";
  }
  out += "SUMMARY phase=" + std::string(to_string(report.phase)) + " checked=" + std::to_string(report.checked.size()) +
         " violations=" + std::to_string(report.violations.size()) + "\n";
  return out;
}

namespace {

std::string display(const Term& t, const PrefixMap& prefixes) {
  if (const Iri* iri = t.as_iri()) {
    const std::string s = short_form(*iri, prefixes);
    return s.empty() ? iri->nt() : s + " " + iri->nt();
  }
  const Literal& lit = t.literal();
  const std::string dt = short_form(lit.datatype(), prefixes);
  return "\"" + escape_literal(lit.lexical()) + "\"^^" + (dt.empty() ? lit.datatype().nt() : dt);
}

}  // namespace

std::string format_text(const ValidationReport& report, const std::vector<Constraint>& catalog,
                        const PrefixMap& prefixes) {
  std::map<ConstraintId, const Constraint*> by_id;
  for (const auto& c : catalog) by_id[c.id] = &c;

  std::string out = "== " + std::string(to_string(report.phase)) + " model: " + std::to_string(report.checked.size()) +
                    " requirements checked\n";
  for (const auto& v : report.violations) {
    out += "  (" + v.id.str() + ") " + v.label;
    if (auto it = by_id.find(v.id); it != by_id.end()) {
      out += " [" + std::string(to_string(it->second->kind)) + "/" + std::string(to_string(it->second->tag)) + "]";
    }
    out += " violated:\n";
    for (const auto& [var, term] : v.witness) out += "      " + var + " = " + display(term, prefixes) + "\n";
  }
  out += "phase=" + std::string(to_string(report.phase)) + " checked=" + std::to_string(report.checked.size()) +
         " violations=" + std::to_string(report.violations.size());
  out += " (SC=" + std::to_string(report.counts.at("SC")) + " SR=" + std::to_string(report.counts.at("SR")) +
         " WF=" + std::to_string(report.counts.at("WF")) + " TR=" + std::to_string(report.counts.at("TR")) + ")\n";
  return out;
}

}  // namespace odmx
