#include "odmx/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

#include "odmx/assets.hpp"
#include "odmx/engine.hpp"
#include "odmx/io.hpp"
#include "odmx/validate.hpp"

namespace odmx::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string assets;
  std::vector<std::string> prefixes;
  std::string format = "text";
  bool parallel = false;
};

fs::path asset_dir(const Common& c) { return c.assets.empty() ? default_asset_dir() : fs::path(c.assets); }

fs::path or_asset(const std::string& given, const Common& c, const char* name) {
  return given.empty() ? asset_dir(c) / name : fs::path(given);
}

std::vector<Rule> load_rules(const fs::path& p) {
  try {
    return parse_rules(read_text_file(p));
  } catch (const ParseError& e) {
    throw FileError(p.string() + ":" + e.what());
  }
}

std::vector<Constraint> load_constraints(const fs::path& p) {
  try {
    return parse_constraints(read_text_file(p));
  } catch (const ParseError& e) {
    throw FileError(p.string() + ":" + e.what());
  }
}

PrefixMap display_prefixes(const Common& c, const Graph* a, const Graph* b) {
  PrefixMap m = default_prefixes();
  for (const Graph* g : {a, b}) {
    if (g == nullptr) continue;
    for (const auto& [p, ns] : g->prefixes()) m[p] = ns;
  }
  for (const auto& spec : c.prefixes) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw CLI::ValidationError("--prefix", "expected p=iri, got '" + spec + "'");
    }
    m[spec.substr(0, eq)] = spec.substr(eq + 1);
  }
  return m;
}

void print_stats(const TransformStats& s, std::ostream& err) {
  err << "transform: rules_fired=" << s.rules_fired << " triples_produced=" << s.triples_produced
      << " duplicates_collapsed=" << s.duplicates_collapsed << " warnings=" << s.warnings.size() << "\n";
  for (const auto& w : s.warnings) err << "warning: " << w << "\n";
}

Graph transform(const Graph& source, const fs::path& rules_path, const Common& c, std::ostream& err) {
  auto rules = load_rules(rules_path);
  auto result = apply_rules(source, rules, TransformOptions{c.parallel});
  print_stats(result.stats, err);
  return std::move(result.target);
}

void add_tbox(Graph& target, const Common& c) {
  const Graph tbox = load_document(asset_dir(c) / asset_files::kTargetVocab).graph;
  for (const auto& t : tbox) target.insert(t);
}

// Renders the reports of one or more phases and returns the violation total.
std::size_t emit_reports(const std::vector<ValidationReport>& reports, const std::vector<Constraint>& catalog,
                         const PrefixMap& prefixes, const Common& c, std::ostream& out) {
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (const auto& r : reports) {
    out << (c.format == "lines" ? format_lines(r) : format_text(r, catalog, prefixes));
    checked += r.checked.size();
    violations += r.violations.size();
  }
  if (reports.size() > 1) {
    if (c.format == "lines") {
      out << "TOTAL checked=" << checked << " violations=" << violations << "\n";
    } else {
      out << "total: checked=" << checked << " violations=" << violations << "\n";
    }
  }
  return violations;
}

void add_common(CLI::App* sub, Common& c, bool reports) {
  sub->add_option("--assets", c.assets, "Asset directory (default: $ODMX_ASSET_DIR or the installed assets)");
  sub->add_flag("--parallel", c.parallel, "Evaluate rules and constraints concurrently");
  if (reports) {
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "lines"}));
    sub->add_option("--prefix", c.prefixes, "Extra display prefix p=iri (repeatable)");
  }
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rule-based model transformation and validation over triple graphs", "odmx"};
  app.require_subcommand(1);
  Common common;

  std::string source;
  std::string rules;
  std::string output;
  std::string constraints;
  std::string target;
  std::string phase = "all";
  bool with_tbox = false;
  bool force = false;

  auto* tr = app.add_subcommand("transform", "Apply transformation rules to a source model");
  tr->add_option("source", source, "Source model (.nt or .ttl)")->required();
  tr->add_option("--rules", rules, "Rule file (default: shipped er2rm.mtr)");
  tr->add_option("-o,--output", output, "Output N-Triples file (default: standard output)");
  tr->add_flag("--with-tbox", with_tbox, "Append the target vocabulary to the output");
  add_common(tr, common, false);

  auto* va = app.add_subcommand("validate", "Check a model against the constraint catalog");
  va->add_option("model", source, "Model to check (the source model unless --phase target)")->required();
  va->add_option("--constraints", constraints, "Constraint file (default: shipped requirements.mtc)");
  va->add_option("--phase", phase, "Phase to check")->check(CLI::IsMember({"source", "target", "cross", "all"}));
  va->add_option("--target", target, "Target model (required for cross and all)");
  add_common(va, common, true);

  auto* pi = app.add_subcommand("pipeline", "Validate source, transform, validate target and cross");
  pi->add_option("source", source, "Source model (.nt or .ttl)")->required();
  pi->add_option("--rules", rules, "Rule file (default: shipped er2rm.mtr)");
  pi->add_option("--constraints", constraints, "Constraint file (default: shipped requirements.mtc)");
  pi->add_option("-o,--output", output, "Output N-Triples file")->required();
  pi->add_flag("--with-tbox", with_tbox, "Append the target vocabulary to the output");
  pi->add_flag("--force", force, "Transform even when the source model has violations");
  add_common(pi, common, true);

  auto* li = app.add_subcommand("lint-assets", "Check the shipped assets for consistency");
  add_common(li, common, false);

  try {
    std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (tr->parsed()) {
      Graph result = transform(load_document(source).graph, or_asset(rules, common, asset_files::kRules), common, err);
      if (with_tbox) add_tbox(result, common);
      const std::string text = serialize_ntriples(result);
      if (output.empty()) {
        out << text;
      } else {
        write_text_file(output, text);
      }
      return kOk;
    }

    if (va->parsed()) {
      const auto catalog = load_constraints(or_asset(constraints, common, asset_files::kConstraints));
      if ((phase == "cross" || phase == "all") && target.empty()) {
        err << "error: --phase " << phase << " requires --target\n";
        return kError;
      }
      const Graph model = load_document(source).graph;
      std::optional<Graph> target_graph;
      if (!target.empty()) target_graph = load_document(target).graph;

      ModelGraphs graphs;
      if (phase == "target") {
        graphs.target = target_graph ? &*target_graph : &model;
      } else {
        graphs.source = &model;
        if (target_graph) graphs.target = &*target_graph;
      }
      std::vector<Phase> phases;
      if (phase == "source" || phase == "all") phases.push_back(Phase::Source);
      if (phase == "target" || phase == "all") phases.push_back(Phase::Target);
      if (phase == "cross" || phase == "all") phases.push_back(Phase::Cross);

      std::vector<ValidationReport> reports;
      for (Phase p : phases) reports.push_back(check_catalog(graphs, catalog, p, CheckOptions{common.parallel}));
      const auto prefixes = display_prefixes(common, graphs.source, graphs.target);
      return emit_reports(reports, catalog, prefixes, common, out) == 0 ? kOk : kViolations;
    }

    if (pi->parsed()) {
      const auto catalog = load_constraints(or_asset(constraints, common, asset_files::kConstraints));
      const fs::path rules_path = or_asset(rules, common, asset_files::kRules);
      const Graph src = load_document(source).graph;
      const CheckOptions opts{common.parallel};

      std::vector<ValidationReport> reports;
      reports.push_back(check_catalog(ModelGraphs{&src, nullptr}, catalog, Phase::Source, opts));
      if (!reports.front().valid() && !force) {
        emit_reports(reports, catalog, display_prefixes(common, &src, nullptr), common, out);
        err << "pipeline: source model has " << reports.front().violations.size()
            << " violation(s); not transforming (use --force to override)\n";
        return kViolations;
      }

      Graph tgt = transform(src, rules_path, common, err);
      const ModelGraphs graphs{&src, &tgt};
      reports.push_back(check_catalog(graphs, catalog, Phase::Target, opts));
      reports.push_back(check_catalog(graphs, catalog, Phase::Cross, opts));

      Graph written = tgt;
      if (with_tbox) add_tbox(written, common);
      write_text_file(output, serialize_ntriples(written));
      return emit_reports(reports, catalog, display_prefixes(common, &src, &tgt), common, out) == 0 ? kOk
                                                                                                   : kViolations;
    }

    if (li->parsed()) {
      const AssetBundle bundle = load_case_study(asset_dir(common));
      const auto findings = lint_assets(bundle);
      for (const auto& f : findings) out << f.asset << ": " << f.message << "\n";
      out << "lint: " << findings.size() << " finding(s)\n";
      return findings.empty() ? kOk : kViolations;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace odmx::cli
