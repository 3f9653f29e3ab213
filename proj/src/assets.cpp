#include "odmx/assets.hpp"

#include <algorithm>
#include <cstdlib>

#include "odmx/io.hpp"

#ifndef ODMX_ASSET_DIR_DEFAULT
#define ODMX_ASSET_DIR_DEFAULT "assets"
#endif

namespace odmx {

namespace {

const Iri& rdf_type() {
  static const Iri iri{std::string(vocab::kRdfType)};
  return iri;
}

Iri owl(std::string_view local) { return Iri(std::string(vocab::kOwl) + std::string(local)); }
Iri rdfs(std::string_view local) { return Iri(std::string(vocab::kRdfs) + std::string(local)); }

bool builtin_namespace(const Iri& iri) {
  for (std::string_view ns : {vocab::kRdf, vocab::kRdfs, vocab::kOwl, vocab::kXsd}) {
    if (iri.str().starts_with(ns)) return true;
  }
  return false;
}

std::vector<Iri> subjects_of_type(const Graph& g, const Iri& cls) {
  std::vector<Iri> out;
  for (const auto& t : g.triples()) {
    if (t.predicate == rdf_type() && t.object == Term(cls)) out.push_back(t.subject);
  }
  return out;
}

std::optional<Iri> single_object(const Graph& g, const Iri& s, const Iri& p) {
  for (const auto& t : g.triples()) {
    if (t.subject == s && t.predicate == p && t.object.is_iri()) return t.object.iri();
  }
  return std::nullopt;
}

}  // namespace

Vocabulary Vocabulary::from_graph(const Graph& tbox) {
  Vocabulary v;
  if (auto onto = subjects_of_type(tbox, owl("Ontology")); !onto.empty()) v.ns_ = onto.front().str() + "#";
  for (const auto& c : subjects_of_type(tbox, owl("Class"))) v.classes_.insert(c);
  for (const char* kind : {"ObjectProperty", "DatatypeProperty"}) {
    for (const auto& p : subjects_of_type(tbox, owl(kind))) {
      v.properties_.insert_or_assign(
          p, PropertyDecl{p, single_object(tbox, p, rdfs("domain")), single_object(tbox, p, rdfs("range"))});
    }
  }
  return v;
}

const PropertyDecl* Vocabulary::property(const Iri& iri) const {
  auto it = properties_.find(iri);
  return it == properties_.end() ? nullptr : &it->second;
}

Vocabulary Vocabulary::merged(const Vocabulary& other) const {
  Vocabulary v = *this;
  v.classes_.insert(other.classes_.begin(), other.classes_.end());
  for (const auto& [iri, decl] : other.properties_) v.properties_.insert({iri, decl});
  return v;
}

std::filesystem::path default_asset_dir() {
  if (const char* env = std::getenv("ODMX_ASSET_DIR"); env != nullptr && *env != '\0') return env;
  return ODMX_ASSET_DIR_DEFAULT;
}

AssetBundle load_case_study(const std::filesystem::path& dir) {
  auto read = [&dir](const char* name) {
    try {
      return read_text_file(dir / name);
    } catch (const FileError& e) {
      throw AssetError(std::string("asset missing: ") + e.what());
    }
  };
  auto guarded = [&dir](const char* name, auto&& parse) {
    try {
      return parse();
    } catch (const ParseError& e) {
      throw AssetError("asset " + (dir / name).string() + " is corrupt: " + e.what());
    } catch (const TermError& e) {
      throw AssetError("asset " + (dir / name).string() + " is corrupt: " + e.what());
    }
  };

  AssetBundle b;
  const std::string src_mm = read(asset_files::kSourceVocab);
  const std::string tgt_mm = read(asset_files::kTargetVocab);
  const std::string src = read(asset_files::kSource);
  const std::string rules = read(asset_files::kRules);
  const std::string cons = read(asset_files::kConstraints);

  b.source_tbox = guarded(asset_files::kSourceVocab, [&] { return parse_ntriples(src_mm); });
  b.target_tbox = guarded(asset_files::kTargetVocab, [&] { return parse_ntriples(tgt_mm); });
  b.source = guarded(asset_files::kSource, [&] { return parse_ntriples(src); });
  b.rules = guarded(asset_files::kRules, [&] { return parse_rules(rules); });
  b.constraints = guarded(asset_files::kConstraints, [&] { return parse_constraints(cons); });
  b.source_vocab = Vocabulary::from_graph(b.source_tbox);
  b.target_vocab = Vocabulary::from_graph(b.target_tbox);
  return b;
}

// ---- lint ------------------------------------------------------------------

namespace {

class Linter {
 public:
  explicit Linter(const AssetBundle& b) : b_(b), both_(b.source_vocab.merged(b.target_vocab)) {}

  std::vector<LintFinding> run() {
    source_model();
    rules();
    constraints();
    return std::move(out_);
  }

 private:
  void add(const char* asset, std::string message) { out_.push_back({asset, std::move(message)}); }

  void source_model() {
    const auto* asset = asset_files::kSource;
    const Vocabulary& v = b_.source_vocab;
    for (const auto& t : b_.source.triples()) {
      if (t.predicate == rdf_type()) {
        if (t.object.is_iri() && !v.has_class(t.object.iri()) && !builtin_namespace(t.object.iri())) {
          add(asset, "class " + t.object.nt() + " is not declared in the source vocabulary");
        }
        continue;
      }
      const PropertyDecl* decl = v.property(t.predicate);
      if (decl == nullptr) {
        if (!builtin_namespace(t.predicate)) {
          add(asset, "predicate " + t.predicate.nt() + " is not declared in the source vocabulary");
        }
        continue;
      }
      if (decl->domain && !b_.source.contains(Triple{t.subject, rdf_type(), Term(*decl->domain)})) {
        add(asset, t.subject.nt() + " uses " + t.predicate.nt() + " but is not typed " + decl->domain->nt());
      }
      if (!decl->range) continue;
      if (decl->range->str().starts_with(vocab::kXsd)) {
        if (t.object.is_iri() || t.object.literal().datatype() != *decl->range) {
          add(asset, "object of " + to_ntriples(t) + " does not have datatype " + decl->range->nt());
        }
      } else if (!t.object.is_iri() ||
                 !b_.source.contains(Triple{t.object.iri(), rdf_type(), Term(*decl->range)})) {
        add(asset, "object of " + to_ntriples(t) + " is not typed " + decl->range->nt());
      }
    }
  }

  void closure(const char* asset, const std::string& where, const Body& body, const Vocabulary& v,
               std::string_view vocab_name) {
    std::vector<Iri> preds;
    std::vector<Iri> classes;
    collect_vocabulary(body, preds, classes);
    for (const auto& p : preds) {
      if (!builtin_namespace(p) && !v.has_property(p)) {
        add(asset, where + ": predicate " + p.nt() + " is not declared in the " + std::string(vocab_name) +
                       " vocabulary");
      }
    }
    for (const auto& c : classes) {
      if (!builtin_namespace(c) && !v.has_class(c)) {
        add(asset, where + ": class " + c.nt() + " is not declared in the " + std::string(vocab_name) +
                       " vocabulary");
      }
    }
  }

  void rules() {
    const auto* asset = asset_files::kRules;
    for (std::size_t i = 0; i < b_.rules.size(); ++i) {
      const Rule& r = b_.rules[i];
      const std::string where = "rule " + std::to_string(i + 1);
      closure(asset, where, r.body, b_.source_vocab, "source");
      closure(asset, where + " head", Body{BodyAtom{r.head}}, b_.target_vocab, "target");

      for (const auto& a : r.body) {
        if (std::holds_alternative<Not>(a.node)) add(asset, where + ": negation in a transformation rule");
        if (std::holds_alternative<Count>(a.node)) add(asset, where + ": aggregate in a transformation rule");
      }
      std::vector<std::string> bound;
      try {
        bound = bound_variables(r.body);
      } catch (const EvalError& e) {
        add(asset, where + ": " + e.what());
        continue;
      }
      for (const PatternTerm* pos : {&r.head.subject, &r.head.predicate, &r.head.object}) {
        const auto* var = std::get_if<Var>(pos);
        if (var != nullptr && std::find(bound.begin(), bound.end(), var->name()) == bound.end()) {
          add(asset, where + ": unsafe head variable " + var->name());
        }
      }
    }
  }

  void constraints() {
    const auto* asset = asset_files::kConstraints;
    std::map<int, std::size_t> seen;
    for (const auto& c : b_.constraints) {
      const std::string where = "constraint " + c.id.str();
      const Vocabulary& v = c.phase == Phase::Source   ? b_.source_vocab
                            : c.phase == Phase::Target ? b_.target_vocab
                                                       : both_;
      const char* vname = c.phase == Phase::Source ? "source" : c.phase == Phase::Target ? "target" : "combined";
      for (const auto& clause : c.clauses) closure(asset, where, clause, v, vname);
      if (!c.id.variant.empty()) continue;
      if (++seen[c.id.number] == 2) add(asset, "duplicate constraint id " + c.id.str());
      if (c.id.number < 1 || c.id.number > 33) {
        add(asset, "constraint id " + c.id.str() + " is outside the range 1-33");
        continue;
      }
      const Phase expected = c.id.number <= 16 ? Phase::Source : c.id.number <= 29 ? Phase::Target : Phase::Cross;
      if (c.phase != expected) {
        add(asset, where + " has phase " + std::string(to_string(c.phase)) + ", expected " +
                       std::string(to_string(expected)));
      }
    }
    for (int id = 1; id <= 33; ++id) {
      if (!seen.contains(id)) add(asset, "missing constraint id " + std::to_string(id));
    }
  }

  const AssetBundle& b_;
  Vocabulary both_;
  std::vector<LintFinding> out_;
};

}  // namespace

std::vector<LintFinding> lint_assets(const AssetBundle& bundle) { return Linter(bundle).run(); }

}  // namespace odmx
