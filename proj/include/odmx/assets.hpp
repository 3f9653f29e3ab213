#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "odmx/graph.hpp"
#include "odmx/rule_lang.hpp"

namespace odmx {

struct PropertyDecl {
  Iri iri;
  std::optional<Iri> domain;
  std::optional<Iri> range;  // a class or an xsd datatype
};

// Meta-model vocabulary read from a TBox graph: owl:Class subjects are
// classes, owl:ObjectProperty / owl:DatatypeProperty subjects are properties.
class Vocabulary {
 public:
  Vocabulary() = default;
  static Vocabulary from_graph(const Graph& tbox);

  [[nodiscard]] const std::string& ns() const noexcept { return ns_; }
  [[nodiscard]] const std::set<Iri>& classes() const noexcept { return classes_; }
  [[nodiscard]] const std::map<Iri, PropertyDecl>& properties() const noexcept { return properties_; }

  [[nodiscard]] bool has_class(const Iri& iri) const { return classes_.contains(iri); }
  [[nodiscard]] bool has_property(const Iri& iri) const { return properties_.contains(iri); }
  [[nodiscard]] const PropertyDecl* property(const Iri& iri) const;

  // Union of both vocabularies; the namespace of *this is kept.
  [[nodiscard]] Vocabulary merged(const Vocabulary& other) const;

 private:
  std::string ns_;
  std::set<Iri> classes_;
  std::map<Iri, PropertyDecl> properties_;
};

struct AssetBundle {
  Graph source_tbox;
  Graph target_tbox;
  Vocabulary source_vocab;
  Vocabulary target_vocab;
  Graph source;
  std::vector<Rule> rules;
  std::vector<Constraint> constraints;
};

// A packaged file is missing or fails its own parser.
class AssetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace asset_files {
inline constexpr const char* kSourceVocab = "source_mm.nt";
inline constexpr const char* kTargetVocab = "target_mm.nt";
inline constexpr const char* kSource = "case_study.nt";
inline constexpr const char* kRules = "er2rm.mtr";
inline constexpr const char* kConstraints = "requirements.mtc";
}  // namespace asset_files

// $ODMX_ASSET_DIR if set, otherwise the directory configured at build time.
std::filesystem::path default_asset_dir();

AssetBundle load_case_study(const std::filesystem::path& dir = default_asset_dir());

struct LintFinding {
  std::string asset;
  std::string message;

  friend bool operator==(const LintFinding&, const LintFinding&) = default;
};

// Vocabulary closure of the source model, rules and constraints, domain
// typing of the source model, rule safety, and completeness of the 1-33
// catalog with its phase ranges (1-16 source, 17-29 target, 30-33 cross).
// Returns an empty list for a consistent bundle.
std::vector<LintFinding> lint_assets(const AssetBundle& bundle);

}  // namespace odmx
