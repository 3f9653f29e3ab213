#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "odmx/assets.hpp"
#include "odmx/engine.hpp"
#include "odmx/graph.hpp"

namespace odmx::fixtures {

inline constexpr const char* kA = "http://metamodelA.ecore#";
inline constexpr const char* kB = "http://metamodelB.ecore#";

inline Iri a(const std::string& local) { return Iri(kA + local); }
inline Iri b(const std::string& local) { return Iri(kB + local); }

const AssetBundle& bundle();
const Graph& case_target();

// A scripted defect. Source mutations edit the source model; target
// mutations edit the transformed case study.
struct Mutation {
  std::string name;
  std::string item;  // requirement id the defect must trigger
  bool on_target = false;
  std::function<void(Graph&)> apply;
  std::set<std::string> expected_ids;  // every id violated, including downstream target checks
};

const std::vector<Mutation>& mutations();

// Models after applying a mutation (source mutations re-run the transform).
struct Models {
  Graph source;
  Graph target;
};
Models mutated(const Mutation& m);

// Replaces the single object of (s, p, ?) with o.
void set_object(Graph& g, const Iri& s, const Iri& p, const Term& o);

std::string temp_path(const std::string& name);

}  // namespace odmx::fixtures
