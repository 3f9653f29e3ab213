#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "odmx/pattern.hpp"
#include "odmx/term.hpp"

namespace odmx {

using PrefixMap = std::map<std::string, std::string>;

// Which lookup index answers a match. Auto picks the smallest bucket among
// the bound positions; the others force one index (used by consistency tests).
enum class IndexChoice { Auto, Subject, Predicate, Object };

// In-memory triple set with subject, predicate and object indexes.
// Iteration order is the canonical N-Triples line order.
class Graph {
 public:
  Graph() = default;
  Graph(std::initializer_list<Triple> triples);
  Graph(const Graph& other);
  Graph(Graph&& other) noexcept;
  Graph& operator=(const Graph& other);
  Graph& operator=(Graph&& other) noexcept;
  ~Graph() = default;

  // Returns true iff t was not already present.
  bool insert(const Triple& t);
  // Returns true iff t was present.
  bool erase(const Triple& t);
  // Drops all triples; prefixes are kept.
  void reset();

  [[nodiscard]] bool contains(const Triple& t) const { return triples_.contains(t); }
  [[nodiscard]] std::size_t size() const noexcept { return triples_.size(); }
  [[nodiscard]] bool empty() const noexcept { return triples_.empty(); }
  [[nodiscard]] const std::set<Triple>& triples() const noexcept { return triples_; }
  [[nodiscard]] auto begin() const noexcept { return triples_.begin(); }
  [[nodiscard]] auto end() const noexcept { return triples_.end(); }

  [[nodiscard]] const PrefixMap& prefixes() const noexcept { return prefixes_; }
  void set_prefix(std::string prefix, std::string ns) { prefixes_[std::move(prefix)] = std::move(ns); }

  // Matching triples in canonical order, after substituting variables bound
  // in seed. Repeated variables within the pattern must agree.
  [[nodiscard]] std::vector<const Triple*> match_triples(const TriplePattern& pattern,
                                                         const Binding& seed = {},
                                                         IndexChoice index = IndexChoice::Auto) const;

  // One binding per matching triple, each extending seed.
  [[nodiscard]] std::vector<Binding> match(const TriplePattern& pattern, const Binding& seed = {},
                                           IndexChoice index = IndexChoice::Auto) const;

  // Set equality on triples; prefixes do not participate.
  friend bool operator==(const Graph& a, const Graph& b) { return a.triples_ == b.triples_; }

 private:
  struct PtrLess {
    bool operator()(const Triple* a, const Triple* b) const { return *a < *b; }
  };
  using Bucket = std::set<const Triple*, PtrLess>;
  using Index = std::map<Term, Bucket>;

  void rebuild_indexes();
  void index(const Triple* t);

  std::set<Triple> triples_;
  Index by_subject_;
  Index by_predicate_;
  Index by_object_;
  PrefixMap prefixes_;
};

// Tests whether a triple satisfies a pattern under seed and, if so, returns
// the extended binding.
std::optional<Binding> unify(const TriplePattern& pattern, const Triple& t, const Binding& seed);

// Union view over one or more graphs (source and target for cross checks).
// Match results are deduplicated and kept in canonical order.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(const Graph& g) : graphs_{&g} {}
  Dataset(std::initializer_list<const Graph*> graphs) : graphs_(graphs) {}

  [[nodiscard]] std::vector<Binding> match(const TriplePattern& pattern, const Binding& seed) const;
  [[nodiscard]] const std::vector<const Graph*>& graphs() const noexcept { return graphs_; }

 private:
  std::vector<const Graph*> graphs_;
};

}  // namespace odmx
