#include "odmx/graph.hpp"

#include <algorithm>

namespace odmx {

Graph::Graph(std::initializer_list<Triple> triples) {
  for (const auto& t : triples) insert(t);
}

Graph::Graph(const Graph& other) : triples_(other.triples_), prefixes_(other.prefixes_) {
  rebuild_indexes();
}

Graph::Graph(Graph&& other) noexcept
    : triples_(std::move(other.triples_)),
      by_subject_(std::move(other.by_subject_)),
      by_predicate_(std::move(other.by_predicate_)),
      by_object_(std::move(other.by_object_)),
      prefixes_(std::move(other.prefixes_)) {
  // std::set node addresses survive a move, so the indexes stay valid.
  other.triples_.clear();
  other.by_subject_.clear();
  other.by_predicate_.clear();
  other.by_object_.clear();
}

Graph& Graph::operator=(const Graph& other) {
  if (this != &other) {
    triples_ = other.triples_;
    prefixes_ = other.prefixes_;
    rebuild_indexes();
  }
  return *this;
}

Graph& Graph::operator=(Graph&& other) noexcept {
  if (this != &other) {
    triples_ = std::move(other.triples_);
    by_subject_ = std::move(other.by_subject_);
    by_predicate_ = std::move(other.by_predicate_);
    by_object_ = std::move(other.by_object_);
    prefixes_ = std::move(other.prefixes_);
    other.triples_.clear();
    other.by_subject_.clear();
    other.by_predicate_.clear();
    other.by_object_.clear();
  }
  return *this;
}

void Graph::index(const Triple* t) {
  by_subject_[Term(t->subject)].insert(t);
  by_predicate_[Term(t->predicate)].insert(t);
  by_object_[t->object].insert(t);
}

void Graph::rebuild_indexes() {
  by_subject_.clear();
  by_predicate_.clear();
  by_object_.clear();
  for (const auto& t : triples_) index(&t);
}

bool Graph::insert(const Triple& t) {
  auto [it, inserted] = triples_.insert(t);
  if (inserted) index(&*it);
  return inserted;
}

bool Graph::erase(const Triple& t) {
  auto it = triples_.find(t);
  if (it == triples_.end()) return false;
  const Triple* p = &*it;
  auto drop = [p](Index& idx, const Term& key) {
    auto b = idx.find(key);
    b->second.erase(p);
    if (b->second.empty()) idx.erase(b);
  };
  drop(by_subject_, Term(t.subject));
  drop(by_predicate_, Term(t.predicate));
  drop(by_object_, t.object);
  triples_.erase(it);
  return true;
}

void Graph::reset() {
  by_subject_.clear();
  by_predicate_.clear();
  by_object_.clear();
  triples_.clear();
}

std::optional<Binding> unify(const TriplePattern& pattern, const Triple& t, const Binding& seed) {
  Binding out = seed;
  auto step = [&out](const PatternTerm& pt, const Term& value) {
    if (const auto* c = std::get_if<Term>(&pt)) return *c == value;
    const auto& v = std::get<Var>(pt);
    if (v.anonymous()) return true;
    if (const Term* bound = out.get(v.name())) return *bound == value;
    out = out.extended(v.name(), value);
    return true;
  };
  if (!step(pattern.subject, Term(t.subject))) return std::nullopt;
  if (!step(pattern.predicate, Term(t.predicate))) return std::nullopt;
  if (!step(pattern.object, t.object)) return std::nullopt;
  return out;
}

std::vector<const Triple*> Graph::match_triples(const TriplePattern& pattern, const Binding& seed,
                                                IndexChoice index) const {
  const auto s = resolve(pattern.subject, seed);
  const auto p = resolve(pattern.predicate, seed);
  const auto o = resolve(pattern.object, seed);

  // Subject and predicate positions only ever hold IRIs.
  if ((s && !s->is_iri()) || (p && !p->is_iri())) return {};

  std::vector<const Triple*> candidates;
  auto take_bucket = [&candidates](const Index& idx, const std::optional<Term>& key) {
    if (key) {
      auto it = idx.find(*key);
      if (it != idx.end()) candidates.assign(it->second.begin(), it->second.end());
    } else {
      for (const auto& [_, bucket] : idx) candidates.insert(candidates.end(), bucket.begin(), bucket.end());
    }
  };

  switch (index) {
    case IndexChoice::Subject: take_bucket(by_subject_, s); break;
    case IndexChoice::Predicate: take_bucket(by_predicate_, p); break;
    case IndexChoice::Object: take_bucket(by_object_, o); break;
    case IndexChoice::Auto: {
      const Bucket* best = nullptr;
      bool missing = false;
      auto consider = [&](const Index& idx, const std::optional<Term>& key) {
        if (!key) return;
        auto it = idx.find(*key);
        if (it == idx.end()) {
          missing = true;
        } else if (best == nullptr || it->second.size() < best->size()) {
          best = &it->second;
        }
      };
      consider(by_subject_, s);
      consider(by_predicate_, p);
      consider(by_object_, o);
      if (missing) return {};
      if (best != nullptr) {
        candidates.assign(best->begin(), best->end());
      } else {
        candidates.reserve(triples_.size());
        for (const auto& t : triples_) candidates.push_back(&t);
      }
      break;
    }
  }

  std::vector<const Triple*> out;
  out.reserve(candidates.size());
  for (const Triple* t : candidates) {
    if (unify(pattern, *t, seed)) out.push_back(t);
  }
  std::sort(out.begin(), out.end(), PtrLess{});
  return out;
}

std::vector<Binding> Graph::match(const TriplePattern& pattern, const Binding& seed,
                                  IndexChoice index) const {
  std::vector<Binding> out;
  for (const Triple* t : match_triples(pattern, seed, index)) {
    out.push_back(*unify(pattern, *t, seed));
  }
  return out;
}

std::vector<Binding> Dataset::match(const TriplePattern& pattern, const Binding& seed) const {
  if (graphs_.size() == 1) return graphs_.front()->match(pattern, seed);
  std::vector<const Triple*> all;
  for (const Graph* g : graphs_) {
    auto part = g->match_triples(pattern, seed);
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end(), [](const Triple* a, const Triple* b) { return *a < *b; });
  all.erase(std::unique(all.begin(), all.end(), [](const Triple* a, const Triple* b) { return *a == *b; }),
            all.end());
  std::vector<Binding> out;
  out.reserve(all.size());
  for (const Triple* t : all) out.push_back(*unify(pattern, *t, seed));
  return out;
}

}  // namespace odmx
