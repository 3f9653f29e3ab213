#include "odmx/pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace odmx {

namespace {

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

Var::Var(std::string name) : name_(std::move(name)) {
  if (name_.size() < 2 || name_[0] != '?' ||
      !std::all_of(name_.begin() + 1, name_.end(), is_name_char)) {
    throw TermError("invalid variable name '" + name_ + "'");
  }
}

const Term* Binding::get(std::string_view var) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                             [](const Entry& e, std::string_view v) { return e.first < v; });
  if (it == entries_.end() || it->first != var) return nullptr;
  return &it->second;
}

Binding Binding::extended(const std::string& var, const Term& value) const {
  Binding out = *this;
  auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), var,
                             [](const Entry& e, const std::string& v) { return e.first < v; });
  if (it != out.entries_.end() && it->first == var) {
    if (it->second != value) {
      throw std::logic_error("variable " + var + " is already bound to a different term");
    }
    return out;
  }
  out.entries_.insert(it, Entry{var, value});
  return out;
}

Binding Binding::restricted(std::span<const Var> vars) const {
  Binding out;
  for (const auto& v : vars) {
    if (const Term* t = get(v.name())) out = out.extended(v.name(), *t);
  }
  return out;
}

std::strong_ordering operator<=>(const Binding& a, const Binding& b) noexcept {
  const auto n = std::min(a.entries_.size(), b.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.entries_[i].first <=> b.entries_[i].first; c != 0) return c;
    if (auto c = a.entries_[i].second <=> b.entries_[i].second; c != 0) return c;
  }
  return a.entries_.size() <=> b.entries_.size();
}

std::optional<Term> resolve(const PatternTerm& pt, const Binding& b) {
  if (const auto* t = std::get_if<Term>(&pt)) return *t;
  const auto& v = std::get<Var>(pt);
  if (v.anonymous()) return std::nullopt;
  if (const Term* t = b.get(v.name())) return *t;
  return std::nullopt;
}

std::string to_string(const PatternTerm& pt) {
  if (const auto* v = std::get_if<Var>(&pt)) return v->name();
  return std::get<Term>(pt).nt();
}

}  // namespace odmx
