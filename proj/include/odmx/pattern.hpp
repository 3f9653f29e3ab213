#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "odmx/term.hpp"

namespace odmx {

// A query variable. The name includes the leading '?'. "?_" is anonymous:
// each occurrence matches independently and is never bound.
class Var {
 public:
  explicit Var(std::string name);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] bool anonymous() const noexcept { return name_ == "?_"; }

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;

 private:
  std::string name_;
};

using PatternTerm = std::variant<Var, Term>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

// Variable-to-term map. Value type: extending returns a new binding and
// never touches the original. Entries stay sorted by variable name.
class Binding {
 public:
  using Entry = std::pair<std::string, Term>;

  Binding() = default;

  [[nodiscard]] const Term* get(std::string_view var) const noexcept;
  [[nodiscard]] bool has(std::string_view var) const noexcept { return get(var) != nullptr; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  // Returns a copy with var bound to value. Binding an already-bound variable
  // to a different value is a logic error and throws.
  [[nodiscard]] Binding extended(const std::string& var, const Term& value) const;

  // Restriction to the listed variables (unbound ones are skipped).
  [[nodiscard]] Binding restricted(std::span<const Var> vars) const;

  [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
  [[nodiscard]] auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const Binding&, const Binding&) = default;
  friend std::strong_ordering operator<=>(const Binding& a, const Binding& b) noexcept;

 private:
  std::vector<Entry> entries_;
};

// Value of a pattern position under a binding: the constant (or bound
// variable's value), or nullopt when the position is an unbound variable.
std::optional<Term> resolve(const PatternTerm& pt, const Binding& b);

std::string to_string(const PatternTerm& pt);

}  // namespace odmx
