#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace odmx {

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kMetamodelA = "http://metamodelA.ecore#";
inline constexpr std::string_view kMetamodelB = "http://metamodelB.ecore#";
}  // namespace vocab

// Thrown when a value violates the invariants of a term type.
class TermError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An absolute IRI. Ordered by its cached N-Triples rendering.
class Iri {
 public:
  explicit Iri(std::string value);

  [[nodiscard]] const std::string& str() const noexcept { return value_; }
  [[nodiscard]] const std::string& nt() const noexcept { return nt_; }

  // Substring after the last '#', or after the last '/' when there is no '#'.
  [[nodiscard]] std::string_view local_name() const noexcept;

  friend bool operator==(const Iri& a, const Iri& b) noexcept { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) noexcept {
    return a.nt_ <=> b.nt_;
  }

 private:
  std::string value_;
  std::string nt_;
};

// Typed literal. Equality is (lexical, datatype) pair equality, no value-space
// normalization: "01"^^xsd:integer != "1"^^xsd:integer.
class Literal {
 public:
  Literal(std::string lexical, Iri datatype);

  static Literal string(std::string lexical);
  static Literal boolean(bool value);

  [[nodiscard]] const std::string& lexical() const noexcept { return lexical_; }
  [[nodiscard]] const Iri& datatype() const noexcept { return datatype_; }
  [[nodiscard]] const std::string& nt() const noexcept { return nt_; }

  friend bool operator==(const Literal& a, const Literal& b) noexcept { return a.nt_ == b.nt_; }
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) noexcept {
    return a.nt_ <=> b.nt_;
  }

 private:
  std::string lexical_;
  Iri datatype_;
  std::string nt_;
};

class Term {
 public:
  Term(Iri iri) : value_(std::move(iri)) {}  // NOLINT(google-explicit-constructor)
  Term(Literal lit) : value_(std::move(lit)) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] bool is_iri() const noexcept { return std::holds_alternative<Iri>(value_); }
  [[nodiscard]] bool is_literal() const noexcept { return std::holds_alternative<Literal>(value_); }
  [[nodiscard]] const Iri& iri() const { return std::get<Iri>(value_); }
  [[nodiscard]] const Literal& literal() const { return std::get<Literal>(value_); }
  [[nodiscard]] const Iri* as_iri() const noexcept { return std::get_if<Iri>(&value_); }

  // Canonical N-Triples rendering.
  [[nodiscard]] const std::string& nt() const noexcept;

  // Lexical form for literals, the full IRI string otherwise.
  [[nodiscard]] const std::string& text() const noexcept;

  friend bool operator==(const Term& a, const Term& b) noexcept { return a.nt() == b.nt(); }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
    return a.nt() <=> b.nt();
  }

 private:
  std::variant<Iri, Literal> value_;
};

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple& a, const Triple& b) noexcept {
    if (auto c = a.subject <=> b.subject; c != 0) return c;
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    return a.object <=> b.object;
  }
};

// N-Triples escaping helpers shared by the term cache and the serializer.
std::string escape_iri(std::string_view iri);
std::string escape_literal(std::string_view lexical);

// One canonical N-Triples line without the trailing newline.
std::string to_ntriples(const Triple& t);

}  // namespace odmx
