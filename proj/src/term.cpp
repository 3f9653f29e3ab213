#include "odmx/term.hpp"

#include <cstdio>

namespace odmx {

namespace {

bool is_well_formed_iri(std::string_view v) {
  if (v.empty()) return false;
  if (v.find("://") != std::string_view::npos) return true;
  return v.starts_with("urn:");
}

void append_uchar(std::string& out, unsigned char c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
  out += buf;
}

}  // namespace

std::string escape_iri(std::string_view iri) {
  std::string out;
  out.reserve(iri.size());
  for (char ch : iri) {
    const auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        append_uchar(out, c);
        break;
      default:
        if (c <= 0x20) {
          append_uchar(out, c);
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size() + 2);
  for (char ch : lexical) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += ch;
    }
  }
  return out;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_well_formed_iri(value_)) {
    throw TermError("not an absolute IRI: '" + value_ + "'");
  }
  nt_.reserve(value_.size() + 2);
  nt_ += '<';
  nt_ += escape_iri(value_);
  nt_ += '>';
}

std::string_view Iri::local_name() const noexcept {
  std::string_view v = value_;
  auto pos = v.rfind('#');
  if (pos == std::string_view::npos) pos = v.rfind('/');
  return pos == std::string_view::npos ? v : v.substr(pos + 1);
}

Literal::Literal(std::string lexical, Iri datatype)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)) {
  if (datatype_.str() == vocab::kXsdBoolean && lexical_ != "true" && lexical_ != "false") {
    throw TermError("boolean literal must be \"true\" or \"false\", got \"" + lexical_ + "\"");
  }
  nt_ = '"' + escape_literal(lexical_) + "\"^^" + datatype_.nt();
}

Literal Literal::string(std::string lexical) {
  return Literal(std::move(lexical), Iri(std::string(vocab::kXsdString)));
}

Literal Literal::boolean(bool value) {
  return Literal(value ? "true" : "false", Iri(std::string(vocab::kXsdBoolean)));
}

const std::string& Term::nt() const noexcept {
  return std::visit([](const auto& v) -> const std::string& { return v.nt(); }, value_);
}

const std::string& Term::text() const noexcept {
  if (const auto* lit = std::get_if<Literal>(&value_)) return lit->lexical();
  return std::get<Iri>(value_).str();
}

std::string to_ntriples(const Triple& t) {
  std::string line;
  line.reserve(t.subject.nt().size() + t.predicate.nt().size() + t.object.nt().size() + 4);
  line += t.subject.nt();
  line += ' ';
  line += t.predicate.nt();
  line += ' ';
  line += t.object.nt();
  line += " .";
  return line;
}

}  // namespace odmx
