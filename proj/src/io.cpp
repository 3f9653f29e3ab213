#include "odmx/io.hpp"

#include <fstream>
#include <sstream>

#include "scanner.hpp"

namespace odmx {

namespace {

using detail::Position;
using detail::Scanner;

Iri make_iri(const std::string& value, Position at) {
  try {
    return Iri(value);
  } catch (const TermError& e) {
    Scanner::fail_at(at, std::string("malformed IRI: ") + e.what());
  }
}

Literal make_literal(std::string lexical, Iri datatype, Position at) {
  try {
    return Literal(std::move(lexical), std::move(datatype));
  } catch (const TermError& e) {
    Scanner::fail_at(at, e.what());
  }
}

// ---- N-Triples -------------------------------------------------------------

Iri nt_resource(Scanner& s, std::string_view role) {
  const Position at = s.position();
  if (s.peek() == '"') s.fail("literal in " + std::string(role) + " position");
  if (s.peek() != '<') s.fail("malformed IRI: expected '<' in " + std::string(role) + " position");
  return make_iri(s.read_iriref(), at);
}

Term nt_object(Scanner& s) {
  const Position at = s.position();
  if (s.peek() == '<') return make_iri(s.read_iriref(), at);
  if (s.peek() != '"') s.fail("expected IRI or literal in object position");
  std::string lexical = s.read_quoted();
  if (s.peek() == '@') s.fail("language-tagged literals are not supported");
  if (s.consume("^^")) {
    const Position dt_at = s.position();
    if (s.peek() != '<') s.fail("malformed IRI: expected '<' after '^^'");
    Iri dt = make_iri(s.read_iriref(), dt_at);
    return make_literal(std::move(lexical), std::move(dt), at);
  }
  return Literal::string(std::move(lexical));
}

void skip_inline_space(Scanner& s) {
  while (s.peek() == ' ' || s.peek() == '\t') s.advance();
}

// ---- Turtle subset ---------------------------------------------------------

class TurtleReader {
 public:
  explicit TurtleReader(std::string_view text) : s_(text) {}

  Graph run() {
    while (true) {
      s_.skip_space();
      if (s_.at_end()) break;
      if (s_.rest().starts_with("@prefix")) {
        directive();
      } else {
        statement();
      }
    }
    return std::move(graph_);
  }

 private:
  void directive() {
    s_.advance(7);
    s_.skip_space();
    detail::PrefixedName pn;
    if (!detail::read_pname(s_, pn) || !pn.local.empty()) s_.fail("expected prefix declaration 'name:'");
    s_.skip_space();
    const Position at = s_.position();
    std::string ns = s_.read_iriref();
    make_iri(ns, at);
    s_.skip_space();
    s_.expect(".", "'.' after @prefix declaration");
    graph_.set_prefix(pn.prefix, ns);
  }

  void statement() {
    const Iri subject = resource("subject");
    while (true) {
      s_.skip_space();
      const Iri predicate = verb();
      while (true) {
        s_.skip_space();
        graph_.insert(Triple{subject, predicate, object()});
        s_.skip_space();
        if (!s_.consume(",")) break;
      }
      if (!s_.consume(";")) break;
      s_.skip_space();
      // A trailing ';' before '.' is permitted.
      if (s_.peek() == '.') break;
    }
    s_.skip_space();
    if (!s_.consume(".")) s_.fail("missing terminal '.'");
  }

  Iri verb() {
    if (s_.peek() == 'a') {
      const char next = s_.peek(1);
      if (next == ' ' || next == '\t' || next == '\n' || next == '\r' || next == '<' || next == '"') {
        s_.advance();
        return Iri(std::string(vocab::kRdfType));
      }
    }
    return resource("predicate");
  }

  Iri resource(std::string_view role) {
    const Position at = s_.position();
    if (s_.peek() == '"') s_.fail("literal in " + std::string(role) + " position");
    if (s_.peek() == '<') return make_iri(s_.read_iriref(), at);
    detail::PrefixedName pn;
    if (!detail::read_pname(s_, pn)) s_.fail("expected IRI or prefixed name in " + std::string(role) + " position");
    auto it = graph_.prefixes().find(pn.prefix);
    if (it == graph_.prefixes().end()) Scanner::fail_at(pn.at, "undefined prefix " + pn.prefix);
    return make_iri(it->second + pn.local, pn.at);
  }

  Term object() {
    if (s_.peek() != '"') return resource("object");
    const Position at = s_.position();
    std::string lexical = s_.read_quoted();
    if (s_.peek() == '@') s_.fail("language-tagged literals are not supported");
    if (s_.consume("^^")) return make_literal(std::move(lexical), resource("datatype"), at);
    return Literal::string(std::move(lexical));
  }

  Scanner s_;
  Graph graph_;
};

}  // namespace

Graph parse_ntriples(std::string_view text) {
  Graph g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line_no;
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;

    Scanner s(line, line_no);
    skip_inline_space(s);
    if (s.at_end() || s.peek() == '#') {
      if (end == text.size()) break;
      continue;
    }
    Iri subject = nt_resource(s, "subject");
    skip_inline_space(s);
    Iri predicate = nt_resource(s, "predicate");
    skip_inline_space(s);
    Term object = nt_object(s);
    skip_inline_space(s);
    if (!s.consume(".")) s.fail("missing terminal '.'");
    skip_inline_space(s);
    if (!s.at_end() && s.peek() != '#') s.fail("unexpected text after '.'");
    g.insert(Triple{std::move(subject), std::move(predicate), std::move(object)});
    if (end == text.size()) break;
  }
  return g;
}

std::string serialize_ntriples(const Graph& graph) {
  std::string out;
  for (const auto& t : graph) {
    out += to_ntriples(t);
    out += '\n';
  }
  return out;
}

Graph parse_turtle_subset(std::string_view text) { return TurtleReader(text).run(); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw FileError("write failed for " + path.string());
}

Document load_document(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    if (path.extension() == ".ttl") return Document{parse_turtle_subset(text), path.string()};
    return Document{parse_ntriples(text), path.string()};
  } catch (const ParseError& e) {
    throw FileError(path.string() + ":" + e.what());
  }
}

}  // namespace odmx
