#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "odmx/errors.hpp"
#include "odmx/graph.hpp"

namespace odmx {

// A parsed model file.
struct Document {
  Graph graph;
  std::string source_name;
};

// Line-oriented N-Triples: `<s> <p> (<o> | "lex"^^<dt>) .` per line, with
// blank lines and '#' comment lines. A literal without a datatype is read as
// xsd:string. Throws ParseError.
Graph parse_ntriples(std::string_view text);

// Canonical form: one triple per line in lexicographic order, '\n' endings,
// every literal carrying an explicit datatype.
std::string serialize_ntriples(const Graph& graph);

// Turtle subset: @prefix, prefixed names, `a`, `;` and `,` continuations,
// literals with optional ^^datatype. Declared prefixes are recorded on the
// returned graph. Throws ParseError.
Graph parse_turtle_subset(std::string_view text);

// Reads a file by extension (.nt or .ttl). Parse errors are rethrown with
// the path prefixed to the message.
Document load_document(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

// Thrown by the file helpers; wraps I/O failures and positioned parse errors.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace odmx
