#pragma once

#include "chemlink/store.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chemlink {

// One parsed N-Triples statement (no graph component).
struct Statement {
    Iri subject;
    Iri predicate;
    Term object;

    friend auto operator<=>(const Statement&, const Statement&) = default;
    friend bool operator==(const Statement&, const Statement&) = default;
};

// Parses the supported N-Triples subset: absolute IRIs in angle brackets,
// literals with an optional xsd string/integer/decimal/boolean datatype,
// '#' comments and blank lines. Blank nodes and language tags are rejected.
// Throws ParseError carrying the 1-based line number of the first bad line.
std::vector<Statement> parse_ntriples(std::string_view document);

// One statement per line terminated by " .", sorted, duplicates removed.
std::string serialize_ntriples(std::vector<Statement> statements);

// Triples of `graph` (or of every graph merged) as an N-Triples document.
std::string export_graph(const Store& store, const std::optional<Iri>& graph = std::nullopt);

// Loads every statement into `graph`; returns the number of new triples.
// The document is fully parsed before anything is inserted.
std::size_t import_graph(Store& store, std::string_view document, const Iri& graph);

} // namespace chemlink
