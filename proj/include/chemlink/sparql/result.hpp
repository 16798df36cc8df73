#pragma once

#include "chemlink/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chemlink::sparql {

using Cell = std::optional<Term>;   // nullopt: variable unbound in this row
using Row = std::vector<Cell>;

struct ResultTable {
    std::vector<std::string> header;
    std::vector<Row> rows;

    std::size_t column(const std::string& name) const;   // throws std::out_of_range

    friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

// Total order used for ORDER BY and for the default row order: unbound,
// then IRIs (by text), then numeric literals (by value), booleans, strings.
int compare_cells(const Cell& a, const Cell& b) noexcept;
int compare_rows(const Row& a, const Row& b) noexcept;

// {"head": ["x", ...], "rows": [[cell, ...], ...]} where a cell is null,
// {"type": "iri", "value": ...} or {"type": "literal", "value": ...,
// "datatype": "integer"}.
std::string to_json(const ResultTable& table);
// Header line of ?vars, then one line per row with N-Triples terms.
std::string to_tsv(const ResultTable& table);

} // namespace chemlink::sparql
