#pragma once

#include "chemlink/sparql/result.hpp"

#include <json.hpp>

namespace chemlink {

// {"type": "iri", "value": ...} or {"type": "literal", "value": ..., "datatype": ...}
inline nlohmann::json term_json(const Term& t) {
    if (const auto* iri = std::get_if<Iri>(&t)) return {{"type", "iri"}, {"value", iri->str()}};
    const auto& lit = std::get<Literal>(t);
    return {{"type", "literal"}, {"value", lit.lexical()}, {"datatype", std::string(datatype_name(lit.datatype()))}};
}

inline nlohmann::json cell_json(const sparql::Cell& c) { return c ? term_json(*c) : nlohmann::json(nullptr); }

nlohmann::json table_json(const sparql::ResultTable& table);

} // namespace chemlink
