#include "chemlink/sparql/result.hpp"

#include "../json_util.hpp"

#include <algorithm>
#include <stdexcept>

namespace chemlink::sparql {

std::size_t ResultTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::out_of_range("no column ?" + name);
    return static_cast<std::size_t>(it - header.begin());
}

namespace {

int rank(const Cell& c) {
    if (!c) return 0;
    if (is_iri(*c)) return 1;
    const auto& lit = std::get<Literal>(*c);
    if (lit.is_numeric()) return 2;
    if (lit.datatype() == Datatype::Boolean) return 3;
    return 4;
}

template <class T>
int three_way(const T& a, const T& b) {
    return a < b ? -1 : (b < a ? 1 : 0);
}

} // namespace

int compare_cells(const Cell& a, const Cell& b) noexcept {
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra == 0) return 0;
    if (ra == 1) return three_way(std::get<Iri>(*a).str(), std::get<Iri>(*b).str());
    const auto& la = std::get<Literal>(*a);
    const auto& lb = std::get<Literal>(*b);
    if (ra == 2) {
        if (int c = three_way(*la.numeric_value(), *lb.numeric_value())) return c;
    } else if (ra == 3) {
        if (int c = three_way(*la.boolean_value(), *lb.boolean_value())) return c;
    }
    if (int c = three_way(la.lexical(), lb.lexical())) return c;
    return three_way(static_cast<int>(la.datatype()), static_cast<int>(lb.datatype()));
}

int compare_rows(const Row& a, const Row& b) noexcept {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (int c = compare_cells(a[i], b[i])) return c;
    }
    return three_way(a.size(), b.size());
}

std::string to_json(const ResultTable& table) { return table_json(table).dump(); }

std::string to_tsv(const ResultTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i > 0) out += '\t';
        out += '?' + table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += '\t';
            if (row[i]) out += to_ntriples(*row[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace chemlink::sparql

namespace chemlink {

nlohmann::json table_json(const sparql::ResultTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& cell : row) cells.push_back(cell_json(cell));
        rows.push_back(std::move(cells));
    }
    return {{"head", table.header}, {"rows", rows}};
}

} // namespace chemlink
