#pragma once

#include "chemlink/term.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace chemlink::sparql {

struct Variable {
    std::string name;   // without the leading '?'

    friend auto operator<=>(const Variable&, const Variable&) = default;
    friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Variable, Iri, Literal>;

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;

    friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

enum class CompareOp { Lt, Gt, Le, Ge, Eq, Ne };

std::string_view op_text(CompareOp op) noexcept;

// variable <op> constant. A constant written on the left is normalized by
// flipping the operator.
struct Comparison {
    Variable variable;
    CompareOp op;
    Term constant;

    friend bool operator==(const Comparison&, const Comparison&) = default;
};

// Substring regular-expression test; case-insensitive with flag "i".
struct RegexFilter {
    Variable variable;
    std::string pattern;
    bool case_insensitive = false;

    friend bool operator==(const RegexFilter&, const RegexFilter&) = default;
};

using FilterExpr = std::variant<Comparison, RegexFilter>;

struct GroupPattern;

// { A } UNION { B } UNION ... ; a lone nested { A } is a one-branch union.
struct UnionPattern {
    std::vector<GroupPattern> branches;

    friend bool operator==(const UnionPattern&, const UnionPattern&);
};

struct GroupPattern {
    std::vector<TriplePattern> triples;
    std::vector<FilterExpr> filters;
    std::vector<UnionPattern> unions;

    friend bool operator==(const GroupPattern&, const GroupPattern&) = default;
};

// COUNT(?var) or COUNT(*) AS ?alias.
struct CountAggregate {
    std::optional<Variable> argument;
    Variable alias;

    friend bool operator==(const CountAggregate&, const CountAggregate&) = default;
};

using ProjectionItem = std::variant<Variable, CountAggregate>;

struct OrderKey {
    Variable variable;
    bool descending = false;

    friend bool operator==(const OrderKey&, const OrderKey&) = default;
};

struct QueryAst {
    bool star = false;
    bool distinct = false;
    std::vector<ProjectionItem> projection;   // empty when star
    GroupPattern where;
    std::vector<Variable> group_by;
    std::vector<OrderKey> order_by;
    std::optional<std::size_t> limit;
    std::optional<std::size_t> offset;

    bool has_aggregate() const noexcept;
    bool is_grouped() const noexcept { return has_aggregate() || !group_by.empty(); }

    friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

// Variables mentioned by the group's triple patterns, including nested union
// branches, in order of first appearance.
std::vector<Variable> pattern_variables(const GroupPattern& group);

// Column names of the result, in order.
std::vector<std::string> result_header(const QueryAst& ast);

// Canonical query text; parse_query(to_string(ast)) == ast.
std::string to_string(const QueryAst& ast);

} // namespace chemlink::sparql
