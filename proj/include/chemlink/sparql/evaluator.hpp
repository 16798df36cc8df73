#pragma once

#include "chemlink/sparql/ast.hpp"
#include "chemlink/sparql/result.hpp"
#include "chemlink/store.hpp"
#include "chemlink/vocabulary.hpp"

#include <string_view>

namespace chemlink::sparql {

// Evaluates `ast` over the merge of all named graphs of `store`.
//
// Solutions have set semantics: triple patterns match distinct (s, p, o)
// regardless of graph, UNION branches are unioned then deduplicated, and the
// projected table is deduplicated. COUNT counts the distinct solutions of a
// group. Aggregate-free GROUP BY behaves as projection plus dedup. Rows come
// back in the default order (see compare_rows) unless ORDER BY is given;
// OFFSET and LIMIT apply last.
//
// Throws EvalError when a FILTER names a variable its group never binds.
ResultTable evaluate(const QueryAst& ast, const Store& store);

// parse_query followed by evaluate.
ResultTable run_query(std::string_view text, const Store& store,
                      const PrefixTable& prefixes = PrefixTable::defaults());

// Filter row predicates. A type mismatch yields false rather than an error.
bool comparison_holds(CompareOp op, const Term& value, const Term& constant);

} // namespace chemlink::sparql
