#pragma once

#include "chemlink/sparql/ast.hpp"
#include "chemlink/vocabulary.hpp"

#include <string_view>

namespace chemlink::sparql {

// Parses the supported SELECT subset. Prefixed names expand through
// `prefixes` plus any PREFIX declarations in the text (which take
// precedence). Throws ParseError (with character position) on syntax or
// well-formedness errors and PrefixError for undeclared prefixes.
QueryAst parse_query(std::string_view text, const PrefixTable& prefixes = PrefixTable::defaults());

} // namespace chemlink::sparql
