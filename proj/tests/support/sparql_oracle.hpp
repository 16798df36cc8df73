#pragma once

// Brute-force reference evaluator for a SPARQL subset, with its own term
// model and a generator of random stores and queries. Shares nothing with
// the engine except the final conversion of engine tables into row keys.

#include "chemlink/sparql/result.hpp"
#include "chemlink/store.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

struct OTerm {
    enum Kind { Iri, Str, Int, Dec } kind = Iri;
    std::string text;   // IRI or lexical form
    friend auto operator<=>(const OTerm&, const OTerm&) = default;
};

std::string key(const OTerm& t);

struct Slot {
    std::optional<std::string> var;
    OTerm constant;
};

struct OPattern {
    Slot s, p, o;
};

struct OFilter {
    std::string var;
    bool regex = false;
    std::string op;       // comparison operator text
    OTerm constant;
    bool constant_left = false;
    std::string pattern;  // regex: plain alphanumeric substring
    bool icase = false;
};

struct OGroup {
    std::vector<OPattern> patterns;
    std::vector<OFilter> filters;
    std::vector<std::vector<OGroup>> unions;
};

struct OQuery {
    OGroup where;
    bool star = false;
    bool distinct = false;
    std::vector<std::string> select;          // plain projected variables
    std::optional<std::string> group_var;
    std::optional<std::string> count_arg;     // "*" or a variable name
    std::string count_alias = "n";
};

struct OTriple {
    OTerm s, p, o;
    int graph = 0;
};

struct OResult {
    std::vector<std::string> header;
    std::set<std::vector<std::string>> rows;
    std::size_t raw_rows = 0;   // before set collapse; engine tables must be duplicate-free
};

OResult evaluate(const OQuery& q, const std::vector<OTriple>& triples);
std::string to_text(const OQuery& q);

chemlink::Store build_store(const std::vector<OTriple>& triples);
OResult from_table(const chemlink::sparql::ResultTable& table);

std::vector<OTriple> random_triples(std::mt19937& rng, std::size_t max_triples);
OQuery random_query(std::mt19937& rng, const std::vector<OTriple>& triples);

} // namespace oracle
