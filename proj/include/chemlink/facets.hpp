#pragma once

#include "chemlink/store.hpp"

#include <string>
#include <vector>

namespace chemlink::portal {

// An entity passes when it has `predicate` with a value whose display form
// (IRI text or literal lexical form) equals `value`.
struct FacetFilter {
    Iri predicate;
    std::string value;
};

struct FacetBucket {
    Term value;
    std::size_t count = 0;
};

struct FacetResult {
    Iri graph;
    Iri field;
    std::vector<FacetBucket> buckets;   // by value, see sparql::compare_cells
    std::vector<Iri> entities;          // entities passing every filter, sorted
    std::size_t total_entities = 0;     // subjects of the graph, provenance excluded

    std::string to_json(std::size_t limit = 100, std::size_t offset = 0) const;
};

// Entities are the subjects of `graph` other than the graph IRI itself.
// A multi-valued field counts the entity once in each of its buckets.
// Throws GraphUnknown for unregistered graphs.
FacetResult facet_counts(const Store& store, const Iri& graph, const Iri& field, const std::vector<FacetFilter>& filters);

} // namespace chemlink::portal
