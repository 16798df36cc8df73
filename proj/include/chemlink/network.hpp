#pragma once

#include "chemlink/linkpath.hpp"
#include "chemlink/litxval.hpp"
#include "chemlink/store.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chemlink::portal {

struct NetworkNode {
    std::string id;      // entity IRI
    std::string label;
    std::string kind;    // drug, protein, side_effect, pathway, disease, gene, compound, document
    friend bool operator==(const NetworkNode&, const NetworkNode&) = default;
};

struct NetworkEdge {
    std::string source;
    std::string target;
    std::string relation;
    std::vector<std::string> paths;   // attributions, sorted
    friend bool operator==(const NetworkEdge&, const NetworkEdge&) = default;
};

struct NetworkDoc {
    std::vector<NetworkNode> nodes;   // sorted by id
    std::vector<NetworkEdge> edges;   // sorted by (source, target, relation)

    // Every edge endpoint is a node and node ids are unique.
    bool closed() const;
    std::string to_json() const;
};

// Kind of an entity from its namespace; "compound" for unknown ones.
std::string entity_kind(const Iri& iri);

// One node per resolved entity of the non-record path nodes, one edge per
// adjacent entity pair of a contributing row. With `from` / `to` set, only
// rows whose endpoints resolve to them contribute.
NetworkDoc network_export(const linkpath::CombinedResult& result, const linkpath::SchemaGraph& g, const Store& store,
                          const std::optional<Iri>& from = std::nullopt, const std::optional<Iri>& to = std::nullopt);

// The two entities, their associations, and the supporting documents.
NetworkDoc network_export(const litxval::ValidationReport& report);

} // namespace chemlink::portal
