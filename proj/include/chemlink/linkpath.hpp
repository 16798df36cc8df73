#pragma once

#include "chemlink/sparql/result.hpp"
#include "chemlink/store.hpp"
#include "chemlink/vocabulary.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chemlink::linkpath {

// A data source (or hub) in the schema graph. `entity` is the predicate
// leading from a record of this source to the entity it describes; hub
// nodes have none because their node variable already is the entity.
struct NodeSpec {
    std::string name;
    std::string kind = "record";   // compound, protein, drug, gene, side_effect, pathway, disease, ...
    std::optional<Iri> entity;
};

// Join annotation of an undirected edge. The two sides share a join value:
// `?a pred_a ?j . ?b pred_b ?j`. A missing predicate means that node's own
// variable is the join value.
struct EdgeSpec {
    std::string a;
    std::string b;
    std::optional<Iri> pred_a;
    std::optional<Iri> pred_b;

    const std::optional<Iri>& pred_for(std::string_view node) const { return node == a ? pred_a : pred_b; }
};

struct ClassSourceSet {
    std::string class_name;
    std::vector<std::string> sources;
};

class SchemaGraph {
public:
    // Re-declaring a node replaces its annotations.
    void add_node(NodeSpec node);
    // Throws SchemaError for unknown endpoints, self-loops, or an edge
    // without any predicate. Returns false (and keeps the first annotation)
    // when the edge already exists.
    bool add_edge(EdgeSpec edge);
    bool remove_edge(std::string_view a, std::string_view b);
    // Throws SchemaError for unknown nodes, ClassError for an empty set.
    void add_class(ClassSourceSet cls);

    bool has_node(std::string_view name) const;
    const NodeSpec& node(std::string_view name) const;    // throws SchemaError
    const EdgeSpec* edge(std::string_view a, std::string_view b) const;
    const std::vector<std::string>& neighbors(std::string_view name) const;   // sorted
    std::vector<std::string> node_names() const;          // sorted
    std::vector<EdgeSpec> edges() const;                  // sorted by (a, b), a < b
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const ClassSourceSet& class_sources(std::string_view class_name) const;   // throws ClassError
    std::vector<std::string> class_names() const;

    const PrefixTable& prefixes() const noexcept { return prefixes_; }
    PrefixTable& prefixes() noexcept { return prefixes_; }

private:
    static std::pair<std::string, std::string> key(std::string_view a, std::string_view b);

    std::map<std::string, NodeSpec, std::less<>> nodes_;
    std::map<std::string, std::vector<std::string>, std::less<>> adjacency_;
    std::map<std::pair<std::string, std::string>, EdgeSpec> edges_;
    std::map<std::string, ClassSourceSet, std::less<>> classes_;
    PrefixTable prefixes_ = PrefixTable::defaults();
};

// Descriptor format, one declaration per line, '#' comments:
//
//   prefix ex = http://example.org/
//   node sider kind=side_effect entity=sider:side_effect_id
//   node compound_hub kind=compound
//   edge sider compound_hub sider:cid -
//   class Side effect = sider
//
// Throws SchemaError naming the line.
SchemaGraph build_schema_graph(std::string_view descriptor);
SchemaGraph read_schema_graph(const std::filesystem::path& path);

using LinkPath = std::vector<std::string>;

inline constexpr std::size_t kDefaultMaxLen = 10;

// Every simple path of 1..max_len edges from some source of `from` to some
// source of `to`, deduplicated, ordered by length then node sequence.
// Empty when both sets name the same class. Throws ClassError for an empty
// source set and SchemaError for sources missing from the graph.
std::vector<LinkPath> enumerate_paths(const SchemaGraph& g, const ClassSourceSet& from, const ClassSourceSet& to,
                                      std::size_t max_len = kDefaultMaxLen);

// "[sider, compound_hub, kegg]"
std::string format_path(const LinkPath& path);
// [["sider", "compound_hub", "kegg"], ...]
std::string paths_to_json(const std::vector<LinkPath>& paths);

struct PathQuery {
    std::string text;
    std::vector<std::string> entity_vars;   // one per path node, in path order
};

// SELECT query chaining the join predicates of consecutive edges and
// projecting the entity of every node. Throws SchemaError when `path` is
// not a path of `g`.
PathQuery path_to_query(const LinkPath& path, const SchemaGraph& g);

struct PathOutcome {
    LinkPath path;
    std::string query;
    sparql::ResultTable table;   // entity columns in path order
    std::optional<std::string> error;
};

struct CombinedRow {
    Term from;
    Term to;
    std::vector<std::size_t> paths;   // indexes into CombinedResult::paths
};

struct CombinedResult {
    std::string from_class;
    std::string to_class;
    std::vector<PathOutcome> paths;
    std::vector<CombinedRow> rows;   // sorted by (from, to)

    std::vector<std::size_t> failed() const;
    std::string to_json() const;
};

// Runs every enumerated path and unions the rows on resolved (from, to)
// entity pairs. A path whose evaluation throws is recorded with its error
// and does not stop the others.
CombinedResult execute_linkpaths(const SchemaGraph& g, const ClassSourceSet& from, const ClassSourceSet& to,
                                 const Store& store, std::size_t max_len = kDefaultMaxLen);

} // namespace chemlink::linkpath
