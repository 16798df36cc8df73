#pragma once

#include "chemlink/store.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace chemlink::analytics {

// Side effect -> drug -> target -> pathway associations, all on resolved
// IRIs. Sources: sider (side_effect_id, cid), drugbank_drug (CID),
// drugbank_interaction (DBID, SwissProt_ID), kegg_pathway_protein
// (Uniprot, PathwayID).
class AssociationIndex {
public:
    explicit AssociationIndex(const Store& store);

    const std::set<Iri>& drugs_causing(const Iri& side_effect) const;
    const std::set<Iri>& targets_of(const Iri& drug) const;
    const std::set<Iri>& pathways_of(const Iri& gene) const;

private:
    const Store& store_;
    std::map<Iri, std::set<Iri>> se_drugs_;
    std::map<Iri, std::set<Iri>> drug_targets_;
    std::map<Iri, std::set<Iri>> gene_pathways_;
};

inline constexpr std::size_t kMinDrugsPerGene = 2;
inline constexpr std::size_t kMinGenesPerPathway = 2;

struct GeneSupport {
    Iri gene;
    std::size_t drugs = 0;
    friend bool operator==(const GeneSupport&, const GeneSupport&) = default;
};

struct EfficientGeneSet {
    Iri side_effect;
    std::vector<GeneSupport> genes;   // sorted by gene IRI
};

// Genes targeted by at least two drugs that cause `side_effect`.
EfficientGeneSet efficient_genes(const Iri& side_effect, const Store& store);

struct PathwayScore {
    Iri pathway;
    std::size_t efficient_gene_count = 0;
    std::size_t association_path_count = 0;   // distinct (drug, gene) chains into the pathway
    friend bool operator==(const PathwayScore&, const PathwayScore&) = default;
};

// Pathways holding at least two efficient genes, by chain count descending
// then pathway IRI ascending, truncated to k.
std::vector<PathwayScore> rank_pathways_for_side_effect(const Iri& side_effect, std::size_t k, const Store& store);

// The adverse-reaction query for a side-effect name, issued as
// ORDER BY DESC(?count) LIMIT k.
std::string adverse_reaction_query(std::string_view side_effect_name, std::size_t k);

// Named query fragments binding ?gene and ?disease (gene sources) or
// ?compound and ?gene (chemogenomics sources).
struct SourceCatalog {
    std::map<std::string, std::string> gene_sources;
    std::map<std::string, std::string> chem_sources;

    static const SourceCatalog& defaults();
};

using ChemGenePair = std::pair<Iri, Iri>;

// Chemicals interacting with genes whose disease name matches
// `disease_pattern` (case-insensitive regex search). Throws SourceError for
// names missing from the catalog.
std::set<ChemGenePair> disease_chemicals(std::string_view disease_pattern, const std::vector<std::string>& gene_sources,
                                         const std::vector<std::string>& chem_sources, const Store& store,
                                         const SourceCatalog& catalog = SourceCatalog::defaults());

using KeySet = std::set<std::string>;

// Resolved objects of `predicate` within `graph`.
KeySet value_keys(const Store& store, const Iri& graph, const Iri& predicate);
// One key per subject of `graph` holding both predicates, built from the
// resolved values; with `unordered` the two halves are sorted first.
KeySet pair_keys(const Store& store, const Iri& graph, const Iri& left, const Iri& right, bool unordered);

struct CoverageSource {
    std::string name;
    KeySet keys;
};

struct SourceCoverage {
    std::string name;
    std::size_t count = 0;
    double percentage = 0;   // of the union, one decimal
};

struct CoverageReport {
    std::vector<SourceCoverage> per_source;
    std::size_t union_count = 0;
    std::size_t intersection_count = 0;   // keys present in every source

    std::string to_json() const;
    // Tab-separated table: header, one line per source, then ALL.
    std::string to_text() const;
};

double percent_of(std::size_t part, std::size_t whole);

CoverageReport coverage_report(const std::vector<CoverageSource>& sources);

} // namespace chemlink::analytics
