#pragma once

#include "chemlink/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Local IRI vocabulary. Entity namespaces hold normalized identifiers;
// dataset vocabularies live under kVocabBase/<dataset>/ and are exposed to
// queries through the default prefix table (compound:CID,
// drugbank_interaction:SwissProt_ID, ...).
namespace chemlink::vocab {

inline constexpr std::string_view kBase = "http://chemlink.org/";
inline constexpr std::string_view kVocabBase = "http://chemlink.org/vocab/";
inline constexpr std::string_view kGraphBase = "http://chemlink.org/graph/";
inline constexpr std::string_view kRecordBase = "http://chemlink.org/record/";

inline constexpr std::string_view kCompoundNs = "http://chemlink.org/compound/";
inline constexpr std::string_view kUniprotNs = "http://chemlink.org/uniprot/";
inline constexpr std::string_view kGeneNs = "http://chemlink.org/gene/";
inline constexpr std::string_view kGiNs = "http://chemlink.org/gi/";
inline constexpr std::string_view kPdbNs = "http://chemlink.org/pdb/";
inline constexpr std::string_view kDrugNs = "http://chemlink.org/drug/";
inline constexpr std::string_view kDiseaseNs = "http://chemlink.org/disease/";
inline constexpr std::string_view kSideEffectNs = "http://chemlink.org/side_effect/";
inline constexpr std::string_view kPathwayNs = "http://chemlink.org/pathway/";
inline constexpr std::string_view kPubmedNs = "http://chemlink.org/pubmed/";

inline constexpr std::string_view kOwlSameAs = "http://www.w3.org/2002/07/owl#sameAs";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

// Dataset vocabularies that get a prefix of the same name.
const std::vector<std::string>& dataset_vocabularies();

// Predicate `local` in dataset vocabulary `dataset`.
Iri term(std::string_view dataset, std::string_view local);

Iri same_as();
Iri rdf_type();
Iri graph_iri(std::string_view name);
std::string graph_name(const Iri& graph);

// 5W provenance predicates, vocabulary "prov".
Iri prov_what();
Iri prov_when();
Iri prov_where();
Iri prov_why();
Iri prov_who();

// Literature graph vocabulary.
Iri lit_mentions();
Iri lit_year();
Iri lit_title();
Iri document_iri(std::string_view pmid);

// Hub canonicalization rank of an IRI: lower wins. Compound CIDs and
// UniProt accessions are the hubs (0); drug-local and gene-symbol IRIs come
// next (1); GI numbers (2); every other namespace last (3).
int hub_rank(const Iri& iri) noexcept;

} // namespace chemlink::vocab

namespace chemlink {

// Prefix -> namespace IRI table used by the query parser and descriptor
// readers.
class PrefixTable {
public:
    PrefixTable() = default;

    // rdf, rdfs, owl, xsd, the entity namespaces and every dataset vocabulary.
    static PrefixTable defaults();

    void declare(std::string prefix, std::string ns);
    std::optional<std::string> lookup(std::string_view prefix) const;
    bool contains(std::string_view prefix) const { return lookup(prefix).has_value(); }

    // "prefix:local" -> Iri. Throws PrefixError (position 0) for unknown prefixes.
    Iri expand(std::string_view prefixed) const;

    // Shortest prefixed form of `iri`, or nullopt when no namespace matches
    // or the local part is not a valid prefixed-name local.
    std::optional<std::string> compact(const Iri& iri) const;

    const std::map<std::string, std::string, std::less<>>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::string, std::less<>> entries_;
};

// Parses "<iri>", "prefix:local" or a bare absolute IRI.
Iri parse_iri_ref(std::string_view text, const PrefixTable& prefixes);

} // namespace chemlink
