#include "chemlink/vocabulary.hpp"

#include "chemlink/error.hpp"

#include <cctype>

namespace chemlink::vocab {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

} // namespace

const std::vector<std::string>& dataset_vocabularies() {
    static const std::vector<std::string> names = {
        "compound",         "bindingdb_ligand",     "bindingdb_interaction", "bindingdb_protein",
        "drugbank_drug",    "drugbank_interaction", "drugbank_target",       "chemogenomics",
        "chembl",           "pubchem_bioassay",     "omim",                  "pharmgkb",
        "sider",            "kegg_pathway_protein", "reactome",              "matador",
        "ctd",              "qsar",                 "ttd_drug",              "ttd_target",
        "gi2uniprot",       "gene2uniprot",         "ppi",                   "hprd",
        "dip",              "prov",                 "literature",
    };
    return names;
}

Iri term(std::string_view dataset, std::string_view local) {
    return Iri(std::string(kVocabBase) + std::string(dataset) + "/" + std::string(local));
}

Iri same_as() { return Iri(std::string(kOwlSameAs)); }
Iri rdf_type() { return Iri(std::string(kRdfType)); }

Iri graph_iri(std::string_view name) { return Iri(std::string(kGraphBase) + percent_encode(name)); }

std::string graph_name(const Iri& graph) {
    if (starts_with(graph.str(), kGraphBase)) return percent_decode(graph.str().substr(kGraphBase.size()));
    return local_name(graph);
}

Iri prov_what() { return term("prov", "what"); }
Iri prov_when() { return term("prov", "when"); }
Iri prov_where() { return term("prov", "where"); }
Iri prov_why() { return term("prov", "why"); }
Iri prov_who() { return term("prov", "who"); }

Iri lit_mentions() { return term("literature", "mentions"); }
Iri lit_year() { return term("literature", "year"); }
Iri lit_title() { return term("literature", "title"); }
Iri document_iri(std::string_view pmid) { return Iri(std::string(kPubmedNs) + percent_encode(pmid)); }

int hub_rank(const Iri& iri) noexcept {
    const std::string& s = iri.str();
    if (starts_with(s, kCompoundNs) || starts_with(s, kUniprotNs)) return 0;
    if (starts_with(s, kDrugNs) || starts_with(s, kGeneNs)) return 1;
    if (starts_with(s, kGiNs)) return 2;
    return 3;
}

} // namespace chemlink::vocab

namespace chemlink {

PrefixTable PrefixTable::defaults() {
    PrefixTable t;
    t.declare("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
    t.declare("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
    t.declare("owl", "http://www.w3.org/2002/07/owl#");
    t.declare("xsd", "http://www.w3.org/2001/XMLSchema#");
    t.declare("cid", std::string(vocab::kCompoundNs));
    t.declare("uniprot", std::string(vocab::kUniprotNs));
    t.declare("gene", std::string(vocab::kGeneNs));
    t.declare("gi", std::string(vocab::kGiNs));
    t.declare("pdb", std::string(vocab::kPdbNs));
    t.declare("drug", std::string(vocab::kDrugNs));
    t.declare("disease", std::string(vocab::kDiseaseNs));
    t.declare("side_effect", std::string(vocab::kSideEffectNs));
    t.declare("pathway", std::string(vocab::kPathwayNs));
    t.declare("pubmed", std::string(vocab::kPubmedNs));
    t.declare("graph", std::string(vocab::kGraphBase));
    for (const auto& name : vocab::dataset_vocabularies())
        t.declare(name, std::string(vocab::kVocabBase) + name + "/");
    return t;
}

void PrefixTable::declare(std::string prefix, std::string ns) {
    entries_.insert_or_assign(std::move(prefix), std::move(ns));
}

std::optional<std::string> PrefixTable::lookup(std::string_view prefix) const {
    auto it = entries_.find(prefix);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

Iri PrefixTable::expand(std::string_view prefixed) const {
    auto colon = prefixed.find(':');
    if (colon == std::string_view::npos) throw BadIri(std::string(prefixed));
    auto ns = lookup(prefixed.substr(0, colon));
    if (!ns) throw PrefixError(std::string(prefixed.substr(0, colon)), 0);
    return Iri(*ns + std::string(prefixed.substr(colon + 1)));
}

namespace {

bool valid_pn_local(std::string_view local) {
    if (local.empty()) return false;
    for (unsigned char c : local)
        if (!std::isalnum(c) && c != '_' && c != '-' && c != '.') return false;
    return local.back() != '.';
}

} // namespace

std::optional<std::string> PrefixTable::compact(const Iri& iri) const {
    std::optional<std::string> best;
    for (const auto& [prefix, ns] : entries_) {
        const std::string& s = iri.str();
        if (s.size() <= ns.size() || s.compare(0, ns.size(), ns) != 0) continue;
        std::string_view local(s.data() + ns.size(), s.size() - ns.size());
        if (!valid_pn_local(local)) continue;
        std::string candidate = prefix + ":" + std::string(local);
        if (!best || candidate.size() < best->size()) best = std::move(candidate);
    }
    return best;
}

Iri parse_iri_ref(std::string_view text, const PrefixTable& prefixes) {
    if (text.size() >= 2 && text.front() == '<' && text.back() == '>')
        return Iri(std::string(text.substr(1, text.size() - 2)));
    auto colon = text.find(':');
    if (colon != std::string_view::npos && prefixes.contains(text.substr(0, colon)))
        return prefixes.expand(text);
    if (colon != std::string_view::npos && text.substr(colon).starts_with("://"))
        return Iri(std::string(text));
    if (colon != std::string_view::npos) throw PrefixError(std::string(text.substr(0, colon)), 0);
    throw BadIri(std::string(text));
}

} // namespace chemlink
