#include "chemlink/analytics.hpp"

#include "chemlink/error.hpp"
#include "chemlink/sparql/evaluator.hpp"
#include "chemlink/vocabulary.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

namespace chemlink::analytics {

namespace {

const std::set<Iri>& empty_set() {
    static const std::set<Iri> none;
    return none;
}

const std::set<Iri>& lookup(const std::map<Iri, std::set<Iri>>& m, const Iri& key) {
    auto it = m.find(key);
    return it == m.end() ? empty_set() : it->second;
}

// subject -> resolved IRI objects of `predicate`.
std::map<Iri, std::set<Iri>> objects_by_subject(const Store& store, const Iri& predicate) {
    std::map<Iri, std::set<Iri>> out;
    for (const auto& t : store.match({std::nullopt, predicate, std::nullopt, std::nullopt}))
        if (const auto* o = std::get_if<Iri>(&t.object)) out[t.subject].insert(store.resolve_entity(*o));
    return out;
}

} // namespace

AssociationIndex::AssociationIndex(const Store& store) : store_(store) {
    auto se_of = objects_by_subject(store, vocab::term("sider", "side_effect_id"));
    auto cid_of = objects_by_subject(store, vocab::term("sider", "cid"));
    for (const auto& [rec, ses] : se_of) {
        auto it = cid_of.find(rec);
        if (it == cid_of.end()) continue;
        for (const auto& se : ses) se_drugs_[se].insert(it->second.begin(), it->second.end());
    }

    // drug record (resolved) -> compounds
    std::map<Iri, std::set<Iri>> compounds_of;
    for (const auto& [rec, cids] : objects_by_subject(store, vocab::term("drugbank_drug", "CID")))
        compounds_of[store.resolve_entity(rec)].insert(cids.begin(), cids.end());
    auto drug_of = objects_by_subject(store, vocab::term("drugbank_interaction", "DBID"));
    auto target_of = objects_by_subject(store, vocab::term("drugbank_interaction", "SwissProt_ID"));
    for (const auto& [rec, drugs] : drug_of) {
        auto t = target_of.find(rec);
        if (t == target_of.end()) continue;
        for (const auto& d : drugs) {
            auto c = compounds_of.find(d);
            if (c == compounds_of.end()) continue;
            for (const auto& compound : c->second) drug_targets_[compound].insert(t->second.begin(), t->second.end());
        }
    }

    auto gene_of = objects_by_subject(store, vocab::term("kegg_pathway_protein", "Uniprot"));
    auto pathway_of = objects_by_subject(store, vocab::term("kegg_pathway_protein", "PathwayID"));
    for (const auto& [rec, genes] : gene_of) {
        auto p = pathway_of.find(rec);
        if (p == pathway_of.end()) continue;
        for (const auto& g : genes) gene_pathways_[g].insert(p->second.begin(), p->second.end());
    }
}

const std::set<Iri>& AssociationIndex::drugs_causing(const Iri& side_effect) const {
    return lookup(se_drugs_, store_.resolve_entity(side_effect));
}
const std::set<Iri>& AssociationIndex::targets_of(const Iri& drug) const {
    return lookup(drug_targets_, store_.resolve_entity(drug));
}
const std::set<Iri>& AssociationIndex::pathways_of(const Iri& gene) const {
    return lookup(gene_pathways_, store_.resolve_entity(gene));
}

namespace {

std::map<Iri, std::size_t> drugs_per_gene(const AssociationIndex& idx, const Iri& side_effect) {
    std::map<Iri, std::size_t> counts;
    for (const auto& d : idx.drugs_causing(side_effect))
        for (const auto& g : idx.targets_of(d)) ++counts[g];
    return counts;
}

} // namespace

EfficientGeneSet efficient_genes(const Iri& side_effect, const Store& store) {
    AssociationIndex idx(store);
    EfficientGeneSet out{side_effect, {}};
    for (const auto& [gene, n] : drugs_per_gene(idx, side_effect))
        if (n >= kMinDrugsPerGene) out.genes.push_back({gene, n});
    return out;
}

std::vector<PathwayScore> rank_pathways_for_side_effect(const Iri& side_effect, std::size_t k, const Store& store) {
    AssociationIndex idx(store);
    auto per_gene = drugs_per_gene(idx, side_effect);
    std::map<Iri, PathwayScore> scores;
    for (const auto& [gene, drugs] : per_gene) {
        for (const auto& p : idx.pathways_of(gene)) {
            auto& s = scores.try_emplace(p, PathwayScore{p, 0, 0}).first->second;
            s.association_path_count += drugs;
            if (drugs >= kMinDrugsPerGene) ++s.efficient_gene_count;
        }
    }
    std::vector<PathwayScore> out;
    for (auto& [_, s] : scores)
        if (s.efficient_gene_count >= kMinGenesPerPathway) out.push_back(std::move(s));
    std::sort(out.begin(), out.end(), [](const PathwayScore& a, const PathwayScore& b) {
        if (a.association_path_count != b.association_path_count)
            return a.association_path_count > b.association_path_count;
        return a.pathway < b.pathway;
    });
    if (out.size() > k) out.erase(out.begin() + static_cast<std::ptrdiff_t>(k), out.end());
    return out;
}

std::string adverse_reaction_query(std::string_view side_effect_name, std::size_t k) {
    std::ostringstream q;
    q << "SELECT ?pathway_id (count(?pathway_id) as ?count) WHERE {\n"
      << "  ?sider2compound sider:side_effect ?side_effect . FILTER\n"
      << "  regex(?side_effect,\"" << escape_literal(side_effect_name) << "\",\"i\") .\n"
      << "  ?sider2compound sider:cid ?compound .\n"
      << "  ?drug drugbank_drug:CID ?compound .\n"
      << "  ?drug2target drugbank_interaction:DBID ?drug .\n"
      << "  ?drug2target drugbank_interaction:SwissProt_ID ?uniprot .\n"
      << "  ?kegg_pathway kegg_pathway_protein:Uniprot ?uniprot .\n"
      << "  ?kegg_pathway kegg_pathway_protein:PathwayID ?pathway_id .\n"
      << "} GROUP BY ?pathway_id ORDER BY DESC(?count) LIMIT " << k << "\n";
    return q.str();
}

const SourceCatalog& SourceCatalog::defaults() {
    static const SourceCatalog catalog{
        {
            {"omim", "?r omim:gene ?gene . ?r omim:Disorder_name ?disease ."},
            {"pharmgkb", "?r pharmgkb:gene ?gene . ?r pharmgkb:disease_name ?disease ."},
        },
        {
            {"chemogenomics", "?r chemogenomics:CID ?compound . ?r chemogenomics:GENE ?gene ."},
            {"bindingdb", "?l bindingdb_ligand:cid ?compound . ?t bindingdb_interaction:monomerid ?l . "
                          "?t bindingdb_interaction:uniprot ?gene ."},
            {"drugbank", "?d drugbank_drug:CID ?compound . ?t drugbank_interaction:DBID ?d . "
                         "?t drugbank_interaction:SwissProt_ID ?gene ."},
            {"chembl", "?r chembl:cid ?compound . ?r chembl:uniprot ?gene ."},
            {"pubchem_bioassay", "?r pubchem_bioassay:cid ?compound . ?r pubchem_bioassay:gi ?gene ."},
        },
    };
    return catalog;
}

std::set<ChemGenePair> disease_chemicals(std::string_view disease_pattern, const std::vector<std::string>& gene_sources,
                                         const std::vector<std::string>& chem_sources, const Store& store,
                                         const SourceCatalog& catalog) {
    auto fragment = [](const std::map<std::string, std::string>& m, const std::string& name) -> const std::string& {
        auto it = m.find(name);
        if (it == m.end()) throw SourceError(name);
        return it->second;
    };
    std::vector<const std::string*> gene_q, chem_q;
    for (const auto& s : gene_sources) gene_q.push_back(&fragment(catalog.gene_sources, s));
    for (const auto& s : chem_sources) chem_q.push_back(&fragment(catalog.chem_sources, s));

    std::regex re(std::string(disease_pattern), std::regex::ECMAScript | std::regex::icase);
    auto resolved = [&](const sparql::Cell& c) -> std::optional<Iri> {
        if (!c || !is_iri(*c)) return std::nullopt;
        return store.resolve_entity(std::get<Iri>(*c));
    };

    std::set<Iri> genes;
    for (const auto* q : gene_q) {
        auto t = sparql::run_query("SELECT ?gene ?disease WHERE { " + *q + " }", store);
        for (const auto& row : t.rows) {
            if (!row[1] || !is_literal(*row[1])) continue;
            if (!std::regex_search(std::get<Literal>(*row[1]).lexical(), re)) continue;
            if (auto g = resolved(row[0])) genes.insert(*g);
        }
    }
    std::set<ChemGenePair> out;
    if (genes.empty()) return out;
    for (const auto* q : chem_q) {
        auto t = sparql::run_query("SELECT ?compound ?gene WHERE { " + *q + " }", store);
        for (const auto& row : t.rows) {
            auto c = resolved(row[0]);
            auto g = resolved(row[1]);
            if (c && g && genes.count(*g)) out.emplace(*c, *g);
        }
    }
    return out;
}

namespace {

std::string key_text(const Store& store, const Term& t) {
    if (const auto* iri = std::get_if<Iri>(&t)) return store.resolve_entity(*iri).str();
    return std::get<Literal>(t).lexical();
}

} // namespace

KeySet value_keys(const Store& store, const Iri& graph, const Iri& predicate) {
    KeySet out;
    for (const auto& t : store.match({std::nullopt, predicate, std::nullopt, graph})) out.insert(key_text(store, t.object));
    return out;
}

KeySet pair_keys(const Store& store, const Iri& graph, const Iri& left, const Iri& right, bool unordered) {
    std::map<Iri, std::vector<std::string>> lefts;
    for (const auto& t : store.match({std::nullopt, left, std::nullopt, graph}))
        lefts[t.subject].push_back(key_text(store, t.object));
    KeySet out;
    for (const auto& t : store.match({std::nullopt, right, std::nullopt, graph})) {
        auto it = lefts.find(t.subject);
        if (it == lefts.end()) continue;
        std::string r = key_text(store, t.object);
        for (const auto& l : it->second) {
            if (unordered && r < l) out.insert(r + '\t' + l);
            else out.insert(l + '\t' + r);
        }
    }
    return out;
}

double percent_of(std::size_t part, std::size_t whole) {
    if (whole == 0) return 0;
    return std::round(1000.0 * static_cast<double>(part) / static_cast<double>(whole)) / 10.0;
}

CoverageReport coverage_report(const std::vector<CoverageSource>& sources) {
    CoverageReport r;
    KeySet all;
    for (const auto& s : sources) all.insert(s.keys.begin(), s.keys.end());
    r.union_count = all.size();
    if (!sources.empty()) {
        for (const auto& k : sources.front().keys) {
            bool everywhere = std::all_of(sources.begin() + 1, sources.end(),
                                          [&](const CoverageSource& s) { return s.keys.count(k) != 0; });
            if (everywhere) ++r.intersection_count;
        }
    }
    for (const auto& s : sources) r.per_source.push_back({s.name, s.keys.size(), percent_of(s.keys.size(), r.union_count)});
    return r;
}

namespace {

std::string one_decimal(double v) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(1);
    out << v;
    return out.str();
}

} // namespace

std::string CoverageReport::to_json() const {
    nlohmann::json src = nlohmann::json::array();
    for (const auto& s : per_source) src.push_back({{"name", s.name}, {"count", s.count}, {"percentage", s.percentage}});
    return nlohmann::json{{"sources", src}, {"union", union_count}, {"intersection", intersection_count}}.dump();
}

std::string CoverageReport::to_text() const {
    std::string out = "Data source\t# of records\tpercentage\n";
    for (const auto& s : per_source)
        out += s.name + "\t" + std::to_string(s.count) + "\t" + one_decimal(s.percentage) + "%\n";
    out += "ALL\t" + std::to_string(union_count) + "\t\n";
    return out;
}

} // namespace chemlink::analytics
