#include "fixtures.hpp"

#include "chemlink/ingest.hpp"
#include "chemlink/store_io.hpp"
#include "chemlink/vocabulary.hpp"

#include <algorithm>

namespace fx {

std::filesystem::path fixture(const std::string& relative) { return std::filesystem::path(CHEMLINK_FIXTURE_DIR) / relative; }

Store load_fixture_dir(const std::string& relative) {
    std::vector<std::filesystem::path> manifests;
    for (const auto& e : std::filesystem::directory_iterator(fixture(relative)))
        if (e.path().extension() == ".manifest") manifests.push_back(e.path());
    std::sort(manifests.begin(), manifests.end());
    Store store;
    for (const auto& m : manifests) ingest::load_manifest_file(store, m);
    return store;
}

void load_inline(Store& store, std::string_view manifest, std::string_view tsv) {
    ingest::load_dataset(store, ingest::parse_manifest(manifest), ingest::parse_tsv(tsv));
}

linkpath::SchemaGraph core_schema() { return linkpath::read_schema_graph(fixture("schema.txt")); }

std::vector<linkpath::LinkPath> reference_listing() {
    std::vector<linkpath::LinkPath> out;
    for (const char* end : {"kegg", "reactome"}) {
        out.push_back({"sider", "compound_hub", "bindingdb_ligand", "bindingdb_protein", "uniprot_hub", end});
        out.push_back({"sider", "compound_hub", "ctd", "gene", "gene2uniprot", "uniprot_hub", end});
        out.push_back({"sider", "compound_hub", "drugbank_drug", "drugbank_target", "uniprot_hub", end});
        out.push_back({"sider", "compound_hub", "matador", "uniprot_hub", end});
        out.push_back({"sider", "compound_hub", "pubchem_bioassay", "gi", "gi2uniprot", "uniprot_hub", end});
        out.push_back({"sider", "compound_hub", "qsar", "gene", "gene2uniprot", "uniprot_hub", end});
        out.push_back({"sider", "compound_hub", "ttd_drug", "ttd_target", "uniprot_hub", end});
    }
    return out;
}

const char* const kGefitinibQuery = R"(SELECT ?uniprot WHERE {
  {?compound compound:CID ?compound_cid . FILTER
  (?compound_cid= 123631) .
  ?chemical bindingdb_ligand:cid ?compound .
  ?target bindingdb_interaction:monomerid ?chemical.
  ?target bindingdb_interaction:uniprot ?uniprot.
  ?target bindingdb_interaction:ic50_value ?ic50 . FILTER
  (?ic50<10000) . }
  UNION {?compound compound:CID ?compound_cid . FILTER
  (?compound_cid= 123631) .
  ?drug drugbank_drug:CID ?compound .
  ?drugtarget drugbank_interaction:DBID ?drug.
?drugtarget drugbank_interaction:human ?human . FILTER
(?human="1") .
?drugtarget drugbank_interaction:SwissProt_ID ?uniprot. }}
GROUP BY ?uniprot
)";

const char* const kMalariaQuery = R"(SELECT * WHERE {
  ?chemogenomics chemogenomics:CID ?compound_cid .
  ?chemogenomics chemogenomics:GENE ?gene_symbol .
  ?omim omim:gene ?gene_symbol .
  ?omim omim:Disorder_name ?disease . FILTER
  regex(?disease,"Malaria","i") .
}
)";

const char* const kAdverseQuery = R"(SELECT ?pathway_id (count(?pathway_id) as ?count) WHERE {
  ?sider2compound sider:side_effect ?side_effect . FILTER
  regex(?side_effect,"hepatomegaly","i") .
  ?sider2compound sider:cid ?compound .
?drug drugbank_drug:CID ?compound .
?drug2target drugbank_interaction:DBID ?drug .
?drug2target drugbank_interaction:SwissProt_ID ?uniprot .
?kegg_pathway kegg_pathway_protein:Uniprot ?uniprot .
?kegg_pathway kegg_pathway_protein:PathwayID ?pathway_id .
} GROUP BY ?pathway_id ORDER BY ?count
)";

Iri cid(std::string_view n) { return Iri(std::string(vocab::kCompoundNs) + std::string(n)); }
Iri uniprot(std::string_view acc) { return Iri(std::string(vocab::kUniprotNs) + std::string(acc)); }
Iri pathway(std::string_view id) { return Iri(std::string(vocab::kPathwayNs) + std::string(id)); }
Iri side_effect(std::string_view name) { return Iri(std::string(vocab::kSideEffectNs) + std::string(name)); }
Iri drug(std::string_view dbid) { return Iri(std::string(vocab::kDrugNs) + std::string(dbid)); }

namespace {

void ensure_graph(Store& store, std::string_view name, DomainTag domain) {
    Iri g = vocab::graph_iri(name);
    if (!store.has_graph(g)) store.register_graph({g, domain, {"fixture", "2009", "test", "test", "test"}});
}

} // namespace

AssociationBuilder::AssociationBuilder(Store& store) : store_(store) {
    ensure_graph(store, "sider", DomainTag::Phenotype);
    ensure_graph(store, "drugbank_drug", DomainTag::Chemical);
    ensure_graph(store, "drugbank_interaction", DomainTag::Chemogenomics);
    ensure_graph(store, "kegg_pathway_protein", DomainTag::Systems);
}

Iri AssociationBuilder::record(std::string_view graph) {
    return Iri(std::string(vocab::kRecordBase) + std::string(graph) + "/r" + std::to_string(next_++));
}

void AssociationBuilder::causes(std::string_view compound_cid, std::string_view side_effect_name) {
    Iri g = vocab::graph_iri("sider");
    Iri r = record("sider");
    store_.insert({r, vocab::term("sider", "cid"), cid(compound_cid), g});
    store_.insert({r, vocab::term("sider", "side_effect"), Literal::string(std::string(side_effect_name)), g});
    store_.insert({r, vocab::term("sider", "side_effect_id"), side_effect(side_effect_name), g});
}

void AssociationBuilder::drug(std::string_view dbid, std::string_view compound_cid) {
    store_.insert({fx::drug(dbid), vocab::term("drugbank_drug", "CID"), cid(compound_cid), vocab::graph_iri("drugbank_drug")});
}

void AssociationBuilder::targets(std::string_view dbid, std::string_view uniprot_acc) {
    Iri g = vocab::graph_iri("drugbank_interaction");
    Iri r = record("drugbank_interaction");
    store_.insert({r, vocab::term("drugbank_interaction", "DBID"), fx::drug(dbid), g});
    store_.insert({r, vocab::term("drugbank_interaction", "SwissProt_ID"), uniprot(uniprot_acc), g});
}

void AssociationBuilder::member(std::string_view uniprot_acc, std::string_view pathway_id) {
    Iri g = vocab::graph_iri("kegg_pathway_protein");
    Iri r = record("kegg_pathway_protein");
    store_.insert({r, vocab::term("kegg_pathway_protein", "Uniprot"), uniprot(uniprot_acc), g});
    store_.insert({r, vocab::term("kegg_pathway_protein", "PathwayID"), pathway(pathway_id), g});
}

namespace {

std::string manifest(std::string_view graph, std::string_view domain, std::string_view columns, bool normalize = true) {
    std::string out;
    out += "graph = " + std::string(graph) + "\n";
    out += "domain = " + std::string(domain) + "\n";
    out += "what = " + std::string(graph) + " fixture\nwhen = 2009\nwhere = fixture\nwhy = test\nwho = test\n";
    if (!normalize) out += "normalize = false\n";
    out += "[columns]\n";
    out += columns;
    return out;
}

} // namespace

Store malaria_store() {
    Store s;
    load_inline(s,
                manifest("gene2uniprot", "biological",
                         "id - subject-id record\ngene gene2uniprot:gene object-id gene-symbol\n"
                         "uniprot gene2uniprot:uniprot object-id uniprot\n",
                         false),
                "id\tgene\tuniprot\n1\tGYPA\tP02724\n2\tHBB\tP68871\n3\tG6PD\tP11413\n4\tCD36\tP16671\n"
                "5\tEGFR\tP00533\n6\tNOS2\tP35228\n");
    load_inline(s,
                manifest("gi2uniprot", "biological",
                         "id - subject-id record\ngi gi2uniprot:gi object-id gi\n"
                         "uniprot gi2uniprot:uniprot object-id uniprot\n",
                         false),
                "id\tgi\tuniprot\n1\t4504391\tP68871\n2\t4503715\tP11413\n3\t29725609\tP00533\n");
    load_inline(s,
                manifest("omim", "phenotype",
                         "id - subject-id record\ngene omim:gene object-id gene-symbol\n"
                         "disorder omim:Disorder_name literal string\n"),
                "id\tgene\tdisorder\n1\tGYPA\tMalaria, resistance to\n2\tHBB\tMalaria, susceptibility to\n"
                "3\tEGFR\tLung cancer\n4\tG6PD\tHemolytic anemia\n");
    load_inline(s,
                manifest("pharmgkb", "phenotype",
                         "id - subject-id record\ngene pharmgkb:gene object-id gene-symbol\n"
                         "disease pharmgkb:disease_name literal string\n"),
                "id\tgene\tdisease\n1\tG6PD\tmalaria\n2\tCD36\tCerebral MALARIA\n3\tEGFR\tColorectal cancer\n");
    load_inline(s,
                manifest("chemogenomics", "chemogenomics",
                         "id - subject-id record\ncid chemogenomics:CID object-id cid\n"
                         "gene chemogenomics:GENE object-id gene-symbol\n"),
                "id\tcid\tgene\n1\t2719\tHBB\n2\t2719\tGYPA\n3\t3652\tG6PD\n4\t123631\tEGFR\n5\t9571\tNOS2\n");
    load_inline(s,
                manifest("bindingdb_ligand", "chemical", "monomerid - subject-id record\ncid bindingdb_ligand:cid object-id cid\n"),
                "monomerid\tcid\nM1\t2719\nM2\t5353\nM3\t123631\n");
    load_inline(s,
                manifest("bindingdb_interaction", "chemogenomics",
                         "id - subject-id record\nmonomerid bindingdb_interaction:monomerid object-id record:bindingdb_ligand\n"
                         "uniprot bindingdb_interaction:uniprot object-id uniprot\n"),
                "id\tmonomerid\tuniprot\n1\tM1\tP68871\n2\tM2\tP16671\n3\tM3\tP00533\n");
    load_inline(s, manifest("drugbank_drug", "chemical", "dbid - subject-id drug-local\ncid drugbank_drug:CID object-id cid\n"),
                "dbid\tcid\nDB00608\t2719\nDB01611\t3652\nDB00317\t123631\n");
    load_inline(s,
                manifest("drugbank_interaction", "chemogenomics",
                         "id - subject-id record\nDBID drugbank_interaction:DBID object-id drug-local\n"
                         "SwissProt_ID drugbank_interaction:SwissProt_ID object-id uniprot\n"),
                "id\tDBID\tSwissProt_ID\n1\tDB00608\tP68871\n2\tDB01611\tP11413\n3\tDB00317\tP00533\n");
    load_inline(s,
                manifest("chembl", "chemogenomics",
                         "id - subject-id record\ncid chembl:cid object-id cid\nuniprot chembl:uniprot object-id uniprot\n"),
                "id\tcid\tuniprot\n1\t6918\tP16671\n2\t2719\tP02724\n");
    load_inline(s,
                manifest("pubchem_bioassay", "chemogenomics",
                         "id - subject-id record\ncid pubchem_bioassay:cid object-id cid\ngi pubchem_bioassay:gi object-id gi\n"),
                "id\tcid\tgi\n1\t4091\t4504391\n2\t3652\t4503715\n3\t5353\t29725609\n");
    return s;
}

} // namespace fx
