#pragma once

#include "chemlink/linkpath.hpp"
#include "chemlink/store.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fx {

using namespace chemlink;

std::filesystem::path fixture(const std::string& relative);

// Loads every *.manifest of a fixture directory, in file-name order.
Store load_fixture_dir(const std::string& relative);
void load_inline(Store& store, std::string_view manifest, std::string_view tsv);

linkpath::SchemaGraph core_schema();

// The side effect to pathway listing, node for node, as printed.
std::vector<linkpath::LinkPath> reference_listing();

extern const char* const kGefitinibQuery;
extern const char* const kMalariaQuery;
extern const char* const kAdverseQuery;

Iri cid(std::string_view n);
Iri uniprot(std::string_view acc);
Iri pathway(std::string_view id);
Iri side_effect(std::string_view name);
Iri drug(std::string_view dbid);

// Writes sider / drugbank / kegg records in the layout the loaders emit.
class AssociationBuilder {
public:
    explicit AssociationBuilder(Store& store);

    void causes(std::string_view compound_cid, std::string_view side_effect_name);
    void drug(std::string_view dbid, std::string_view compound_cid);
    void targets(std::string_view dbid, std::string_view uniprot_acc);
    void member(std::string_view uniprot_acc, std::string_view pathway_id);

private:
    Iri record(std::string_view graph);

    Store& store_;
    std::size_t next_ = 0;
};

// Disease / gene / chemical sources with the gene symbols mapped through
// gene2uniprot and GI numbers through gi2uniprot.
Store malaria_store();

} // namespace fx
