#include "fixtures.hpp"

#include "chemlink/error.hpp"
#include "chemlink/facets.hpp"
#include "chemlink/ingest.hpp"
#include "chemlink/linkpath.hpp"
#include "chemlink/litxval.hpp"
#include "chemlink/network.hpp"
#include "chemlink/vocabulary.hpp"

#include <doctest.h>
#include <json.hpp>

#include <map>
#include <random>
#include <set>

using namespace chemlink;
using namespace chemlink::portal;

namespace {

Store approvals() {
    Store s;
    ingest::load_manifest_file(s, fx::fixture("drugs/drug_approvals.manifest"));
    return s;
}

Iri approvals_graph() { return vocab::graph_iri("drug_approvals"); }
Iri year() { return vocab::term("drugbank_drug", "approval_year"); }
Iri category() { return vocab::term("drugbank_drug", "category"); }

std::map<std::string, std::size_t> buckets(const FacetResult& r) {
    std::map<std::string, std::size_t> out;
    for (const auto& b : r.buckets) out[display_value(b.value)] = b.count;
    return out;
}

bool connected(const NetworkDoc& doc, const std::string& a, const std::string& b) {
    std::map<std::string, std::set<std::string>> adj;
    for (const auto& e : doc.edges) {
        adj[e.source].insert(e.target);
        adj[e.target].insert(e.source);
    }
    std::set<std::string> seen{a};
    std::vector<std::string> todo{a};
    while (!todo.empty()) {
        auto n = todo.back();
        todo.pop_back();
        for (const auto& m : adj[n])
            if (seen.insert(m).second) todo.push_back(m);
    }
    return seen.count(b) == 1;
}

std::size_t degree(const NetworkDoc& doc, const std::string& id) {
    std::set<std::string> nbrs;
    for (const auto& e : doc.edges) {
        if (e.source == id) nbrs.insert(e.target);
        if (e.target == id) nbrs.insert(e.source);
    }
    return nbrs.size();
}

linkpath::CombinedResult crossval_lpg(const Store& s, const linkpath::SchemaGraph& g) {
    return linkpath::execute_linkpaths(g, g.class_sources("Side effect"), g.class_sources("Pathway"), s);
}

} // namespace

TEST_CASE("facets without filters partition the entities having the field") {
    auto s = approvals();
    auto r = facet_counts(s, approvals_graph(), year(), {});
    CHECK(r.total_entities == 9);
    CHECK(buckets(r) == std::map<std::string, std::size_t>{{"1976", 1}, {"1990", 1}, {"1995", 1}, {"2001", 4}, {"2003", 1}});
    std::size_t sum = 0;
    for (const auto& b : r.buckets) sum += b.count;
    CHECK(sum == 8);
    CHECK(r.entities.size() == 9);
}

TEST_CASE("approved in 2001 as anti-allergic") {
    auto s = approvals();
    auto by_year = facet_counts(s, approvals_graph(), category(), {{year(), "2001"}});
    CHECK(by_year.entities.size() == 4);
    CHECK(buckets(by_year)["anti-allergic"] == 2);
    auto both = facet_counts(s, approvals_graph(), vocab::term("drugbank_drug", "name"),
                             {{year(), "2001"}, {category(), "anti-allergic"}});
    CHECK(buckets(both) == std::map<std::string, std::size_t>{{"Desloratadine", 1}, {"Olopatadine", 1}});
    auto nothing = facet_counts(s, approvals_graph(), year(), {{category(), "no such category"}});
    CHECK(nothing.buckets.empty());
    CHECK(nothing.entities.empty());
}

TEST_CASE("facets on an unknown graph") {
    auto s = approvals();
    CHECK_THROWS_AS(facet_counts(s, vocab::graph_iri("nope"), year(), {}), GraphUnknown);
}

TEST_CASE("property: drill-down reproduces every bucket count") {
    std::mt19937 rng(64);
    std::uniform_int_distribution<int> v(0, 4), present(0, 3), multi(0, 5);
    for (int round = 0; round < 30; ++round) {
        Store s;
        Iri g("http://ex.org/g");
        s.register_graph({g, DomainTag::Chemical, {"a", "b", "c", "d", "e"}});
        Iri f1("http://ex.org/f1"), f2("http://ex.org/f2");
        for (int e = 0; e < 40; ++e) {
            Iri ent("http://ex.org/e" + std::to_string(e));
            s.insert({ent, Iri("http://ex.org/name"), Literal::string("e" + std::to_string(e)), g});
            if (present(rng)) s.insert({ent, f1, Literal::integer(v(rng)), g});
            if (multi(rng) == 0) s.insert({ent, f1, Literal::integer(v(rng)), g});
            if (present(rng)) s.insert({ent, f2, Literal::string("c" + std::to_string(v(rng))), g});
        }
        std::vector<FacetFilter> base;
        if (round % 2) base.push_back({f2, "c1"});
        auto r = facet_counts(s, g, f1, base);
        std::size_t sum = 0;
        for (const auto& b : r.buckets) {
            CHECK(b.count >= 1);
            sum += b.count;
            auto filters = base;
            filters.push_back({f1, display_value(b.value)});
            auto drilled = facet_counts(s, g, f1, filters);
            CHECK(drilled.entities.size() == b.count);
        }
        CHECK(r.total_entities == 40);
        CHECK(r.entities.size() <= r.total_entities);
        (void)sum;
    }
}

TEST_CASE("facet json paginates entities") {
    auto s = approvals();
    auto r = facet_counts(s, approvals_graph(), year(), {});
    auto j = nlohmann::json::parse(r.to_json(3, 2));
    CHECK(j["entities"].size() == 3);
    CHECK(j["matching"] == 9);
    CHECK(j["entities"][0] == r.entities[2].str());
    CHECK(j["buckets"].size() == 5);
}

TEST_CASE("entity kinds by namespace") {
    CHECK(entity_kind(fx::uniprot("P00533")) == "protein");
    CHECK(entity_kind(fx::pathway("hsa04020")) == "pathway");
    CHECK(entity_kind(fx::side_effect("necrosis")) == "side_effect");
    CHECK(entity_kind(fx::drug("DB00317")) == "drug");
    CHECK(entity_kind(fx::cid("2095")) == "compound");
    CHECK(entity_kind(vocab::document_iri("1")) == "document");
}

TEST_CASE("empty result exports an empty network") {
    auto g = fx::core_schema();
    Store empty;
    auto doc = network_export(crossval_lpg(empty, g), g, empty);
    CHECK(doc.nodes.empty());
    CHECK(doc.edges.empty());
    CHECK(doc.closed());
}

TEST_CASE("doxazosin to necrosis network") {
    auto g = fx::core_schema();
    auto s = fx::load_fixture_dir("crossval");
    std::vector<litxval::Dictionary> dicts{
        litxval::read_dictionary(litxval::EntityKind::Compound, fx::fixture("crossval/dict_compound.tsv")),
        litxval::read_dictionary(litxval::EntityKind::SideEffect, fx::fixture("crossval/dict_side_effect.tsv"))};
    litxval::CorpusIndex index(litxval::read_corpus(fx::fixture("crossval/corpus.jsonl")), dicts);
    auto report = litxval::cross_validate(fx::cid("2095"), fx::side_effect("necrosis"), index, s);
    auto doc = network_export(report);
    CHECK(doc.closed());
    CHECK(connected(doc, fx::cid("2095").str(), fx::side_effect("necrosis").str()));

    auto lpg = network_export(crossval_lpg(s, g), g, s, fx::side_effect("necrosis"));
    CHECK(lpg.closed());
    CHECK(connected(lpg, fx::side_effect("necrosis").str(), fx::cid("2095").str()));
    CHECK(connected(lpg, fx::cid("2095").str(), fx::pathway("hsa04020").str()));
    for (const auto& n : lpg.nodes) CHECK(n.id != fx::side_effect("hypotension").str());
}

TEST_CASE("shared protein node appears once") {
    auto g = fx::core_schema();
    auto s = fx::load_fixture_dir("crossval");
    auto doc = network_export(crossval_lpg(s, g), g, s);
    CHECK(doc.closed());
    std::string p = fx::uniprot("P35348").str();
    std::size_t copies = 0;
    for (const auto& n : doc.nodes) copies += n.id == p;
    CHECK(copies == 1);
    CHECK(degree(doc, p) >= 2);
    std::set<std::string> attributions;
    for (const auto& e : doc.edges)
        if (e.source == p || e.target == p) attributions.insert(e.paths.begin(), e.paths.end());
    CHECK(attributions.count("[sider, compound_hub, matador, uniprot_hub, kegg]") == 1);
    CHECK(attributions.count("[sider, compound_hub, drugbank_drug, drugbank_target, uniprot_hub, kegg]") == 1);
    auto j = nlohmann::json::parse(doc.to_json());
    CHECK(j["nodes"].size() == doc.nodes.size());
    CHECK(network_export(crossval_lpg(s, g), g, s).to_json() == doc.to_json());
}
