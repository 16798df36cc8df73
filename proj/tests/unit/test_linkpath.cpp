#include "fixtures.hpp"
#include "path_oracle.hpp"

#include "chemlink/error.hpp"
#include "chemlink/ingest.hpp"
#include "chemlink/linkpath.hpp"
#include "chemlink/sparql/parser.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace chemlink;
using namespace chemlink::linkpath;

namespace {

ClassSourceSet cls(std::string name, std::vector<std::string> sources) { return {std::move(name), std::move(sources)}; }

SchemaGraph two_nodes() {
    return build_schema_graph("prefix ex = http://ex.org/\nnode a\nnode b\nedge a b ex:p -\nclass A = a\nclass B = b\n");
}

bool edge_consistent(const SchemaGraph& g, const LinkPath& p) {
    std::set<std::string> seen(p.begin(), p.end());
    if (seen.size() != p.size() || p.size() < 2) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.edge(p[i], p[i + 1])) return false;
    return true;
}

Store crossval_subset(const std::vector<std::string>& manifests) {
    Store s;
    for (const auto& m : manifests) ingest::load_manifest_file(s, fx::fixture("crossval/" + m + ".manifest"));
    return s;
}

using Pair = std::pair<std::string, std::string>;

std::set<Pair> pairs_of(const CombinedResult& r) {
    std::set<Pair> out;
    for (const auto& row : r.rows) out.insert({display_value(row.from), display_value(row.to)});
    return out;
}

} // namespace

TEST_CASE("two-node graph") {
    auto g = two_nodes();
    CHECK(g.node_names() == std::vector<std::string>{"a", "b"});
    CHECK(g.edge_count() == 1);
    auto paths = enumerate_paths(g, g.class_sources("A"), g.class_sources("B"));
    CHECK(paths == std::vector<LinkPath>{{"a", "b"}});
    CHECK(format_path(paths[0]) == "[a, b]");
    CHECK(nlohmann::json::parse(paths_to_json(paths)) == nlohmann::json::parse(R"([["a","b"]])"));
}

TEST_CASE("descriptor errors") {
    CHECK_THROWS_AS(build_schema_graph("node a\nedge a zz - -\n"), SchemaError);
    CHECK_THROWS_AS(build_schema_graph("node a\nedge a a sider:cid -\n"), SchemaError);
    CHECK_THROWS_AS(build_schema_graph("node a\nnode b\nedge a b - -\n"), SchemaError);
    CHECK_THROWS_AS(build_schema_graph("node a\nclass X = zz\n"), SchemaError);
    CHECK_THROWS_AS(build_schema_graph("bogus line\n"), SchemaError);
    auto g = two_nodes();
    CHECK_THROWS_AS(g.class_sources("Nope"), ClassError);
    CHECK_THROWS_AS(g.add_class(cls("Empty", {})), ClassError);
    CHECK_THROWS_AS(enumerate_paths(g, cls("X", {}), g.class_sources("B")), ClassError);
    CHECK_THROWS_AS(enumerate_paths(g, cls("X", {"zz"}), g.class_sources("B")), SchemaError);
}

TEST_CASE("duplicate edge declaration keeps one edge") {
    auto g = build_schema_graph("prefix ex = http://ex.org/\nnode a\nnode b\nedge a b ex:p -\nedge b a - ex:q\n");
    CHECK(g.edge_count() == 1);
    CHECK(g.edge("b", "a")->pred_a->str() == "http://ex.org/p");
}

TEST_CASE("core schema: sider hangs off compound_hub") {
    auto g = fx::core_schema();
    CHECK(g.neighbors("sider") == std::vector<std::string>{"compound_hub"});
    CHECK(g.node_names().size() == 19);
}

TEST_CASE("core schema: reference listing") {
    auto g = fx::core_schema();
    auto paths = enumerate_paths(g, g.class_sources("Side effect"), g.class_sources("Pathway"));
    REQUIRE(paths.size() == 14);
    auto listing = fx::reference_listing();
    CHECK(std::set<LinkPath>(paths.begin(), paths.end()) == std::set<LinkPath>(listing.begin(), listing.end()));
    CHECK(std::count_if(paths.begin(), paths.end(), [](const LinkPath& p) { return p.back() == "kegg"; }) == 7);
    for (std::size_t i = 1; i < paths.size(); ++i) {
        bool ordered = paths[i - 1].size() < paths[i].size() ||
                       (paths[i - 1].size() == paths[i].size() && paths[i - 1] < paths[i]);
        CHECK(ordered);
    }
    CHECK(enumerate_paths(g, g.class_sources("Pathway"), g.class_sources("Pathway")).empty());
    CHECK(enumerate_paths(g, g.class_sources("Side effect"), g.class_sources("Pathway"), 3).empty());
    CHECK(enumerate_paths(g, g.class_sources("Side effect"), g.class_sources("Pathway"), 4).size() == 2);
    CHECK(enumerate_paths(g, g.class_sources("Side effect"), g.class_sources("Pathway"), 5).size() == 8);
}

TEST_CASE("path queries parse and name every node") {
    auto g = fx::core_schema();
    for (const auto& p : enumerate_paths(g, g.class_sources("Side effect"), g.class_sources("Pathway"))) {
        auto q = path_to_query(p, g);
        INFO(q.text);
        CHECK(q.entity_vars.size() == p.size());
        CHECK(std::set<std::string>(q.entity_vars.begin(), q.entity_vars.end()).size() == p.size());
        auto ast = sparql::parse_query(q.text, g.prefixes());
        CHECK(sparql::result_header(ast) == q.entity_vars);
    }
    auto matador = path_to_query({"sider", "compound_hub", "matador", "uniprot_hub", "kegg"}, g);
    INFO(matador.text);
    CHECK(matador.text.find("?matador matador:cid ?compound_hub") != std::string::npos);
    CHECK(matador.text.find("?matador matador:uniprot ?uniprot_hub") != std::string::npos);
    CHECK_THROWS_AS(path_to_query({"sider", "kegg"}, g), SchemaError);
}

TEST_CASE("one-edge path query") {
    auto g = two_nodes();
    auto q = path_to_query({"a", "b"}, g);
    CHECK(q.entity_vars.size() == 2);
    auto ast = sparql::parse_query(q.text, g.prefixes());
    CHECK(ast.where.triples.size() == 1);
}

TEST_CASE("property: paths are simple, edge-consistent and match the oracle") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 150; ++i) {
        auto s = oracle::random_schema(rng, 9);
        auto g = s.graph();
        auto paths = enumerate_paths(g, s.from_class(), s.to_class());
        for (const auto& p : paths) CHECK(edge_consistent(g, p));
        CHECK(std::set<LinkPath>(paths.begin(), paths.end()) == oracle::all_simple_paths(s, kDefaultMaxLen));
        CHECK(enumerate_paths(g, s.from_class(), s.to_class()) == paths);
        std::size_t bounded = enumerate_paths(g, s.from_class(), s.to_class(), 3).size();
        CHECK(bounded == oracle::all_simple_paths(s, 3).size());
    }
}

TEST_CASE("property: removing an edge never adds paths") {
    std::mt19937 rng(2718);
    for (int i = 0; i < 100; ++i) {
        auto s = oracle::random_schema(rng, 9);
        if (s.edges.empty()) continue;
        auto g = s.graph();
        auto before = enumerate_paths(g, s.from_class(), s.to_class());
        auto [a, b] = s.edges[static_cast<std::size_t>(i) % s.edges.size()];
        REQUIRE(g.remove_edge(oracle::RandomSchema::name(a), oracle::RandomSchema::name(b)));
        auto after = enumerate_paths(g, s.from_class(), s.to_class());
        CHECK(after.size() <= before.size());
        std::set<LinkPath> old(before.begin(), before.end());
        for (const auto& p : after) CHECK(old.count(p) == 1);
    }
}

TEST_CASE("empty store: all 14 paths attempted, no rows") {
    auto g = fx::core_schema();
    Store empty;
    auto r = execute_linkpaths(g, g.class_sources("Side effect"), g.class_sources("Pathway"), empty);
    CHECK(r.paths.size() == 14);
    CHECK(r.rows.empty());
    CHECK(r.failed().empty());
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["paths"].size() == 14);
}

TEST_CASE("only the matador path has data") {
    auto g = fx::core_schema();
    auto s = crossval_subset({"compound", "sider", "matador", "kegg_pathway_protein"});
    auto r = execute_linkpaths(g, g.class_sources("Side effect"), g.class_sources("Pathway"), s);
    std::size_t matador = r.paths.size();
    for (std::size_t i = 0; i < r.paths.size(); ++i) {
        if (r.paths[i].path == LinkPath{"sider", "compound_hub", "matador", "uniprot_hub", "kegg"}) matador = i;
        else CHECK(r.paths[i].table.rows.empty());
    }
    REQUIRE(matador < r.paths.size());
    const auto& t = r.paths[matador].table;
    std::set<Pair> expect;
    for (const auto& row : t.rows) expect.insert({display_value(*row.front()), display_value(*row.back())});
    CHECK(!expect.empty());
    CHECK(pairs_of(r) == expect);
    for (const auto& row : r.rows) CHECK(row.paths == std::vector<std::size_t>{matador});
}

TEST_CASE("two paths yielding the same pair share one row") {
    auto g = fx::core_schema();
    auto s = fx::load_fixture_dir("crossval");
    auto r = execute_linkpaths(g, g.class_sources("Side effect"), g.class_sources("Pathway"), s);
    CHECK(r.failed().empty());
    REQUIRE(r.rows.size() == 4);
    Term necrosis = fx::side_effect("necrosis");
    Term hsa04020 = fx::pathway("hsa04020");
    bool found = false;
    for (const auto& row : r.rows) {
        if (row.from == necrosis && row.to == hsa04020) {
            found = true;
            REQUIRE(row.paths.size() == 2);
            std::set<LinkPath> via{r.paths[row.paths[0]].path, r.paths[row.paths[1]].path};
            CHECK(via.count({"sider", "compound_hub", "matador", "uniprot_hub", "kegg"}) == 1);
            CHECK(via.count({"sider", "compound_hub", "drugbank_drug", "drugbank_target", "uniprot_hub", "kegg"}) == 1);
        }
    }
    CHECK(found);
}

TEST_CASE("property: union is independent of path order") {
    auto g = fx::core_schema();
    auto s = fx::load_fixture_dir("crossval");
    auto r = execute_linkpaths(g, g.class_sources("Side effect"), g.class_sources("Pathway"), s);
    std::mt19937 rng(6);
    std::vector<std::size_t> order(r.paths.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (int round = 0; round < 20; ++round) {
        std::shuffle(order.begin(), order.end(), rng);
        std::map<Pair, std::set<std::size_t>> merged;
        for (auto i : order)
            for (const auto& row : r.paths[i].table.rows)
                merged[{display_value(*row.front()), display_value(*row.back())}].insert(i);
        REQUIRE(merged.size() == r.rows.size());
        for (const auto& row : r.rows) {
            auto it = merged.find({display_value(row.from), display_value(row.to)});
            REQUIRE(it != merged.end());
            CHECK(std::vector<std::size_t>(it->second.begin(), it->second.end()) == row.paths);
        }
    }
    auto again = execute_linkpaths(g, g.class_sources("Side effect"), g.class_sources("Pathway"), s);
    CHECK(again.to_json() == r.to_json());
}

TEST_CASE("execution over a custom schema") {
    auto g = build_schema_graph("prefix ex = http://ex.org/\nnode a kind=compound\nnode b kind=protein\nnode c kind=protein\n"
                                "edge a b ex:p -\nedge a c ex:q -\nclass A = a\nclass BC = b c\n");
    Store s;
    Iri graph("http://ex.org/g");
    s.register_graph({graph, DomainTag::Chemical, {"a", "b", "c", "d", "e"}});
    s.insert({Iri("http://ex.org/x"), Iri("http://ex.org/p"), Iri("http://ex.org/y"), graph});
    auto r = execute_linkpaths(g, g.class_sources("A"), g.class_sources("BC"), s);
    CHECK(r.paths.size() == 2);
    CHECK(r.failed().empty());
    CHECK(r.rows.size() == 1);
}
