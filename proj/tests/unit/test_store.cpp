#include "chemlink/error.hpp"
#include "chemlink/store.hpp"
#include "chemlink/store_io.hpp"
#include "chemlink/vocabulary.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <random>
#include <set>

using namespace chemlink;

namespace {

Iri g0() { return Iri("http://ex.org/g0"); }
Iri g1() { return Iri("http://ex.org/g1"); }

Store two_graph_store() {
    Store s;
    s.register_graph({g0(), DomainTag::Chemical, {"a", "b", "c", "d", "e"}});
    s.register_graph({g1(), DomainTag::Biological, {"a", "b", "c", "d", "e"}});
    return s;
}

Iri node(int i) { return Iri("http://ex.org/n" + std::to_string(i)); }
Iri pred(int i) { return Iri("http://ex.org/p" + std::to_string(i)); }

std::vector<Triple> random_triples(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> nd(0, 14), pd(0, 3), coin(0, 2), gd(0, 1), lit(0, 5);
    std::vector<Triple> out;
    for (std::size_t i = 0; i < n; ++i) {
        Term o = coin(rng) == 0 ? Term(Literal::integer(lit(rng))) : Term(node(nd(rng)));
        out.push_back({node(nd(rng)), pred(pd(rng)), o, gd(rng) ? g1() : g0()});
    }
    return out;
}

} // namespace

TEST_CASE("insert is idempotent") {
    auto s = two_graph_store();
    Triple t{node(1), pred(1), node(2), g0()};
    CHECK(s.insert(t));
    CHECK_FALSE(s.insert(t));
    CHECK(s.size() == 1);
    CHECK(s.insert({node(1), pred(1), node(2), g1()}));
    CHECK(s.size() == 2);
}

TEST_CASE("insert into unregistered graph") {
    Store s;
    CHECK_THROWS_AS(s.insert({node(1), pred(1), node(2), g0()}), GraphUnknown);
    CHECK_THROWS_AS(s.graph_info(g0()), GraphUnknown);
}

TEST_CASE("provenance requires all five fields") {
    ProvenanceRecord p{"a", "b", "", "d", "e"};
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("match on empty store") {
    Store s;
    CHECK(s.match({}).empty());
}

TEST_CASE("wildcard match returns the deduplicated set") {
    std::mt19937 rng(11);
    auto s = two_graph_store();
    auto ts = random_triples(rng, 1000);
    for (const auto& t : ts) s.insert(t);
    std::set<Triple> oracle(ts.begin(), ts.end());
    auto all = s.match({});
    CHECK(all.size() == oracle.size());
    CHECK(std::vector<Triple>(oracle.begin(), oracle.end()) == all);
}

TEST_CASE("random patterns agree with a linear scan") {
    std::mt19937 rng(12);
    auto s = two_graph_store();
    auto ts = random_triples(rng, 800);
    for (const auto& t : ts) s.insert(t);
    std::set<Triple> oracle(ts.begin(), ts.end());
    std::uniform_int_distribution<int> coin(0, 1), nd(0, 14), pd(0, 3), lit(0, 5);
    for (int i = 0; i < 300; ++i) {
        MatchPattern p;
        if (coin(rng)) p.subject = node(nd(rng));
        if (coin(rng)) p.predicate = pred(pd(rng));
        if (coin(rng)) p.object = coin(rng) ? Term(node(nd(rng))) : Term(Literal::integer(lit(rng)));
        if (coin(rng)) p.graph = coin(rng) ? g0() : g1();
        std::vector<Triple> want;
        for (const auto& t : oracle) {
            if (p.subject && t.subject != *p.subject) continue;
            if (p.predicate && t.predicate != *p.predicate) continue;
            if (p.object && t.object != *p.object) continue;
            if (p.graph && t.graph != *p.graph) continue;
            want.push_back(t);
        }
        REQUIRE(s.match(p) == want);
    }
}

TEST_CASE("sameAs resolution prefers hubs") {
    auto s = two_graph_store();
    auto p = PrefixTable::defaults();
    Iri gi = p.expand("gi:12345");
    Iri up = p.expand("uniprot:P00533");
    CHECK(s.resolve_entity(gi) == gi);
    s.insert({gi, vocab::same_as(), up, g0()});
    CHECK(s.resolve_entity(gi) == up);
    CHECK(s.resolve_entity(up) == up);

    Iri bio = Iri("http://bio2rdf.org/drugbank_drugs:DB01224");
    Iri drug = p.expand("drug:DB01224");
    s.insert({drug, vocab::same_as(), bio, g0()});
    CHECK(s.resolve_entity(bio) == drug);
    CHECK(s.equivalents(bio) == std::vector<Iri>{bio, drug});
}

TEST_CASE("sameAs closure is transitive and idempotent") {
    std::mt19937 rng(5);
    auto s = two_graph_store();
    std::uniform_int_distribution<int> nd(0, 29);
    std::vector<std::pair<int, int>> links;
    for (int i = 0; i < 25; ++i) {
        int a = nd(rng), b = nd(rng);
        links.push_back({a, b});
        s.insert({node(a), vocab::same_as(), node(b), g0()});
    }
    // union-find oracle
    std::vector<int> parent(30);
    for (int i = 0; i < 30; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [a, b] : links) parent[find(a)] = find(b);
    for (int a = 0; a < 30; ++a) {
        auto r = s.resolve_entity(node(a));
        CHECK(s.resolve_entity(r) == r);
        for (int b = 0; b < 30; ++b)
            CHECK((find(a) == find(b)) == (s.resolve_entity(node(b)) == r));
    }
}

TEST_CASE("graphs listing is sorted") {
    auto s = two_graph_store();
    auto gs = s.graphs();
    REQUIRE(gs.size() == 2);
    CHECK(gs[0].graph == g0());
    CHECK(gs[1].domain == DomainTag::Biological);
    CHECK(domain_from_name(domain_name(DomainTag::Systems)) == DomainTag::Systems);
}

TEST_CASE("store save and load round trip") {
    std::mt19937 rng(3);
    auto s = two_graph_store();
    for (const auto& t : random_triples(rng, 200)) s.insert(t);
    s.insert({node(1), vocab::same_as(), node(2), g1()});
    auto dir = std::filesystem::temp_directory_path() / "chemlink_store_rt";
    std::filesystem::remove_all(dir);
    save_store(s, dir);
    auto back = load_store(dir);
    CHECK(back.match({}) == s.match({}));
    CHECK(back.graph_info(g1()).provenance == s.graph_info(g1()).provenance);
    CHECK(back.resolve_entity(node(1)) == s.resolve_entity(node(1)));
    std::filesystem::remove_all(dir);
}

TEST_CASE("shared store allows concurrent readers") {
    SharedStore shared(two_graph_store());
    shared.write([](Store& s) { s.insert({node(1), pred(1), node(2), g0()}); });
    CHECK(shared.read([](const Store& s) { return s.size(); }) == 1);
}
