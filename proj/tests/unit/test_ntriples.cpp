#include "chemlink/error.hpp"
#include "chemlink/ntriples.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace chemlink;

namespace {

Iri g() { return Iri("http://ex.org/g"); }

Store store_with_graph() {
    Store s;
    s.register_graph({g(), DomainTag::Chemical, {"a", "b", "c", "d", "e"}});
    return s;
}

} // namespace

TEST_CASE("empty store exports an empty document") {
    Store s;
    CHECK(export_graph(s).empty());
}

TEST_CASE("single triple is one line ending in space dot") {
    auto s = store_with_graph();
    s.insert({Iri("http://ex.org/a"), Iri("http://ex.org/p"), Literal::integer(3), g()});
    auto doc = export_graph(s);
    CHECK(doc == "<http://ex.org/a> <http://ex.org/p> \"3\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n");
}

TEST_CASE("empty document imports nothing") {
    auto s = store_with_graph();
    CHECK(import_graph(s, "", g()) == 0);
    CHECK(import_graph(s, "# only a comment\n\n", g()) == 0);
}

TEST_CASE("bad line is reported by number") {
    std::string doc;
    for (int i = 1; i <= 10; ++i) {
        if (i == 7) doc += "<http://ex.org/s> <http://ex.org/p> oops .\n";
        else doc += "<http://ex.org/s" + std::to_string(i) + "> <http://ex.org/p> \"x\" .\n";
    }
    auto s = store_with_graph();
    try {
        import_graph(s, doc, g());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 7);
    }
    CHECK(s.size() == 0);
}

TEST_CASE("blank nodes and language tags are rejected") {
    CHECK_THROWS_AS(parse_ntriples("_:b <http://ex.org/p> \"x\" .\n"), ParseError);
    CHECK_THROWS_AS(parse_ntriples("<http://ex.org/s> <http://ex.org/p> \"x\"@en .\n"), ParseError);
    CHECK_THROWS_AS(parse_ntriples("<http://ex.org/s> <http://ex.org/p> \"x\"\n"), ParseError);
}

TEST_CASE("untyped literal is a string") {
    auto st = parse_ntriples("<http://ex.org/s> <http://ex.org/p> \"x\\ty\" .\n");
    REQUIRE(st.size() == 1);
    CHECK(st[0].object == Term(Literal::string("x\ty")));
}

TEST_CASE("export import round trip on random documents") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> n(0, 20), kind(0, 4), ch(32, 126);
    for (int round = 0; round < 20; ++round) {
        auto s = store_with_graph();
        for (int i = 0; i < 100; ++i) {
            Term o = Iri("http://ex.org/o");
            switch (kind(rng)) {
            case 0: o = Literal::integer(n(rng) - 10); break;
            case 1: o = Literal(std::to_string(n(rng)) + ".25", Datatype::Decimal); break;
            case 2: o = Literal::boolean(n(rng) % 2); break;
            case 3: {
                std::string text;
                for (int j = 0; j < 8; ++j) text.push_back(static_cast<char>(ch(rng)));
                text += "\n\\\"";
                o = Literal::string(text);
                break;
            }
            default: o = Iri("http://ex.org/o" + std::to_string(n(rng)));
            }
            s.insert({Iri("http://ex.org/s" + std::to_string(n(rng))), Iri("http://ex.org/p" + std::to_string(n(rng) % 4)), o, g()});
        }
        auto doc = export_graph(s, g());
        auto copy = store_with_graph();
        CHECK(import_graph(copy, doc, g()) == s.size());
        CHECK(copy.match({}) == s.match({}));
        CHECK(export_graph(copy, g()) == doc);
        CHECK(import_graph(copy, doc, g()) == 0);
    }
}

TEST_CASE("per-graph export filters by graph") {
    auto s = store_with_graph();
    Iri other("http://ex.org/other");
    s.register_graph({other, DomainTag::Systems, {"a", "b", "c", "d", "e"}});
    s.insert({Iri("http://ex.org/a"), Iri("http://ex.org/p"), Iri("http://ex.org/b"), g()});
    s.insert({Iri("http://ex.org/c"), Iri("http://ex.org/p"), Iri("http://ex.org/d"), other});
    auto doc = export_graph(s, other);
    CHECK(doc.find("ex.org/c") != std::string::npos);
    CHECK(doc.find("ex.org/a") == std::string::npos);
    CHECK(std::count(doc.begin(), doc.end(), '\n') == 1);
}

TEST_CASE("serialize sorts and dedups") {
    Statement a{Iri("http://ex.org/b"), Iri("http://ex.org/p"), Iri("http://ex.org/o")};
    Statement b{Iri("http://ex.org/a"), Iri("http://ex.org/p"), Iri("http://ex.org/o")};
    auto doc = serialize_ntriples({a, b, a});
    CHECK(doc.find("ex.org/a") < doc.find("ex.org/b"));
    CHECK(parse_ntriples(doc).size() == 2);
}
