#include "chemlink/litxval.hpp"

#include "chemlink/analytics.hpp"
#include "chemlink/error.hpp"
#include "chemlink/ingest.hpp"
#include "chemlink/store_io.hpp"
#include "chemlink/vocabulary.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <sstream>

namespace chemlink::litxval {

namespace {

constexpr std::array<std::pair<EntityKind, std::string_view>, 4> kKinds{{
    {EntityKind::Compound, "compound"},
    {EntityKind::Gene, "gene"},
    {EntityKind::Disease, "disease"},
    {EntityKind::SideEffect, "side_effect"},
}};

char fold(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_word(char c) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z');
}

} // namespace

std::string_view kind_name(EntityKind kind) noexcept {
    for (const auto& [k, n] : kKinds)
        if (k == kind) return n;
    return "compound";
}

std::optional<EntityKind> kind_from_name(std::string_view name) noexcept {
    for (const auto& [k, n] : kKinds)
        if (n == name) return k;
    if (name == "side-effect") return EntityKind::SideEffect;
    return std::nullopt;
}

std::string normalize_term(std::string_view text) {
    auto b = text.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = text.find_last_not_of(" \t\r\n");
    std::string out(text.substr(b, e - b + 1));
    std::transform(out.begin(), out.end(), out.begin(), fold);
    return out;
}

Dictionary::Dictionary(EntityKind kind, std::vector<DictEntry> entries) : kind_(kind), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const DictEntry& a, const DictEntry& b) { return a.term < b.term; });
}

const DictEntry* Dictionary::find(std::string_view normalized_term) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), normalized_term,
                               [](const DictEntry& e, std::string_view t) { return e.term < t; });
    if (it == entries_.end() || it->term != normalized_term) return nullptr;
    return &*it;
}

Dictionary build_dictionary(EntityKind kind, const std::vector<std::pair<std::string, Iri>>& table) {
    if (table.empty()) throw ConfigError("empty " + std::string(kind_name(kind)) + " dictionary table");
    std::map<std::string, Iri> by_term;
    for (const auto& [raw, entity] : table) {
        std::string term = normalize_term(raw);
        if (term.empty()) throw ConfigError("dictionary term '" + raw + "' is empty after normalization");
        auto [it, inserted] = by_term.emplace(term, entity);
        if (!inserted && it->second != entity) throw DictConflict(term);
    }
    std::vector<DictEntry> entries;
    for (auto& [term, entity] : by_term) entries.push_back({term, entity});
    return Dictionary(kind, std::move(entries));
}

Dictionary read_dictionary(EntityKind kind, const std::filesystem::path& path) {
    auto table = ingest::parse_tsv(read_file(path));
    const auto prefixes = PrefixTable::defaults();
    std::vector<std::pair<std::string, Iri>> rows;
    for (const auto& r : table.rows) {
        if (r.size() < 2) throw ConfigError(path.string() + ": dictionary rows need a term and an entity");
        std::string_view id = r[1];
        while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back()))) id.remove_suffix(1);
        while (!id.empty() && std::isspace(static_cast<unsigned char>(id.front()))) id.remove_prefix(1);
        rows.emplace_back(r[0], parse_iri_ref(id, prefixes));
    }
    return build_dictionary(kind, rows);
}

std::optional<Iri> lookup_term(const std::vector<Dictionary>& dicts, std::string_view name) {
    std::string term = normalize_term(name);
    for (const auto& d : dicts)
        if (const auto* e = d.find(term)) return e->entity;
    return std::nullopt;
}

std::vector<AbstractDoc> parse_corpus(std::string_view jsonl) {
    std::vector<AbstractDoc> docs;
    std::set<std::string> seen;
    std::istringstream in{std::string(jsonl)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (normalize_term(line).empty()) continue;
        auto fail = [&](const std::string& msg) {
            throw ConfigError("corpus line " + std::to_string(line_no) + ": " + msg);
        };
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            fail(e.what());
        }
        if (!j.is_object() || !j.contains("pmid")) fail("expected an object with a pmid");
        AbstractDoc d;
        const auto& pmid = j["pmid"];
        d.pmid = pmid.is_string() ? pmid.get<std::string>() : pmid.dump();
        if (d.pmid.empty()) fail("empty pmid");
        if (!seen.insert(d.pmid).second) fail("duplicate pmid " + d.pmid);
        try {
            d.year = j.value("year", 0);
            d.title = j.value("title", std::string());
            d.body = j.value("body", std::string());
        } catch (const nlohmann::json::exception& e) {
            fail(e.what());
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

std::vector<AbstractDoc> read_corpus(const std::filesystem::path& path) { return parse_corpus(read_file(path)); }

std::vector<Mention> extract_mentions(const AbstractDoc& doc, const std::vector<Dictionary>& dicts) {
    std::string text = doc.text();
    std::string folded = text;
    std::transform(folded.begin(), folded.end(), folded.begin(), fold);

    std::set<std::size_t, std::greater<>> lengths;
    for (const auto& d : dicts)
        for (const auto& e : d.entries()) lengths.insert(e.term.size());

    std::vector<Mention> out;
    const std::size_t n = folded.size();
    std::size_t i = 0;
    while (i < n) {
        if (i > 0 && is_word(folded[i - 1]) && is_word(folded[i])) {
            ++i;
            continue;
        }
        bool matched = false;
        for (std::size_t len : lengths) {
            if (i + len > n) continue;
            std::size_t end = i + len;
            if (end < n && is_word(folded[end]) && is_word(folded[end - 1])) continue;
            std::string_view span(folded.data() + i, len);
            for (const auto& d : dicts) {
                if (const auto* e = d.find(span)) {
                    out.push_back({doc.pmid, e->entity, d.kind(), i, end});
                    matched = true;
                    break;
                }
            }
            if (matched) {
                i = end;
                break;
            }
        }
        if (!matched) ++i;
    }
    return out;
}

CorpusIndex::CorpusIndex(std::vector<AbstractDoc> docs, const std::vector<Dictionary>& dicts) : docs_(std::move(docs)) {
    std::sort(docs_.begin(), docs_.end(), [](const AbstractDoc& a, const AbstractDoc& b) { return a.pmid < b.pmid; });
    for (const auto& d : docs_) {
        for (auto& m : extract_mentions(d, dicts)) {
            postings_[m.entity].insert(m.pmid);
            mentions_.push_back(std::move(m));
        }
    }
}

const std::set<std::string>& CorpusIndex::documents_mentioning(const Iri& entity) const {
    static const std::set<std::string> none;
    auto it = postings_.find(entity);
    return it == postings_.end() ? none : it->second;
}

std::set<std::string> CorpusIndex::documents_mentioning_any(const std::set<Iri>& entities) const {
    std::set<std::string> out;
    for (const auto& e : entities) {
        const auto& docs = documents_mentioning(e);
        out.insert(docs.begin(), docs.end());
    }
    return out;
}

std::vector<Triple> CorpusIndex::to_triples(const Iri& graph) const {
    std::vector<Triple> out;
    for (const auto& d : docs_) {
        Iri doc = vocab::document_iri(d.pmid);
        out.push_back({doc, vocab::lit_year(), Literal::integer(d.year), graph});
        if (!d.title.empty()) out.push_back({doc, vocab::lit_title(), Literal::string(d.title), graph});
    }
    for (const auto& m : mentions_) out.push_back({vocab::document_iri(m.pmid), vocab::lit_mentions(), m.entity, graph});
    return out;
}

std::size_t load_literature(Store& store, const CorpusIndex& index, std::string_view graph_name) {
    Iri graph = vocab::graph_iri(graph_name);
    if (!store.has_graph(graph)) {
        store.register_graph({graph, DomainTag::Literature,
                              {"abstract corpus with dictionary mentions", "load time", "local corpus file",
                               "literature cross-validation", "chemlink extract"}});
    }
    std::size_t added = 0;
    for (const auto& t : index.to_triples(graph))
        if (store.insert(t)) ++added;
    return added;
}

std::set<Iri> associations(const Iri& entity, const Store& store) {
    analytics::AssociationIndex idx(store);
    Iri e = store.resolve_entity(entity);
    std::set<Iri> genes = idx.targets_of(e);
    for (const auto& d : idx.drugs_causing(e)) {
        const auto& t = idx.targets_of(d);
        genes.insert(t.begin(), t.end());
    }
    if (!idx.pathways_of(e).empty()) genes.insert(e);
    std::set<Iri> out = genes;
    for (const auto& g : genes) {
        const auto& p = idx.pathways_of(g);
        out.insert(p.begin(), p.end());
    }
    out.erase(e);
    return out;
}

namespace {

std::set<std::string> docs_for_class(const Iri& entity, const CorpusIndex& index, const Store& store) {
    auto members = store.equivalents(entity);
    return index.documents_mentioning_any(std::set<Iri>(members.begin(), members.end()));
}

std::set<std::string> docs_for_any(const std::set<Iri>& entities, const CorpusIndex& index, const Store& store) {
    std::set<std::string> out;
    for (const auto& e : entities) {
        auto d = docs_for_class(e, index, store);
        out.insert(d.begin(), d.end());
    }
    return out;
}

std::set<std::string> intersect(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

} // namespace

ValidationReport cross_validate(const Iri& a, const Iri& b, const CorpusIndex& index, const Store& store) {
    ValidationReport r{store.resolve_entity(a), store.resolve_entity(b), {}, {}, {}, {}, {}};
    auto docs_a = docs_for_class(a, index, store);
    auto docs_b = docs_for_class(b, index, store);
    r.a_associations = associations(a, store);
    r.b_associations = associations(b, store);
    r.both = intersect(docs_a, docs_b);
    r.a_with_b_associations = intersect(docs_a, docs_for_any(r.b_associations, index, store));
    r.b_with_a_associations = intersect(docs_b, docs_for_any(r.a_associations, index, store));
    return r;
}

std::string ValidationReport::to_json() const {
    auto iris = [](const std::set<Iri>& s) {
        std::vector<std::string> out;
        for (const auto& i : s) out.push_back(i.str());
        return out;
    };
    return nlohmann::json{{"a", a.str()},
                          {"b", b.str()},
                          {"both", both},
                          {"a_with_b_associations", a_with_b_associations},
                          {"b_with_a_associations", b_with_a_associations},
                          {"a_associations", iris(a_associations)},
                          {"b_associations", iris(b_associations)}}
        .dump();
}

std::vector<PathEvidence> evidence_from(const linkpath::CombinedResult& result, const linkpath::SchemaGraph& g,
                                        const Store& store) {
    std::vector<PathEvidence> out;
    for (const auto& p : result.paths) {
        PathEvidence ev{p.path, {}};
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < p.path.size(); ++i)
            if (g.node(p.path[i]).kind != "record") cols.push_back(i);
        std::set<std::vector<Iri>> chains;
        for (const auto& row : p.table.rows) {
            std::vector<Iri> chain;
            for (auto c : cols)
                if (c < row.size() && row[c] && is_iri(*row[c])) chain.push_back(store.resolve_entity(std::get<Iri>(*row[c])));
            chains.insert(std::move(chain));
        }
        ev.chains.assign(chains.begin(), chains.end());
        out.push_back(std::move(ev));
    }
    return out;
}

std::vector<ScoredPath> rank_paths_by_literature(const std::vector<PathEvidence>& paths, const CorpusIndex& index,
                                                 const Store* store) {
    auto docs_of = [&](const Iri& e) {
        if (store) return docs_for_class(e, index, *store);
        return index.documents_mentioning(e);
    };
    std::vector<ScoredPath> out;
    for (const auto& p : paths) {
        std::set<std::string> docs;
        for (const auto& chain : p.chains) {
            for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                auto both = intersect(docs_of(chain[i]), docs_of(chain[i + 1]));
                docs.insert(both.begin(), both.end());
            }
        }
        out.push_back({p.path, docs.size()});
    }
    std::sort(out.begin(), out.end(), [](const ScoredPath& a, const ScoredPath& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.path < b.path;
    });
    return out;
}

} // namespace chemlink::litxval
