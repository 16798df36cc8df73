#pragma once

#include "chemlink/linkpath.hpp"
#include "chemlink/store.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chemlink::litxval {

enum class EntityKind { Compound, Gene, Disease, SideEffect };

std::string_view kind_name(EntityKind kind) noexcept;   // compound, gene, disease, side_effect
std::optional<EntityKind> kind_from_name(std::string_view name) noexcept;

// Trimmed, ASCII-lowercased form used for both terms and text.
std::string normalize_term(std::string_view text);

struct DictEntry {
    std::string term;   // normalized
    Iri entity;
    friend bool operator==(const DictEntry&, const DictEntry&) = default;
};

class Dictionary {
public:
    Dictionary(EntityKind kind, std::vector<DictEntry> entries);

    EntityKind kind() const noexcept { return kind_; }
    const std::vector<DictEntry>& entries() const noexcept { return entries_; }   // sorted by term
    std::size_t size() const noexcept { return entries_.size(); }
    const DictEntry* find(std::string_view normalized_term) const;

private:
    EntityKind kind_;
    std::vector<DictEntry> entries_;
};

// Normalizes terms and collapses duplicate (term, entity) rows. Throws
// DictConflict when one term maps to two entities, ConfigError when the
// table is empty or a term normalizes to nothing.
Dictionary build_dictionary(EntityKind kind, const std::vector<std::pair<std::string, Iri>>& table);

// TSV with a header row; the first column is the term, the second an IRI or
// prefixed name.
Dictionary read_dictionary(EntityKind kind, const std::filesystem::path& path);

// Entity of the first dictionary holding `name` after normalization.
std::optional<Iri> lookup_term(const std::vector<Dictionary>& dicts, std::string_view name);

struct AbstractDoc {
    std::string pmid;
    int year = 0;
    std::string title;
    std::string body;

    // Text searched by extraction: title, newline, body.
    std::string text() const { return title + "\n" + body; }
};

// One JSON object per line: {"pmid", "year", "title", "body"}. Throws
// ConfigError on malformed lines and duplicate pmids.
std::vector<AbstractDoc> parse_corpus(std::string_view jsonl);
std::vector<AbstractDoc> read_corpus(const std::filesystem::path& path);

struct Mention {
    std::string pmid;
    Iri entity;
    EntityKind kind;
    std::size_t start = 0;   // byte offsets into AbstractDoc::text()
    std::size_t end = 0;
    friend bool operator==(const Mention&, const Mention&) = default;
};

// Greedy left-to-right longest exact match at word boundaries; a word
// character is an ASCII letter or digit, or any byte >= 0x80. When
// dictionaries share a term the earlier dictionary wins.
std::vector<Mention> extract_mentions(const AbstractDoc& doc, const std::vector<Dictionary>& dicts);

class CorpusIndex {
public:
    CorpusIndex() = default;
    CorpusIndex(std::vector<AbstractDoc> docs, const std::vector<Dictionary>& dicts);

    const std::vector<AbstractDoc>& documents() const noexcept { return docs_; }
    const std::vector<Mention>& mentions() const noexcept { return mentions_; }   // by pmid, then offset
    // pmids of documents mentioning `entity` (exact IRI).
    const std::set<std::string>& documents_mentioning(const Iri& entity) const;
    std::set<std::string> documents_mentioning_any(const std::set<Iri>& entities) const;

    // Literature-graph triples: document mentions entity, year, title.
    std::vector<Triple> to_triples(const Iri& graph) const;

private:
    std::vector<AbstractDoc> docs_;
    std::vector<Mention> mentions_;
    std::unordered_map<Iri, std::set<std::string>> postings_;
};

// Registers a literature graph and writes the index triples into it.
// Returns the number of new triples.
std::size_t load_literature(Store& store, const CorpusIndex& index, std::string_view graph_name = "literature");

// Genes associated with an entity (its drug targets, the targets of drugs
// causing it, or itself when it is a pathway member) plus the pathways of
// those genes, all resolved.
std::set<Iri> associations(const Iri& entity, const Store& store);

struct ValidationReport {
    Iri a;
    Iri b;
    std::set<std::string> both;
    std::set<std::string> a_with_b_associations;   // mention a and something associated with b
    std::set<std::string> b_with_a_associations;
    std::set<Iri> a_associations;
    std::set<Iri> b_associations;

    bool empty() const { return both.empty() && a_with_b_associations.empty() && b_with_a_associations.empty(); }
    std::string to_json() const;
};

// Mentions are looked up for every member of each entity's sameAs class.
ValidationReport cross_validate(const Iri& a, const Iri& b, const CorpusIndex& index, const Store& store);

// One link path with its result chains; each chain lists the resolved
// entities of the path's non-record nodes in path order.
struct PathEvidence {
    linkpath::LinkPath path;
    std::vector<std::vector<Iri>> chains;
};

std::vector<PathEvidence> evidence_from(const linkpath::CombinedResult& result, const linkpath::SchemaGraph& g,
                                        const Store& store);

struct ScoredPath {
    linkpath::LinkPath path;
    std::size_t score = 0;
    friend bool operator==(const ScoredPath&, const ScoredPath&) = default;
};

// Score: distinct documents co-mentioning two consecutive entities of some
// chain. Descending score, ties by node sequence.
std::vector<ScoredPath> rank_paths_by_literature(const std::vector<PathEvidence>& paths, const CorpusIndex& index,
                                                 const Store* store = nullptr);

} // namespace chemlink::litxval
