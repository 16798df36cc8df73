#pragma once

#include "chemlink/term.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace chemlink {

struct Triple {
    Iri subject;
    Iri predicate;
    Term object;
    Iri graph;

    friend auto operator<=>(const Triple&, const Triple&) = default;
    friend bool operator==(const Triple&, const Triple&) = default;
};

enum class DomainTag { Chemical, Chemogenomics, Biological, Systems, Phenotype, Literature };

std::string_view domain_name(DomainTag tag) noexcept;
std::optional<DomainTag> domain_from_name(std::string_view name) noexcept;

// What / When / Where / Why / Who of one ingested dataset.
struct ProvenanceRecord {
    std::string what;
    std::string when;
    std::string where;
    std::string why;
    std::string who;

    // Throws ConfigError naming the first empty field.
    void validate() const;

    friend bool operator==(const ProvenanceRecord&, const ProvenanceRecord&) = default;
};

struct GraphInfo {
    Iri graph;
    DomainTag domain;
    ProvenanceRecord provenance;
};

// Bound positions of a match; unset positions are wildcards.
struct MatchPattern {
    std::optional<Iri> subject;
    std::optional<Iri> predicate;
    std::optional<Term> object;
    std::optional<Iri> graph;
};

using TermId = std::uint32_t;

struct QuadIds {
    TermId s, p, o, g;
};

struct IdPattern {
    std::optional<TermId> s, p, o, g;
};

// Dictionary-encoded quad store with subject-, predicate- and object-first
// permutation indexes. Graph is the last key component in every index, so
// quads that differ only in graph are adjacent in any scan.
//
// Not internally synchronized; wrap in SharedStore for concurrent access.
class Store {
public:
    Store() = default;

    // Graph registry.
    void register_graph(GraphInfo info);
    bool has_graph(const Iri& graph) const;
    const GraphInfo& graph_info(const Iri& graph) const;   // throws GraphUnknown
    std::vector<GraphInfo> graphs() const;                  // sorted by graph IRI

    // Returns true when the triple was not already present.
    // Throws GraphUnknown for unregistered graphs.
    bool insert(const Triple& t);

    std::size_t size() const noexcept { return spog_.size(); }
    bool empty() const noexcept { return spog_.empty(); }

    // Triples agreeing with every bound position, sorted by (s, p, o, graph).
    std::vector<Triple> match(const MatchPattern& pattern) const;

    // Canonical representative of the owl:sameAs class of `entity`.
    Iri resolve_entity(const Iri& entity) const;
    // All members of the class (including `entity`), sorted.
    std::vector<Iri> equivalents(const Iri& entity) const;

    // Id-level access used by the query engine and analytics.
    std::optional<TermId> lookup(const Term& term) const;
    const Term& term(TermId id) const { return terms_.at(id); }
    TermId resolve_id(TermId id) const;

    // Visits quads matching `pattern` in index order. With `distinct_spo`
    // the graph component is ignored and each (s, p, o) is visited once.
    template <class Visit>
    void scan(const IdPattern& pattern, bool distinct_spo, Visit&& visit) const;

    // Number of quads in the index range selected by the bound s/p/o positions.
    std::size_t estimate(const IdPattern& pattern) const;

private:
    using Key = std::array<TermId, 4>;
    enum class Order { Spo, Pos, Osp };

    TermId intern(const Term& term);
    void link_same_as(TermId a, TermId b);
    bool better_representative(TermId a, TermId b) const;
    Order choose_order(const IdPattern& p, std::size_t& prefix_len, Key& prefix) const;
    const std::set<Key>& index(Order order) const;
    static QuadIds decode(Order order, const Key& key);

    std::vector<Term> terms_;
    std::unordered_map<Iri, TermId> iri_ids_;
    std::unordered_map<Literal, TermId> literal_ids_;

    std::set<Key> spog_;
    std::set<Key> posg_;
    std::set<Key> ospg_;

    std::map<Iri, GraphInfo> graphs_;

    // sameAs classes: member -> representative, representative -> members.
    std::unordered_map<TermId, TermId> class_rep_;
    std::unordered_map<TermId, std::vector<TermId>> class_members_;
    std::optional<TermId> same_as_id_;
};

template <class Visit>
void Store::scan(const IdPattern& pattern, bool distinct_spo, Visit&& visit) const {
    std::size_t prefix_len = 0;
    Key prefix{};
    Order order = choose_order(pattern, prefix_len, prefix);
    const auto& idx = index(order);
    auto it = idx.lower_bound(prefix);
    bool have_last = false;
    QuadIds last{};
    for (; it != idx.end(); ++it) {
        const Key& k = *it;
        bool in_range = true;
        for (std::size_t i = 0; i < prefix_len; ++i) {
            if (k[i] != prefix[i]) { in_range = false; break; }
        }
        if (!in_range) break;
        QuadIds q = decode(order, k);
        if (pattern.s && q.s != *pattern.s) continue;
        if (pattern.p && q.p != *pattern.p) continue;
        if (pattern.o && q.o != *pattern.o) continue;
        if (pattern.g && q.g != *pattern.g) continue;
        if (distinct_spo) {
            if (have_last && last.s == q.s && last.p == q.p && last.o == q.o) continue;
            last = q;
            have_last = true;
        }
        visit(q);
    }
}

// Readers-writer wrapper: many concurrent readers or one writer.
class SharedStore {
public:
    SharedStore() = default;
    explicit SharedStore(Store store) : store_(std::move(store)) {}

    template <class F>
    decltype(auto) read(F&& f) const {
        std::shared_lock lock(mutex_);
        return std::forward<F>(f)(static_cast<const Store&>(store_));
    }

    template <class F>
    decltype(auto) write(F&& f) {
        std::unique_lock lock(mutex_);
        return std::forward<F>(f)(store_);
    }

private:
    mutable std::shared_mutex mutex_;
    Store store_;
};

} // namespace chemlink
