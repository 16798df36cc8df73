#include "chemlink/store.hpp"

#include "chemlink/error.hpp"
#include "chemlink/vocabulary.hpp"

#include <algorithm>

namespace chemlink {

std::string_view domain_name(DomainTag tag) noexcept {
    switch (tag) {
    case DomainTag::Chemical: return "chemical";
    case DomainTag::Chemogenomics: return "chemogenomics";
    case DomainTag::Biological: return "biological";
    case DomainTag::Systems: return "systems";
    case DomainTag::Phenotype: return "phenotype";
    case DomainTag::Literature: return "literature";
    }
    return "chemical";
}

std::optional<DomainTag> domain_from_name(std::string_view name) noexcept {
    for (auto tag : {DomainTag::Chemical, DomainTag::Chemogenomics, DomainTag::Biological,
                     DomainTag::Systems, DomainTag::Phenotype, DomainTag::Literature}) {
        if (domain_name(tag) == name) return tag;
    }
    return std::nullopt;
}

void ProvenanceRecord::validate() const {
    const std::pair<const char*, const std::string*> fields[] = {
        {"what", &what}, {"when", &when}, {"where", &where}, {"why", &why}, {"who", &who}};
    for (const auto& [name, value] : fields) {
        if (value->find_first_not_of(" \t\r\n") == std::string::npos)
            throw ConfigError(std::string("provenance field '") + name + "' is empty");
    }
}

void Store::register_graph(GraphInfo info) {
    info.provenance.validate();
    Iri key = info.graph;
    graphs_.insert_or_assign(std::move(key), std::move(info));
}

bool Store::has_graph(const Iri& graph) const { return graphs_.count(graph) != 0; }

const GraphInfo& Store::graph_info(const Iri& graph) const {
    auto it = graphs_.find(graph);
    if (it == graphs_.end()) throw GraphUnknown(graph.str());
    return it->second;
}

std::vector<GraphInfo> Store::graphs() const {
    std::vector<GraphInfo> out;
    out.reserve(graphs_.size());
    for (const auto& [_, info] : graphs_) out.push_back(info);
    return out;
}

TermId Store::intern(const Term& term) {
    if (const auto* iri = std::get_if<Iri>(&term)) {
        auto [it, inserted] = iri_ids_.try_emplace(*iri, static_cast<TermId>(terms_.size()));
        if (inserted) {
            terms_.push_back(term);
            if (iri->str() == vocab::kOwlSameAs) same_as_id_ = it->second;
        }
        return it->second;
    }
    const auto& lit = std::get<Literal>(term);
    auto [it, inserted] = literal_ids_.try_emplace(lit, static_cast<TermId>(terms_.size()));
    if (inserted) terms_.push_back(term);
    return it->second;
}

std::optional<TermId> Store::lookup(const Term& term) const {
    if (const auto* iri = std::get_if<Iri>(&term)) {
        auto it = iri_ids_.find(*iri);
        if (it == iri_ids_.end()) return std::nullopt;
        return it->second;
    }
    auto it = literal_ids_.find(std::get<Literal>(term));
    if (it == literal_ids_.end()) return std::nullopt;
    return it->second;
}

bool Store::insert(const Triple& t) {
    if (!has_graph(t.graph)) throw GraphUnknown(t.graph.str());
    TermId s = intern(t.subject);
    TermId p = intern(t.predicate);
    TermId o = intern(t.object);
    TermId g = intern(t.graph);
    if (!spog_.insert({s, p, o, g}).second) return false;
    posg_.insert({p, o, s, g});
    ospg_.insert({o, s, p, g});
    if (same_as_id_ && p == *same_as_id_ && is_iri(t.object)) link_same_as(s, o);
    return true;
}

bool Store::better_representative(TermId a, TermId b) const {
    const Iri& ia = std::get<Iri>(terms_[a]);
    const Iri& ib = std::get<Iri>(terms_[b]);
    int ra = vocab::hub_rank(ia), rb = vocab::hub_rank(ib);
    if (ra != rb) return ra < rb;
    return ia < ib;
}

void Store::link_same_as(TermId a, TermId b) {
    auto rep_of = [this](TermId x) {
        auto it = class_rep_.find(x);
        if (it != class_rep_.end()) return it->second;
        class_rep_.emplace(x, x);
        class_members_[x] = {x};
        return x;
    };
    TermId ra = rep_of(a), rb = rep_of(b);
    if (ra == rb) return;
    // Merge the smaller member list into the larger, then pick the winner.
    if (class_members_[ra].size() < class_members_[rb].size()) std::swap(ra, rb);
    auto moved = std::move(class_members_[rb]);
    class_members_.erase(rb);
    auto& members = class_members_[ra];
    members.insert(members.end(), moved.begin(), moved.end());
    TermId best = ra;
    if (better_representative(rb, best)) best = rb;
    for (TermId m : moved) class_rep_[m] = ra;
    if (best != ra) {
        auto all = std::move(class_members_[ra]);
        class_members_.erase(ra);
        for (TermId m : all) class_rep_[m] = best;
        class_members_[best] = std::move(all);
    }
}

TermId Store::resolve_id(TermId id) const {
    auto it = class_rep_.find(id);
    return it == class_rep_.end() ? id : it->second;
}

Iri Store::resolve_entity(const Iri& entity) const {
    auto id = lookup(entity);
    if (!id) return entity;
    return std::get<Iri>(terms_[resolve_id(*id)]);
}

std::vector<Iri> Store::equivalents(const Iri& entity) const {
    auto id = lookup(entity);
    if (!id) return {entity};
    auto rep = class_rep_.find(*id);
    if (rep == class_rep_.end()) return {entity};
    std::vector<Iri> out;
    for (TermId m : class_members_.at(rep->second)) out.push_back(std::get<Iri>(terms_[m]));
    std::sort(out.begin(), out.end());
    return out;
}

Store::Order Store::choose_order(const IdPattern& p, std::size_t& prefix_len, Key& prefix) const {
    prefix = {0, 0, 0, 0};
    if (p.s && p.p) {
        prefix[0] = *p.s;
        prefix[1] = *p.p;
        prefix_len = 2;
        if (p.o) { prefix[2] = *p.o; prefix_len = 3; }
        return Order::Spo;
    }
    if (p.s && p.o) {
        prefix[0] = *p.o;
        prefix[1] = *p.s;
        prefix_len = 2;
        return Order::Osp;
    }
    if (p.p && p.o) {
        prefix[0] = *p.p;
        prefix[1] = *p.o;
        prefix_len = 2;
        return Order::Pos;
    }
    if (p.s) { prefix[0] = *p.s; prefix_len = 1; return Order::Spo; }
    if (p.p) { prefix[0] = *p.p; prefix_len = 1; return Order::Pos; }
    if (p.o) { prefix[0] = *p.o; prefix_len = 1; return Order::Osp; }
    prefix_len = 0;
    return Order::Spo;
}

const std::set<Store::Key>& Store::index(Order order) const {
    switch (order) {
    case Order::Spo: return spog_;
    case Order::Pos: return posg_;
    case Order::Osp: return ospg_;
    }
    return spog_;
}

QuadIds Store::decode(Order order, const Key& k) {
    switch (order) {
    case Order::Spo: return {k[0], k[1], k[2], k[3]};
    case Order::Pos: return {k[2], k[0], k[1], k[3]};
    case Order::Osp: return {k[1], k[2], k[0], k[3]};
    }
    return {k[0], k[1], k[2], k[3]};
}

std::size_t Store::estimate(const IdPattern& pattern) const {
    std::size_t prefix_len = 0;
    Key prefix{};
    Order order = choose_order(pattern, prefix_len, prefix);
    if (prefix_len == 0) return spog_.size();
    const auto& idx = index(order);
    Key hi = prefix;
    for (std::size_t i = prefix_len; i < 4; ++i) hi[i] = static_cast<TermId>(-1);
    return static_cast<std::size_t>(std::distance(idx.lower_bound(prefix), idx.upper_bound(hi)));
}

std::vector<Triple> Store::match(const MatchPattern& pattern) const {
    IdPattern ids;
    auto bind = [this](const auto& value, std::optional<TermId>& slot) {
        if (!value) return true;
        auto id = lookup(Term(*value));
        if (!id) return false;
        slot = *id;
        return true;
    };
    if (!bind(pattern.subject, ids.s) || !bind(pattern.predicate, ids.p) ||
        !bind(pattern.graph, ids.g))
        return {};
    if (pattern.object) {
        auto id = lookup(*pattern.object);
        if (!id) return {};
        ids.o = *id;
    }
    std::vector<Triple> out;
    scan(ids, false, [&](const QuadIds& q) {
        out.push_back(Triple{std::get<Iri>(terms_[q.s]), std::get<Iri>(terms_[q.p]), terms_[q.o],
                             std::get<Iri>(terms_[q.g])});
    });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace chemlink
