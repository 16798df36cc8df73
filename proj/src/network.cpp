#include "chemlink/network.hpp"

#include "chemlink/vocabulary.hpp"
#include "json_util.hpp"

#include <map>
#include <set>
#include <tuple>

namespace chemlink::portal {

namespace {

bool starts_with(const std::string& s, std::string_view p) { return s.compare(0, p.size(), p) == 0; }

const std::set<std::string>& network_kinds() {
    static const std::set<std::string> kinds = {"drug",    "protein", "side_effect", "pathway",
                                                "disease", "gene",    "compound",    "document"};
    return kinds;
}

class Builder {
public:
    void node(const Iri& iri, const std::string& kind) {
        nodes_.try_emplace(iri.str(), NetworkNode{iri.str(), local_name(iri), kind});
    }

    void edge(const Iri& a, const Iri& b, const std::string& relation, const std::string& path) {
        auto& attributions = edges_[{a.str(), b.str(), relation}];
        if (!path.empty()) attributions.insert(path);
    }

    NetworkDoc finish() const {
        NetworkDoc doc;
        for (const auto& [_, n] : nodes_) doc.nodes.push_back(n);
        for (const auto& [k, paths] : edges_)
            doc.edges.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), {paths.begin(), paths.end()}});
        return doc;
    }

private:
    std::map<std::string, NetworkNode> nodes_;
    std::map<std::tuple<std::string, std::string, std::string>, std::set<std::string>> edges_;
};

} // namespace

std::string entity_kind(const Iri& iri) {
    const std::string& s = iri.str();
    if (starts_with(s, vocab::kUniprotNs) || starts_with(s, vocab::kGiNs) || starts_with(s, vocab::kPdbNs))
        return "protein";
    if (starts_with(s, vocab::kGeneNs)) return "gene";
    if (starts_with(s, vocab::kDrugNs)) return "drug";
    if (starts_with(s, vocab::kDiseaseNs)) return "disease";
    if (starts_with(s, vocab::kSideEffectNs)) return "side_effect";
    if (starts_with(s, vocab::kPathwayNs)) return "pathway";
    if (starts_with(s, vocab::kPubmedNs)) return "document";
    return "compound";
}

bool NetworkDoc::closed() const {
    std::set<std::string> ids;
    for (const auto& n : nodes)
        if (!ids.insert(n.id).second) return false;
    for (const auto& e : edges)
        if (!ids.count(e.source) || !ids.count(e.target)) return false;
    return true;
}

std::string NetworkDoc::to_json() const {
    nlohmann::json jn = nlohmann::json::array();
    for (const auto& n : nodes) jn.push_back({{"id", n.id}, {"label", n.label}, {"kind", n.kind}});
    nlohmann::json je = nlohmann::json::array();
    for (const auto& e : edges)
        je.push_back({{"source", e.source}, {"target", e.target}, {"relation", e.relation}, {"paths", e.paths}});
    return nlohmann::json{{"nodes", jn}, {"edges", je}}.dump();
}

NetworkDoc network_export(const linkpath::CombinedResult& result, const linkpath::SchemaGraph& g, const Store& store,
                          const std::optional<Iri>& from, const std::optional<Iri>& to) {
    Builder b;
    std::optional<Iri> want_from, want_to;
    if (from) want_from = store.resolve_entity(*from);
    if (to) want_to = store.resolve_entity(*to);
    for (const auto& p : result.paths) {
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < p.path.size(); ++i)
            if (network_kinds().count(g.node(p.path[i]).kind)) cols.push_back(i);
        const std::string attribution = linkpath::format_path(p.path);
        for (const auto& row : p.table.rows) {
            auto endpoint = [&](std::size_t c) -> std::optional<Iri> {
                if (!row[c] || !is_iri(*row[c])) return std::nullopt;
                return store.resolve_entity(std::get<Iri>(*row[c]));
            };
            if (want_from && endpoint(0) != want_from) continue;
            if (want_to && endpoint(row.size() - 1) != want_to) continue;
            std::optional<Iri> prev;
            std::size_t prev_col = 0;
            for (auto c : cols) {
                auto e = endpoint(c);
                if (!e) continue;
                b.node(*e, g.node(p.path[c]).kind);
                if (prev && *prev != *e) {
                    std::string relation;
                    for (std::size_t k = prev_col; k <= c; ++k) relation += (k > prev_col ? "-" : "") + p.path[k];
                    b.edge(*prev, *e, relation, attribution);
                }
                prev = e;
                prev_col = c;
            }
        }
    }
    return b.finish();
}

NetworkDoc network_export(const litxval::ValidationReport& report) {
    Builder b;
    b.node(report.a, entity_kind(report.a));
    b.node(report.b, entity_kind(report.b));
    for (const auto& [entity, assoc] : {std::pair{&report.a, &report.a_associations}, {&report.b, &report.b_associations}}) {
        for (const auto& x : *assoc) {
            b.node(x, entity_kind(x));
            b.edge(*entity, x, "associated", "");
        }
    }
    auto docs = [&](const std::set<std::string>& pmids, bool mentions_a, bool mentions_b) {
        for (const auto& pmid : pmids) {
            Iri d = vocab::document_iri(pmid);
            b.node(d, "document");
            if (mentions_a) b.edge(d, report.a, "mentions", "");
            if (mentions_b) b.edge(d, report.b, "mentions", "");
        }
    };
    docs(report.both, true, true);
    docs(report.a_with_b_associations, true, false);
    docs(report.b_with_a_associations, false, true);
    return b.finish();
}

} // namespace chemlink::portal
