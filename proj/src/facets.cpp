#include "chemlink/facets.hpp"

#include "chemlink/sparql/result.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chemlink::portal {

FacetResult facet_counts(const Store& store, const Iri& graph, const Iri& field, const std::vector<FacetFilter>& filters) {
    store.graph_info(graph);
    FacetResult r{graph, field, {}, {}, 0};

    std::map<Iri, std::vector<Triple>> by_subject;
    for (auto& t : store.match({std::nullopt, std::nullopt, std::nullopt, graph}))
        if (t.subject != graph) by_subject[t.subject].push_back(std::move(t));
    r.total_entities = by_subject.size();

    std::map<Term, std::size_t> counts;
    for (const auto& [subject, triples] : by_subject) {
        bool pass = std::all_of(filters.begin(), filters.end(), [&](const FacetFilter& f) {
            return std::any_of(triples.begin(), triples.end(), [&](const Triple& t) {
                return t.predicate == f.predicate && display_value(t.object) == f.value;
            });
        });
        if (!pass) continue;
        r.entities.push_back(subject);
        std::set<Term> values;
        for (const auto& t : triples)
            if (t.predicate == field) values.insert(t.object);
        for (const auto& v : values) ++counts[v];
    }
    for (const auto& [v, n] : counts) r.buckets.push_back({v, n});
    std::sort(r.buckets.begin(), r.buckets.end(),
              [](const FacetBucket& a, const FacetBucket& b) { return sparql::compare_cells(a.value, b.value) < 0; });
    return r;
}

std::string FacetResult::to_json(std::size_t limit, std::size_t offset) const {
    nlohmann::json jb = nlohmann::json::array();
    for (const auto& b : buckets) jb.push_back({{"value", term_json(b.value)}, {"key", display_value(b.value)}, {"count", b.count}});
    nlohmann::json je = nlohmann::json::array();
    for (std::size_t i = offset; i < entities.size() && i - offset < limit; ++i) je.push_back(entities[i].str());
    return nlohmann::json{{"graph", graph.str()},
                          {"field", field.str()},
                          {"buckets", jb},
                          {"matching", entities.size()},
                          {"total_entities", total_entities},
                          {"entities", je},
                          {"limit", limit},
                          {"offset", offset}}
        .dump();
}

} // namespace chemlink::portal
