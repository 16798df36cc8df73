#include "chemlink/portal.hpp"

#include "chemlink/error.hpp"
#include "chemlink/facets.hpp"
#include "chemlink/network.hpp"
#include "chemlink/sparql/evaluator.hpp"
#include "chemlink/sparql/parser.hpp"
#include "chemlink/store_io.hpp"
#include "chemlink/vocabulary.hpp"
#include "json_util.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <thread>

namespace chemlink::portal {

using nlohmann::json;

struct Portal::Server {
    httplib::Server http;
    std::thread thread;
};

namespace {

class BadRequest : public Error {
public:
    explicit BadRequest(const std::string& message) : Error("BadRequest", message) {}
};

class NotFound : public Error {
public:
    NotFound(const std::string& code, const std::string& message) : Error(code, message) {}
};

Response json_response(const json& j, int status = 200) { return {status, j.dump(), "application/json"}; }

Response error_response(const Error& e) {
    int status = 400;
    if (e.code() == "GraphUnknown" || e.code() == "NotFound" || e.code() == "UnknownEntity" ||
        e.code() == "NotConfigured")
        status = 404;
    json j{{"error", e.code()}, {"detail", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe && pe->position() != ParseError::npos)
        j["position"] = pe->position();
    if (const auto* pe = dynamic_cast<const PrefixError*>(&e)) j["position"] = pe->position();
    return json_response(j, status);
}

std::optional<std::string> param(const Params& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
}

std::string required(const Params& params, const std::string& key) {
    auto v = param(params, key);
    if (!v || v->empty()) throw BadRequest("missing parameter '" + key + "'");
    return *v;
}

std::optional<std::size_t> count_param(const Params& params, const std::string& key) {
    auto v = param(params, key);
    if (!v) return std::nullopt;
    if (v->empty() || !std::all_of(v->begin(), v->end(), [](unsigned char c) { return std::isdigit(c); }))
        throw BadRequest("parameter '" + key + "' must be a non-negative integer");
    std::size_t used = 0;
    unsigned long long n = 0;
    try {
        n = std::stoull(*v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v->size()) throw BadRequest("parameter '" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(n);
}

struct Page {
    std::size_t limit;
    std::size_t offset;
};

Page page(const Params& params) {
    return {count_param(params, "limit").value_or(kDefaultPageSize), count_param(params, "offset").value_or(0)};
}

template <class T>
json slice(const std::vector<T>& items, const Page& p, const std::function<json(const T&)>& f) {
    json out = json::array();
    for (std::size_t i = p.offset; i < items.size() && i - p.offset < p.limit; ++i) out.push_back(f(items[i]));
    return out;
}

const linkpath::SchemaGraph& need_schema(const std::optional<linkpath::SchemaGraph>& s) {
    if (!s) throw NotFound("NotConfigured", "no schema graph loaded");
    return *s;
}

} // namespace

Portal::Portal(Store store, std::optional<linkpath::SchemaGraph> schema, std::vector<litxval::Dictionary> dicts,
               std::optional<litxval::CorpusIndex> corpus)
    : store_(std::move(store)), schema_(std::move(schema)), dicts_(std::move(dicts)), corpus_(std::move(corpus)) {}

Portal::~Portal() { stop(); }

Iri Portal::entity_param(const std::string& text) const {
    if (!text.empty() && (text.front() == '<' || text.find("://") != std::string::npos))
        return parse_iri_ref(text, PrefixTable::defaults());
    auto colon = text.find(':');
    if (colon != std::string::npos && PrefixTable::defaults().contains(text.substr(0, colon)))
        return PrefixTable::defaults().expand(text);
    if (auto hit = litxval::lookup_term(dicts_, text)) return *hit;
    throw NotFound("UnknownEntity", "no entity named '" + text + "'");
}

Response Portal::sparql(const std::string& query, const Params& params) const {
    auto limit = count_param(params, "limit");
    auto offset = count_param(params, "offset");
    auto ast = sparql::parse_query(query);
    auto table = store_.read([&](const Store& s) { return sparql::evaluate(ast, s); });
    if (limit || offset) {
        std::size_t from = std::min(offset.value_or(0), table.rows.size());
        table.rows.erase(table.rows.begin(), table.rows.begin() + static_cast<std::ptrdiff_t>(from));
        if (limit && table.rows.size() > *limit) table.rows.resize(*limit);
    }
    return {200, sparql::to_json(table), "application/json"};
}

Response Portal::lpg(const Params& params) const {
    const auto& g = need_schema(schema_);
    const auto& from = g.class_sources(required(params, "from"));
    const auto& to = g.class_sources(required(params, "to"));
    std::size_t max_len = count_param(params, "max_len").value_or(linkpath::kDefaultMaxLen);
    if (max_len == 0) throw BadRequest("max_len must be at least 1");
    Page p = page(params);
    return store_.read([&](const Store& s) {
        auto result = linkpath::execute_linkpaths(g, from, to, s, max_len);
        json j = json::parse(result.to_json());
        json rows = j["rows"];
        json sliced = json::array();
        for (std::size_t i = p.offset; i < rows.size() && i - p.offset < p.limit; ++i) sliced.push_back(rows[i]);
        j["rows"] = sliced;
        j["total_rows"] = rows.size();
        j["limit"] = p.limit;
        j["offset"] = p.offset;
        if (corpus_) {
            json ranking = json::array();
            for (const auto& sp : litxval::rank_paths_by_literature(litxval::evidence_from(result, g, s), *corpus_, &s))
                ranking.push_back({{"path", sp.path}, {"score", sp.score}});
            j["literature_ranking"] = ranking;
        }
        return json_response(j);
    });
}

Response Portal::classes() const {
    const auto& g = need_schema(schema_);
    json out = json::array();
    for (const auto& name : g.class_names()) out.push_back({{"name", name}, {"sources", g.class_sources(name).sources}});
    return json_response({{"classes", out}});
}

Response Portal::facets(const std::string& graph_text, const Params& params) const {
    const auto prefixes = PrefixTable::defaults();
    Iri graph = graph_text.find("://") != std::string::npos ? parse_iri_ref(graph_text, prefixes)
                                                             : vocab::graph_iri(graph_text);
    Iri field = parse_iri_ref(required(params, "field"), prefixes);
    std::vector<FacetFilter> filters;
    auto range = params.equal_range("filter");
    for (auto it = range.first; it != range.second; ++it) {
        auto eq = it->second.find('=');
        if (eq == std::string::npos) throw BadRequest("filter must be predicate=value");
        filters.push_back({parse_iri_ref(it->second.substr(0, eq), prefixes), it->second.substr(eq + 1)});
    }
    Page p = page(params);
    auto result = store_.read([&](const Store& s) { return facet_counts(s, graph, field, filters); });
    return {200, result.to_json(p.limit, p.offset), "application/json"};
}

Response Portal::datasets(const Params& params) const {
    std::optional<DomainTag> domain;
    if (auto d = param(params, "domain"); d && !d->empty()) {
        domain = domain_from_name(*d);
        if (!domain) throw BadRequest("unknown domain '" + *d + "'");
    }
    return store_.read([&](const Store& s) {
        json out = json::array();
        for (const auto& info : s.graphs()) {
            if (domain && info.domain != *domain) continue;
            const auto& pr = info.provenance;
            out.push_back({{"graph", info.graph.str()},
                           {"name", vocab::graph_name(info.graph)},
                           {"domain", std::string(domain_name(info.domain))},
                           {"provenance", {{"what", pr.what}, {"when", pr.when}, {"where", pr.where}, {"why", pr.why}, {"who", pr.who}}},
                           {"triples", s.match({std::nullopt, std::nullopt, std::nullopt, info.graph}).size()}});
        }
        return json_response({{"datasets", out}});
    });
}

Response Portal::network(const Params& params) const {
    const auto& g = need_schema(schema_);
    const auto& from = g.class_sources(required(params, "from"));
    const auto& to = g.class_sources(required(params, "to"));
    std::optional<Iri> a, b;
    if (auto v = param(params, "a"); v && !v->empty()) a = entity_param(*v);
    if (auto v = param(params, "b"); v && !v->empty()) b = entity_param(*v);
    return store_.read([&](const Store& s) {
        auto result = linkpath::execute_linkpaths(g, from, to, s);
        return Response{200, network_export(result, g, s, a, b).to_json(), "application/json"};
    });
}

Response Portal::literature(const Params& params) const {
    if (!corpus_) throw NotFound("NotConfigured", "no literature corpus loaded");
    Iri a = entity_param(required(params, "a"));
    Iri b = entity_param(required(params, "b"));
    return store_.read([&](const Store& s) {
        auto report = litxval::cross_validate(a, b, *corpus_, s);
        json j = json::parse(report.to_json());
        j["network"] = json::parse(network_export(report).to_json());
        json docs = json::array();
        std::set<std::string> listed;
        for (const auto* set : {&report.both, &report.a_with_b_associations, &report.b_with_a_associations})
            listed.insert(set->begin(), set->end());
        for (const auto& d : corpus_->documents())
            if (listed.count(d.pmid)) docs.push_back({{"pmid", d.pmid}, {"year", d.year}, {"title", d.title}});
        j["documents"] = docs;
        return json_response(j);
    });
}

Response Portal::entity(const std::string& iri_text, const Params& params) const {
    Iri e = entity_param(iri_text);
    Page p = page(params);
    return store_.read([&](const Store& s) {
        Iri rep = s.resolve_entity(e);
        auto members = s.equivalents(rep);
        std::vector<Triple> triples;
        for (const auto& m : members) {
            auto out = s.match({m, std::nullopt, std::nullopt, std::nullopt});
            auto in = s.match({std::nullopt, std::nullopt, Term(m), std::nullopt});
            triples.insert(triples.end(), out.begin(), out.end());
            triples.insert(triples.end(), in.begin(), in.end());
        }
        std::sort(triples.begin(), triples.end());
        triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
        std::vector<std::string> eq;
        for (const auto& m : members) eq.push_back(m.str());
        json rows = slice<Triple>(triples, p, [](const Triple& t) {
            return json{{"subject", t.subject.str()},
                        {"predicate", t.predicate.str()},
                        {"object", term_json(t.object)},
                        {"graph", t.graph.str()}};
        });
        return json_response({{"entity", rep.str()},
                              {"equivalents", eq},
                              {"triples", rows},
                              {"total", triples.size()},
                              {"limit", p.limit},
                              {"offset", p.offset}});
    });
}

Response Portal::handle(const std::string& method, const std::string& path, const Params& params,
                        const std::string& body) const {
    auto tail = [&](std::string_view prefix) -> std::optional<std::string> {
        if (path.size() > prefix.size() && path.compare(0, prefix.size(), prefix) == 0)
            return path.substr(prefix.size());
        return std::nullopt;
    };
    try {
        if (path == "/sparql") {
            if (method == "POST") {
                auto q = param(params, "query");
                return sparql(q && body.empty() ? *q : body, params);
            }
            if (method == "GET") return sparql(required(params, "query"), params);
        }
        if (method == "GET") {
            if (path == "/lpg") return lpg(params);
            if (path == "/classes") return classes();
            if (path == "/datasets") return datasets(params);
            if (path == "/network") return network(params);
            if (path == "/literature") return literature(params);
            if (auto g = tail("/facets/")) return facets(*g, params);
            if (auto e = tail("/entity/")) return entity(*e, params);
        }
        throw NotFound("NotFound", "no route for " + method + " " + path);
    } catch (const Error& e) {
        return error_response(e);
    } catch (const std::exception& e) {
        return json_response({{"error", "Internal"}, {"detail", e.what()}}, 500);
    }
}

namespace {

void install_routes(httplib::Server& http, const Portal& portal) {
    auto route = [&portal](const httplib::Request& req, httplib::Response& res) {
        Params params(req.params.begin(), req.params.end());
        Response r = portal.handle(req.method, req.path, params, req.body);
        res.status = r.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_content(r.body, r.content_type);
    };
    http.Post("/sparql", route);
    http.Get(R"(/.*)", route);
    // no SO_REUSEPORT: a port held by another server must fail to bind
    http.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
    });
}

} // namespace

int Portal::start(const std::string& host, int port) {
    stop();
    server_ = std::make_unique<Server>();
    install_routes(server_->http, *this);
    int bound = port;
    if (port == 0) {
        bound = server_->http.bind_to_any_port(host);
        if (bound < 0) throw ConfigError("cannot bind " + host);
    } else if (!server_->http.bind_to_port(host, port)) {
        throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
    }
    server_->thread = std::thread([this] { server_->http.listen_after_bind(); });
    server_->http.wait_until_ready();
    return bound;
}

void Portal::run(const std::string& host, int port) {
    stop();
    server_ = std::make_unique<Server>();
    install_routes(server_->http, *this);
    if (!server_->http.bind_to_port(host, port))
        throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
    server_->http.listen_after_bind();
}

void Portal::stop() {
    if (!server_) return;
    server_->http.stop();
    if (server_->thread.joinable()) server_->thread.join();
    server_.reset();
}

std::unique_ptr<Portal> make_portal(const PortalConfig& config) {
    Store store = load_store(config.store_dir);
    std::optional<linkpath::SchemaGraph> schema;
    if (config.schema) schema = linkpath::read_schema_graph(*config.schema);
    std::vector<litxval::Dictionary> dicts;
    for (const auto& [kind, path] : config.dictionaries) dicts.push_back(litxval::read_dictionary(kind, path));
    std::optional<litxval::CorpusIndex> corpus;
    if (config.corpus) corpus.emplace(litxval::read_corpus(*config.corpus), dicts);
    return std::make_unique<Portal>(std::move(store), std::move(schema), std::move(dicts), std::move(corpus));
}

} // namespace chemlink::portal
