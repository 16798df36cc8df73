#pragma once

#include "chemlink/linkpath.hpp"
#include "chemlink/litxval.hpp"
#include "chemlink/store.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chemlink::portal {

using Params = std::multimap<std::string, std::string>;

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

inline constexpr std::size_t kDefaultPageSize = 100;

// Read-only HTTP surface over a loaded store. Every handler is a pure
// function of its inputs and the store snapshot; `handle` dispatches by
// method and path so routes can be exercised without a socket.
//
//   POST /sparql                query text in the body (or ?query=)
//   GET  /lpg?from&to           enumerated paths and combined rows
//   GET  /classes               class catalog of the schema graph
//   GET  /facets/{graph}?field&filter=pred=value
//   GET  /datasets?domain=      provenance records
//   GET  /network?from&to[&a&b] NetworkDoc over link-path results
//   GET  /literature?a&b        cross-validation report
//   GET  /entity/{iri}          triples about the resolved entity
//
// Errors are {"error", "detail", "position"?} with a 4xx/5xx status.
class Portal {
public:
    Portal(Store store, std::optional<linkpath::SchemaGraph> schema = std::nullopt,
           std::vector<litxval::Dictionary> dicts = {}, std::optional<litxval::CorpusIndex> corpus = std::nullopt);
    ~Portal();

    Response handle(const std::string& method, const std::string& path, const Params& params,
                    const std::string& body = {}) const;

    Response sparql(const std::string& query, const Params& params) const;
    Response lpg(const Params& params) const;
    Response classes() const;
    Response facets(const std::string& graph, const Params& params) const;
    Response datasets(const Params& params) const;
    Response network(const Params& params) const;
    Response literature(const Params& params) const;
    Response entity(const std::string& iri, const Params& params) const;

    // Binds (port 0 picks a free port) and serves on a background thread.
    // Returns the bound port; throws ConfigError when binding fails.
    int start(const std::string& host, int port);
    // Binds and serves on the calling thread until stop().
    void run(const std::string& host, int port);
    void stop();

    const SharedStore& store() const noexcept { return store_; }

private:
    struct Server;

    Iri entity_param(const std::string& text) const;

    SharedStore store_;
    std::optional<linkpath::SchemaGraph> schema_;
    std::vector<litxval::Dictionary> dicts_;
    std::optional<litxval::CorpusIndex> corpus_;
    std::unique_ptr<Server> server_;
};

struct PortalConfig {
    std::filesystem::path store_dir;
    std::optional<std::filesystem::path> schema;
    std::optional<std::filesystem::path> corpus;
    std::vector<std::pair<litxval::EntityKind, std::filesystem::path>> dictionaries;
};

// Loads everything named by `config`; throws ConfigError / ParseError on
// invalid input.
std::unique_ptr<Portal> make_portal(const PortalConfig& config);

} // namespace chemlink::portal
