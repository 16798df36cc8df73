#include "chemlink/store_io.hpp"

#include "chemlink/error.hpp"
#include "chemlink/ntriples.hpp"
#include "chemlink/vocabulary.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace chemlink {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

std::string registry_to_json(const Store& store) {
    json graphs = json::array();
    for (const auto& info : store.graphs()) {
        graphs.push_back({
            {"graph", info.graph.str()},
            {"domain", std::string(domain_name(info.domain))},
            {"provenance",
             {{"what", info.provenance.what},
              {"when", info.provenance.when},
              {"where", info.provenance.where},
              {"why", info.provenance.why},
              {"who", info.provenance.who}}},
        });
    }
    return json{{"graphs", graphs}}.dump(2) + "\n";
}

void registry_from_json(Store& store, const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("registry is not valid JSON: ") + e.what());
    }
    if (!doc.contains("graphs") || !doc["graphs"].is_array()) throw ConfigError("registry lacks a 'graphs' array");
    for (const auto& g : doc["graphs"]) {
        try {
            auto domain = domain_from_name(g.at("domain").get<std::string>());
            if (!domain) throw ConfigError("unknown domain tag '" + g.at("domain").get<std::string>() + "'");
            const auto& p = g.at("provenance");
            store.register_graph(GraphInfo{
                Iri(g.at("graph").get<std::string>()),
                *domain,
                ProvenanceRecord{p.at("what").get<std::string>(), p.at("when").get<std::string>(),
                                 p.at("where").get<std::string>(), p.at("why").get<std::string>(),
                                 p.at("who").get<std::string>()},
            });
        } catch (const json::exception& e) {
            throw ConfigError(std::string("bad registry entry: ") + e.what());
        }
    }
}

namespace {

std::string graph_file_name(const Iri& graph) {
    if (graph.str().starts_with(vocab::kGraphBase)) return percent_encode(vocab::graph_name(graph)) + ".nt";
    return percent_encode(graph.str()) + ".nt";
}

} // namespace

void save_store(const Store& store, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "graphs");
    write_file(dir / "registry.json", registry_to_json(store));
    for (const auto& info : store.graphs())
        write_file(dir / "graphs" / graph_file_name(info.graph), export_graph(store, info.graph));
}

Store load_store(const std::filesystem::path& dir) {
    Store store;
    registry_from_json(store, read_file(dir / "registry.json"));
    for (const auto& info : store.graphs()) {
        auto file = dir / "graphs" / graph_file_name(info.graph);
        if (std::filesystem::exists(file)) import_graph(store, read_file(file), info.graph);
    }
    return store;
}

} // namespace chemlink
