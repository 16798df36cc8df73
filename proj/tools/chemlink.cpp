#include "chemlink/analytics.hpp"
#include "chemlink/error.hpp"
#include "chemlink/ingest.hpp"
#include "chemlink/linkpath.hpp"
#include "chemlink/litxval.hpp"
#include "chemlink/portal.hpp"
#include "chemlink/sparql/evaluator.hpp"
#include "chemlink/sparql/result.hpp"
#include "chemlink/store_io.hpp"
#include "chemlink/vocabulary.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <iterator>

namespace fs = std::filesystem;
using namespace chemlink;

namespace {

Store open_store(const fs::path& dir, bool create) {
    if (create && !fs::exists(dir / "registry.json")) return Store{};
    return load_store(dir);
}

std::pair<litxval::EntityKind, fs::path> dict_arg(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("dictionary must be kind:path, got '" + text + "'");
    auto kind = litxval::kind_from_name(text.substr(0, colon));
    if (!kind) throw ConfigError("unknown dictionary kind '" + text.substr(0, colon) + "'");
    return {*kind, text.substr(colon + 1)};
}

std::vector<litxval::Dictionary> read_dicts(const std::vector<std::string>& args) {
    std::vector<litxval::Dictionary> out;
    for (const auto& a : args) {
        auto [kind, path] = dict_arg(a);
        out.push_back(litxval::read_dictionary(kind, path));
    }
    return out;
}

Iri entity_arg(const std::string& text, const std::vector<litxval::Dictionary>& dicts) {
    if (text.find("://") != std::string::npos || (!text.empty() && text.front() == '<'))
        return parse_iri_ref(text, PrefixTable::defaults());
    auto colon = text.find(':');
    if (colon != std::string::npos && PrefixTable::defaults().contains(text.substr(0, colon)))
        return PrefixTable::defaults().expand(text);
    if (auto hit = litxval::lookup_term(dicts, text)) return *hit;
    throw ConfigError("unknown entity '" + text + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chemlink: linked chemogenomics store, query engine and portal"};
    app.require_subcommand(1);
    std::string store_dir = "store";
    app.add_option("--store", store_dir, "Store directory")->capture_default_str();

    auto* ingest = app.add_subcommand("ingest", "Load datasets described by manifests into the store");
    std::vector<std::string> manifests;
    bool ingest_json = false;
    ingest->add_option("manifests", manifests, "Manifest files")->required();
    ingest->add_flag("--json", ingest_json, "Print load reports as JSON");

    auto* query = app.add_subcommand("query", "Run a SPARQL query against the store");
    std::string query_file;
    std::string format = "tsv";
    query->add_option("file", query_file, "Query file, or - for stdin")->required();
    query->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();

    auto* lpg = app.add_subcommand("lpg", "Enumerate link paths between two classes");
    std::string from_class, to_class, schema_file;
    std::size_t max_len = linkpath::kDefaultMaxLen;
    bool execute = false;
    lpg->add_option("from", from_class)->required();
    lpg->add_option("to", to_class)->required();
    lpg->add_option("--schema", schema_file)->required();
    lpg->add_option("--max-len", max_len)->capture_default_str();
    lpg->add_flag("--execute", execute, "Run the path queries against the store");

    auto* serve = app.add_subcommand("serve", "Serve the portal over HTTP");
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string serve_schema, serve_corpus;
    std::vector<std::string> serve_dicts;
    serve->add_option("--host", host)->capture_default_str();
    serve->add_option("--port", port)->capture_default_str();
    serve->add_option("--schema", serve_schema);
    serve->add_option("--corpus", serve_corpus);
    serve->add_option("--dict", serve_dicts, "kind:path dictionary TSV");

    auto* validate = app.add_subcommand("validate", "Cross-validate two entities against a corpus");
    std::string a_text, b_text, corpus_file;
    std::vector<std::string> dict_args;
    validate->add_option("a", a_text)->required();
    validate->add_option("b", b_text)->required();
    validate->add_option("--corpus", corpus_file)->required();
    validate->add_option("--dict", dict_args, "kind:path dictionary TSV");

    auto* extract = app.add_subcommand("extract", "Extract entity mentions from a corpus");
    std::string extract_corpus;
    std::vector<std::string> extract_dicts;
    bool load_lit = false;
    extract->add_option("corpus", extract_corpus)->required();
    extract->add_option("dicts", extract_dicts, "kind:path dictionary TSVs")->required();
    extract->add_flag("--load", load_lit, "Write the literature graph into the store");

    auto* coverage = app.add_subcommand("coverage", "Record coverage of overlapping sources");
    std::vector<std::string> sources;
    std::string key_pred, pair_preds;
    bool unordered = false, coverage_json = false;
    coverage->add_option("sources", sources, "name=graph pairs")->required();
    auto* key_opt = coverage->add_option("--key", key_pred, "Predicate whose objects are the keys");
    auto* pair_opt = coverage->add_option("--pair", pair_preds, "predA,predB: keys are object pairs");
    key_opt->excludes(pair_opt);
    coverage->add_flag("--unordered", unordered);
    coverage->add_flag("--json", coverage_json);

    auto* rank = app.add_subcommand("adverse", "Rank pathways for a side effect");
    std::string side_effect;
    std::size_t top_k = 5;
    rank->add_option("side_effect", side_effect)->required();
    rank->add_option("-k", top_k)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            Store store = open_store(store_dir, true);
            nlohmann::json reports = nlohmann::json::array();
            for (const auto& m : manifests) {
                auto report = ingest::load_manifest_file(store, m);
                if (ingest_json) reports.push_back(nlohmann::json::parse(report.to_json()));
                else std::cout << report.summary() << "\n";
                for (const auto& e : report.errors) std::cerr << m << ": row " << e.row << ": " << e.message << "\n";
            }
            save_store(store, store_dir);
            if (ingest_json) std::cout << reports.dump(2) << "\n";
        } else if (*query) {
            std::string text;
            if (query_file == "-") text.assign(std::istreambuf_iterator<char>(std::cin), {});
            else text = read_file(query_file);
            Store store = open_store(store_dir, false);
            auto table = sparql::run_query(text, store);
            std::cout << (format == "json" ? sparql::to_json(table) + "\n" : sparql::to_tsv(table));
        } else if (*lpg) {
            auto g = linkpath::read_schema_graph(schema_file);
            const auto& from = g.class_sources(from_class);
            const auto& to = g.class_sources(to_class);
            if (execute) {
                Store store = open_store(store_dir, false);
                std::cout << linkpath::execute_linkpaths(g, from, to, store, max_len).to_json() << "\n";
            } else {
                for (const auto& p : linkpath::enumerate_paths(g, from, to, max_len))
                    std::cout << linkpath::format_path(p) << "\n";
            }
        } else if (*serve) {
            portal::PortalConfig config{store_dir, {}, {}, {}};
            if (!serve_schema.empty()) config.schema = serve_schema;
            if (!serve_corpus.empty()) config.corpus = serve_corpus;
            for (const auto& d : serve_dicts) config.dictionaries.push_back(dict_arg(d));
            auto p = portal::make_portal(config);
            std::cerr << "serving on " << host << ":" << port << "\n";
            p->run(host, port);
        } else if (*validate) {
            auto dicts = read_dicts(dict_args);
            litxval::CorpusIndex index(litxval::read_corpus(corpus_file), dicts);
            Store store = open_store(store_dir, true);
            auto report = litxval::cross_validate(entity_arg(a_text, dicts), entity_arg(b_text, dicts), index, store);
            std::cout << report.to_json() << "\n";
        } else if (*extract) {
            auto dicts = read_dicts(extract_dicts);
            litxval::CorpusIndex index(litxval::read_corpus(extract_corpus), dicts);
            std::cout << "pmid\tentity\tkind\tstart\tend\n";
            for (const auto& m : index.mentions())
                std::cout << m.pmid << '\t' << m.entity.str() << '\t' << litxval::kind_name(m.kind) << '\t' << m.start
                          << '\t' << m.end << '\n';
            if (load_lit) {
                Store store = open_store(store_dir, true);
                std::cerr << litxval::load_literature(store, index) << " literature triples added\n";
                save_store(store, store_dir);
            }
        } else if (*coverage) {
            if (key_pred.empty() == pair_preds.empty()) throw ConfigError("exactly one of --key or --pair is required");
            Store store = open_store(store_dir, false);
            auto prefixes = PrefixTable::defaults();
            std::vector<analytics::CoverageSource> inputs;
            for (const auto& s : sources) {
                auto eq = s.find('=');
                if (eq == std::string::npos) throw ConfigError("source must be name=graph, got '" + s + "'");
                std::string graph_text = s.substr(eq + 1);
                Iri graph = graph_text.find("://") != std::string::npos ? Iri(graph_text) : vocab::graph_iri(graph_text);
                store.graph_info(graph);
                analytics::KeySet keys;
                if (!key_pred.empty()) {
                    keys = analytics::value_keys(store, graph, parse_iri_ref(key_pred, prefixes));
                } else {
                    auto comma = pair_preds.find(',');
                    if (comma == std::string::npos) throw ConfigError("--pair takes predA,predB");
                    keys = analytics::pair_keys(store, graph, parse_iri_ref(pair_preds.substr(0, comma), prefixes),
                                                parse_iri_ref(pair_preds.substr(comma + 1), prefixes), unordered);
                }
                inputs.push_back({s.substr(0, eq), std::move(keys)});
            }
            auto report = analytics::coverage_report(inputs);
            std::cout << (coverage_json ? report.to_json() + "\n" : report.to_text());
        } else if (*rank) {
            Store store = open_store(store_dir, false);
            Iri se = side_effect.find(':') != std::string::npos
                         ? entity_arg(side_effect, {})
                         : ingest::local_iri(ingest::IdKind::SideEffectName, side_effect);
            for (const auto& s : analytics::rank_pathways_for_side_effect(se, top_k, store))
                std::cout << s.pathway.str() << '\t' << s.association_path_count << '\t' << s.efficient_gene_count << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
