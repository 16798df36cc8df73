#include "chemlink/linkpath.hpp"

#include "chemlink/error.hpp"
#include "chemlink/sparql/evaluator.hpp"
#include "chemlink/store_io.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace chemlink::linkpath {

std::pair<std::string, std::string> SchemaGraph::key(std::string_view a, std::string_view b) {
    if (b < a) std::swap(a, b);
    return {std::string(a), std::string(b)};
}

void SchemaGraph::add_node(NodeSpec node) {
    adjacency_.try_emplace(node.name);
    std::string name = node.name;
    nodes_.insert_or_assign(std::move(name), std::move(node));
}

bool SchemaGraph::add_edge(EdgeSpec edge) {
    if (!has_node(edge.a)) throw SchemaError("edge names unknown node '" + edge.a + "'");
    if (!has_node(edge.b)) throw SchemaError("edge names unknown node '" + edge.b + "'");
    if (edge.a == edge.b) throw SchemaError("self-loop on '" + edge.a + "'");
    if (!edge.pred_a && !edge.pred_b)
        throw SchemaError("edge " + edge.a + " - " + edge.b + " has no join predicate");
    auto k = key(edge.a, edge.b);
    if (edges_.count(k)) return false;
    if (edge.b < edge.a) {
        std::swap(edge.a, edge.b);
        std::swap(edge.pred_a, edge.pred_b);
    }
    auto link = [&](const std::string& from, const std::string& to) {
        auto& adj = adjacency_[from];
        adj.insert(std::upper_bound(adj.begin(), adj.end(), to), to);
    };
    link(edge.a, edge.b);
    link(edge.b, edge.a);
    edges_.emplace(std::move(k), std::move(edge));
    return true;
}

bool SchemaGraph::remove_edge(std::string_view a, std::string_view b) {
    auto it = edges_.find(key(a, b));
    if (it == edges_.end()) return false;
    auto unlink = [&](std::string_view from, std::string_view to) {
        auto& adj = adjacency_.find(from)->second;
        adj.erase(std::find(adj.begin(), adj.end(), to));
    };
    unlink(a, b);
    unlink(b, a);
    edges_.erase(it);
    return true;
}

void SchemaGraph::add_class(ClassSourceSet cls) {
    if (cls.sources.empty()) throw ClassError("class '" + cls.class_name + "' has no data sources");
    for (const auto& s : cls.sources)
        if (!has_node(s)) throw SchemaError("class '" + cls.class_name + "' names unknown node '" + s + "'");
    std::string name = cls.class_name;
    classes_.insert_or_assign(std::move(name), std::move(cls));
}

bool SchemaGraph::has_node(std::string_view name) const { return nodes_.find(name) != nodes_.end(); }

const NodeSpec& SchemaGraph::node(std::string_view name) const {
    auto it = nodes_.find(name);
    if (it == nodes_.end()) throw SchemaError("unknown node '" + std::string(name) + "'");
    return it->second;
}

const EdgeSpec* SchemaGraph::edge(std::string_view a, std::string_view b) const {
    auto it = edges_.find(key(a, b));
    return it == edges_.end() ? nullptr : &it->second;
}

const std::vector<std::string>& SchemaGraph::neighbors(std::string_view name) const {
    auto it = adjacency_.find(name);
    if (it == adjacency_.end()) throw SchemaError("unknown node '" + std::string(name) + "'");
    return it->second;
}

std::vector<std::string> SchemaGraph::node_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : nodes_) out.push_back(name);
    return out;
}

std::vector<EdgeSpec> SchemaGraph::edges() const {
    std::vector<EdgeSpec> out;
    for (const auto& [_, e] : edges_) out.push_back(e);
    return out;
}

const ClassSourceSet& SchemaGraph::class_sources(std::string_view class_name) const {
    auto it = classes_.find(class_name);
    if (it == classes_.end()) throw ClassError("unknown class '" + std::string(class_name) + "'");
    return it->second;
}

std::vector<std::string> SchemaGraph::class_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : classes_) out.push_back(name);
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

} // namespace

SchemaGraph build_schema_graph(std::string_view descriptor) {
    SchemaGraph g;
    std::istringstream in{std::string(descriptor)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto fail = [&](const std::string& msg) {
            throw SchemaError("descriptor line " + std::to_string(line_no) + ": " + msg);
        };
        auto iri = [&](const std::string& text) -> std::optional<Iri> {
            if (text == "-") return std::nullopt;
            try {
                return parse_iri_ref(text, g.prefixes());
            } catch (const Error& e) {
                fail(e.what());
            }
            return std::nullopt;
        };
        auto w = words(line);
        const std::string& kw = w[0];
        if (kw == "prefix") {
            if (w.size() != 4 || w[2] != "=") fail("expected: prefix <name> = <namespace>");
            std::string ns = w[3];
            if (ns.size() > 1 && ns.front() == '<' && ns.back() == '>') ns = ns.substr(1, ns.size() - 2);
            g.prefixes().declare(w[1], ns);
        } else if (kw == "node") {
            if (w.size() < 2) fail("node needs a name");
            NodeSpec n{w[1], "record", std::nullopt};
            for (std::size_t i = 2; i < w.size(); ++i) {
                auto eq = w[i].find('=');
                if (eq == std::string::npos) fail("expected key=value, got '" + w[i] + "'");
                std::string k = w[i].substr(0, eq), v = w[i].substr(eq + 1);
                if (k == "kind") n.kind = v;
                else if (k == "entity") n.entity = iri(v);
                else fail("unknown node attribute '" + k + "'");
            }
            g.add_node(std::move(n));
        } else if (kw == "edge") {
            if (w.size() != 5) fail("expected: edge <a> <b> <pred-a|-> <pred-b|->");
            try {
                g.add_edge({w[1], w[2], iri(w[3]), iri(w[4])});
            } catch (const SchemaError& e) {
                fail(e.what());
            }
        } else if (kw == "class") {
            auto eq = line.find('=');
            if (eq == std::string_view::npos) fail("expected: class <name> = <node...>");
            std::string name(trim(line.substr(5, eq - 5)));
            if (name.empty()) fail("class needs a name");
            try {
                g.add_class({name, words(line.substr(eq + 1))});
            } catch (const Error& e) {
                fail(e.what());
            }
        } else {
            fail("unknown declaration '" + kw + "'");
        }
    }
    return g;
}

SchemaGraph read_schema_graph(const std::filesystem::path& path) { return build_schema_graph(read_file(path)); }

namespace {

std::vector<std::string> checked_sources(const SchemaGraph& g, const ClassSourceSet& cls) {
    if (cls.sources.empty()) throw ClassError("class '" + cls.class_name + "' has no data sources");
    std::vector<std::string> out = cls.sources;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (const auto& s : out)
        if (!g.has_node(s)) throw SchemaError("class '" + cls.class_name + "' names unknown node '" + s + "'");
    return out;
}

} // namespace

std::vector<LinkPath> enumerate_paths(const SchemaGraph& g, const ClassSourceSet& from, const ClassSourceSet& to,
                                      std::size_t max_len) {
    auto starts = checked_sources(g, from);
    auto ends = checked_sources(g, to);
    if (from.class_name == to.class_name) return {};
    std::set<std::string, std::less<>> targets(ends.begin(), ends.end());

    std::set<LinkPath> found;
    LinkPath path;
    std::set<std::string, std::less<>> on_path;
    std::function<void(const std::string&)> walk = [&](const std::string& u) {
        if (path.size() > 1 && targets.count(u)) found.insert(path);
        if (path.size() - 1 >= max_len) return;
        for (const auto& v : g.neighbors(u)) {
            if (on_path.count(v)) continue;
            path.push_back(v);
            on_path.insert(v);
            walk(v);
            on_path.erase(v);
            path.pop_back();
        }
    };
    for (const auto& a : starts) {
        path = {a};
        on_path = {a};
        walk(a);
    }

    std::vector<LinkPath> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const LinkPath& x, const LinkPath& y) { return x.size() < y.size(); });
    return out;
}

std::string format_path(const LinkPath& path) {
    std::string out = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += ", ";
        out += path[i];
    }
    return out + "]";
}

std::string paths_to_json(const std::vector<LinkPath>& paths) { return nlohmann::json(paths).dump(); }

namespace {

std::string sanitize(std::string_view name) {
    std::string out;
    for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_';
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "n_" + out;
    return out;
}

class QueryWriter {
public:
    explicit QueryWriter(const PrefixTable& prefixes) : prefixes_(prefixes) {}

    std::string fresh(std::string_view base) {
        std::string name = sanitize(base);
        std::string candidate = name;
        for (int i = 2; used_.count(candidate); ++i) candidate = name + "_" + std::to_string(i);
        used_.insert(candidate);
        return candidate;
    }

    void triple(const std::string& s, const Iri& p, const std::string& o) {
        body_ += "  ?" + s + " " + term(p) + " ?" + o + " .\n";
    }

    std::string finish(const std::vector<std::string>& projection) const {
        std::string out;
        for (const auto& [prefix, ns] : declared_) out += "PREFIX " + prefix + ": <" + ns + ">\n";
        out += "SELECT";
        for (const auto& v : projection) out += " ?" + v;
        return out + " WHERE {\n" + body_ + "}\n";
    }

private:
    std::string term(const Iri& iri) {
        if (auto pname = prefixes_.compact(iri)) {
            std::string prefix = pname->substr(0, pname->find(':'));
            declared_.emplace(prefix, *prefixes_.lookup(prefix));
            return *pname;
        }
        return "<" + iri.str() + ">";
    }

    const PrefixTable& prefixes_;
    std::set<std::string> used_;
    std::map<std::string, std::string> declared_;
    std::string body_;
};

} // namespace

PathQuery path_to_query(const LinkPath& path, const SchemaGraph& g) {
    if (path.size() < 2) throw SchemaError("a link path needs at least one edge");
    QueryWriter w(g.prefixes());
    std::vector<std::string> vars;
    for (const auto& n : path) {
        g.node(n);
        vars.push_back(w.fresh(n));
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const EdgeSpec* e = g.edge(path[i], path[i + 1]);
        if (!e) throw SchemaError("no edge " + path[i] + " - " + path[i + 1]);
        const auto& pu = e->pred_for(path[i]);
        const auto& pv = e->pred_for(path[i + 1]);
        if (pu && !pv) {
            w.triple(vars[i], *pu, vars[i + 1]);
        } else if (!pu && pv) {
            w.triple(vars[i + 1], *pv, vars[i]);
        } else {
            std::string j = w.fresh(path[i] + "_" + path[i + 1]);
            w.triple(vars[i], *pu, j);
            w.triple(vars[i + 1], *pv, j);
        }
    }
    PathQuery q;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& entity = g.node(path[i]).entity;
        if (!entity) {
            q.entity_vars.push_back(vars[i]);
            continue;
        }
        std::string ev = w.fresh(path[i] + "_entity");
        w.triple(vars[i], *entity, ev);
        q.entity_vars.push_back(ev);
    }
    q.text = w.finish(q.entity_vars);
    return q;
}

std::vector<std::size_t> CombinedResult::failed() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < paths.size(); ++i)
        if (paths[i].error) out.push_back(i);
    return out;
}

std::string CombinedResult::to_json() const {
    using nlohmann::json;
    json jpaths = json::array();
    for (const auto& p : paths) {
        jpaths.push_back({{"nodes", p.path},
                          {"notation", format_path(p.path)},
                          {"query", p.query},
                          {"rows", p.table.rows.size()},
                          {"error", p.error ? json(*p.error) : json(nullptr)}});
    }
    json jrows = json::array();
    for (const auto& r : rows) jrows.push_back({{"from", term_json(r.from)}, {"to", term_json(r.to)}, {"paths", r.paths}});
    return json{{"from", from_class}, {"to", to_class}, {"attempted", paths.size()}, {"failed", failed()},
                {"paths", jpaths},    {"rows", jrows}}
        .dump();
}

CombinedResult execute_linkpaths(const SchemaGraph& g, const ClassSourceSet& from, const ClassSourceSet& to,
                                 const Store& store, std::size_t max_len) {
    CombinedResult out;
    out.from_class = from.class_name;
    out.to_class = to.class_name;
    auto resolve = [&](const Term& t) -> Term {
        if (const auto* iri = std::get_if<Iri>(&t)) return store.resolve_entity(*iri);
        return t;
    };
    std::map<std::pair<Term, Term>, std::set<std::size_t>> merged;
    for (const auto& path : enumerate_paths(g, from, to, max_len)) {
        PathOutcome o;
        o.path = path;
        try {
            o.query = path_to_query(path, g).text;
            o.table = sparql::run_query(o.query, store);
        } catch (const Error& e) {
            o.error = e.what();
        }
        std::size_t index = out.paths.size();
        for (const auto& row : o.table.rows) {
            if (!row.front() || !row.back()) continue;
            merged[{resolve(*row.front()), resolve(*row.back())}].insert(index);
        }
        out.paths.push_back(std::move(o));
    }
    for (auto& [k, idx] : merged) out.rows.push_back({k.first, k.second, {idx.begin(), idx.end()}});
    std::sort(out.rows.begin(), out.rows.end(), [](const CombinedRow& a, const CombinedRow& b) {
        if (int c = sparql::compare_cells(a.from, b.from)) return c < 0;
        return sparql::compare_cells(a.to, b.to) < 0;
    });
    return out;
}

} // namespace chemlink::linkpath
