#include "path_oracle.hpp"

#include "chemlink/vocabulary.hpp"

#include <functional>

namespace oracle {

using namespace chemlink;

linkpath::SchemaGraph RandomSchema::graph() const {
    linkpath::SchemaGraph g;
    for (int i = 0; i < nodes; ++i) g.add_node({name(i), "record", std::nullopt});
    for (const auto& [a, b] : edges) {
        Iri pa("http://ex.org/link/" + name(a) + "_" + name(b));
        g.add_edge({name(a), name(b), pa, std::nullopt});
    }
    g.add_class(from_class());
    g.add_class(to_class());
    return g;
}

linkpath::ClassSourceSet RandomSchema::from_class() const {
    linkpath::ClassSourceSet c{"From", {}};
    for (int i : from) c.sources.push_back(name(i));
    return c;
}

linkpath::ClassSourceSet RandomSchema::to_class() const {
    linkpath::ClassSourceSet c{"To", {}};
    for (int i : to) c.sources.push_back(name(i));
    return c;
}

RandomSchema random_schema(std::mt19937& rng, int max_nodes) {
    RandomSchema s;
    s.nodes = std::uniform_int_distribution<int>(2, max_nodes)(rng);
    double density = std::uniform_real_distribution<double>(0.15, 0.6)(rng);
    std::bernoulli_distribution coin(density);
    for (int a = 0; a < s.nodes; ++a)
        for (int b = a + 1; b < s.nodes; ++b)
            if (coin(rng)) s.edges.emplace_back(a, b);
    std::bernoulli_distribution pick(0.3);
    for (int i = 0; i < s.nodes; ++i) {
        if (pick(rng)) s.from.push_back(i);
        if (pick(rng)) s.to.push_back(i);
    }
    if (s.from.empty()) s.from.push_back(0);
    if (s.to.empty()) s.to.push_back(s.nodes - 1);
    return s;
}

std::set<std::vector<std::string>> all_simple_paths(const RandomSchema& s, std::size_t max_len) {
    std::vector<std::vector<bool>> adj(s.nodes, std::vector<bool>(s.nodes, false));
    for (const auto& [a, b] : s.edges) adj[a][b] = adj[b][a] = true;
    std::vector<bool> is_target(s.nodes, false);
    for (int t : s.to) is_target[t] = true;

    std::set<std::vector<std::string>> out;
    std::vector<int> stack;
    std::vector<bool> on_path(s.nodes, false);
    std::function<void()> walk = [&] {
        int here = stack.back();
        if (stack.size() > 1 && is_target[here]) {
            std::vector<std::string> p;
            for (int n : stack) p.push_back(RandomSchema::name(n));
            out.insert(p);
        }
        if (stack.size() - 1 == max_len) return;
        for (int next = 0; next < s.nodes; ++next) {
            if (!adj[here][next] || on_path[next]) continue;
            on_path[next] = true;
            stack.push_back(next);
            walk();
            stack.pop_back();
            on_path[next] = false;
        }
    };
    for (int f : s.from) {
        stack = {f};
        on_path.assign(s.nodes, false);
        on_path[f] = true;
        walk();
    }
    return out;
}

} // namespace oracle
