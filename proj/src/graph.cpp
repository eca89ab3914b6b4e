#include "likednet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "likednet/errors.hpp"
#include "likednet/rng.hpp"
#include "likednet/text.hpp"

namespace likednet {

void Graph::rebuild_adjacency() {
    adj.assign(n, {});
    degree.assign(n, 0);
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) continue;  // validate() reports these
        adj[u].push_back(v);
        if (v != u) adj[v].push_back(u);
        ++degree[u];
        if (v != u) ++degree[v];
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
}

Graph Graph::make(int n, std::vector<std::pair<int, int>> edge_list) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    for (auto& [u, v] : edge_list) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") out of range for n=" + std::to_string(n));
        if (u == v)
            throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
    Graph g;
    g.n = n;
    g.edges = std::move(edge_list);
    g.rebuild_adjacency();
    return g;
}

std::vector<std::string> validate(const Graph& g) {
    std::vector<std::string> out;
    if (g.n < 0) out.push_back("negative vertex count");
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : g.edges) {
        if (u < 0 || u >= g.n || v < 0 || v >= g.n) {
            out.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
            continue;
        }
        if (u == v) {
            out.push_back("self-loop at vertex " + std::to_string(u));
            continue;
        }
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            out.push_back("duplicate edge (" + std::to_string(key.first) + "," +
                          std::to_string(key.second) + ")");
    }
    if (static_cast<int>(g.degree.size()) != g.n || static_cast<int>(g.adj.size()) != g.n) {
        out.push_back("adjacency arrays not sized to n");
        return out;
    }
    std::vector<int> expect(g.n, 0);
    for (const auto& [u, v] : g.edges) {
        if (u >= 0 && u < g.n && v >= 0 && v < g.n) {
            ++expect[u];
            if (v != u) ++expect[v];
        }
    }
    for (int i = 0; i < g.n; ++i) {
        if (g.degree[i] != expect[i])
            out.push_back("degree[" + std::to_string(i) + "]=" + std::to_string(g.degree[i]) +
                          " but " + std::to_string(expect[i]) + " incident edges");
        for (int j : g.adj[i]) {
            if (j < 0 || j >= g.n) {
                out.push_back("adjacency of " + std::to_string(i) + " references out-of-range vertex");
                continue;
            }
            if (!std::binary_search(g.adj[j].begin(), g.adj[j].end(), i))
                out.push_back("adjacency not symmetric for (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
        }
    }
    return out;
}

bool is_connected(const Graph& g) {
    if (g.n <= 0) throw std::invalid_argument("is_connected requires n >= 1");
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == g.n;
}

std::vector<std::string> validate(const BAParams& p) {
    std::vector<std::string> out;
    if (p.m0 < 1) out.push_back("m0 must be >= 1");
    if (p.t < 0) out.push_back("t must be >= 0");
    if (p.m < 1) out.push_back("m must be >= 1");
    if (p.m > p.m0) out.push_back("m must be <= m0");
    return out;
}

Graph generate_ba(const BAParams& params) {
    auto bad = validate(params);
    if (!bad.empty()) throw std::invalid_argument("bad BA parameters: " + bad.front());

    const int n = params.m0 + params.t;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(params.m0 * (params.m0 - 1) / 2 + params.t * params.m);
    std::vector<int> degree(n, 0);
    for (int i = 0; i < params.m0; ++i) {
        for (int j = i + 1; j < params.m0; ++j) {
            edges.emplace_back(i, j);
            ++degree[i];
            ++degree[j];
        }
    }

    std::mt19937_64 gen(params.seed);
    std::vector<int> urn;  // vertex repeated degree times, snapshot per step
    std::vector<int> targets;
    for (int v = params.m0; v < n; ++v) {
        urn.clear();
        for (int u = 0; u < v; ++u) urn.insert(urn.end(), degree[u], u);
        targets.clear();
        while (static_cast<int>(targets.size()) < params.m) {
            int tgt;
            if (urn.empty()) {
                // all-zero degrees only happen for an edgeless seed (m0 = 1)
                tgt = static_cast<int>(bounded(gen, v));
            } else {
                tgt = urn[bounded(gen, urn.size())];
            }
            if (std::find(targets.begin(), targets.end(), tgt) != targets.end()) continue;
            targets.push_back(tgt);
        }
        for (int tgt : targets) {
            edges.emplace_back(tgt, v);  // tgt < v always
            ++degree[tgt];
            ++degree[v];
        }
    }
    return Graph::make(n, std::move(edges));
}

Graph read_edge_list(std::string_view text) {
    std::vector<std::pair<int, int>> edges;
    int declared_n = -1;
    int max_id = -1;
    int lineno = 0;
    for (auto raw : split_lines(text)) {
        ++lineno;
        auto line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            auto body = trim(line.substr(1));
            if (body.starts_with("n=")) {
                int n = 0;
                auto num = body.substr(2);
                auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
                if (ec == std::errc{} && p == num.data() + num.size() && n >= 0) declared_n = n;
            }
            continue;
        }
        int u = 0, v = 0;
        const char* s = line.data();
        const char* end = line.data() + line.size();
        auto r1 = std::from_chars(s, end, u);
        if (r1.ec != std::errc{}) throw ParseError(lineno, "expected integer vertex id");
        s = r1.ptr;
        while (s != end && (*s == ' ' || *s == '\t')) ++s;
        auto r2 = std::from_chars(s, end, v);
        if (r2.ec != std::errc{}) throw ParseError(lineno, "expected second vertex id");
        s = r2.ptr;
        while (s != end && (*s == ' ' || *s == '\t')) ++s;
        if (s != end) throw ParseError(lineno, "trailing characters after edge");
        if (u < 0 || v < 0) throw ParseError(lineno, "negative vertex id");
        if (u == v) throw ParseError(lineno, "self-loop (" + std::to_string(u) + "," + std::to_string(v) + ")");
        max_id = std::max({max_id, u, v});
        edges.emplace_back(u, v);
    }
    int n = std::max(declared_n, max_id + 1);
    if (declared_n >= 0 && max_id >= declared_n)
        throw ParseError(0, "edge references vertex " + std::to_string(max_id) +
                                " but header declares n=" + std::to_string(declared_n));
    return Graph::make(n, std::move(edges));
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "# n=" << g.n << "\n";
    auto sorted = g.edges;
    for (auto& [u, v] : sorted)
        if (u > v) std::swap(u, v);
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [u, v] : sorted) out << u << " " << v << "\n";
    return out.str();
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_edge_list(buf.str());
}

void save_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    out << write_edge_list(g);
}

}  // namespace likednet
