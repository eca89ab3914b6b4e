#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace likednet {

/// Simple undirected graph with contiguous vertex ids 0..n-1.
///
/// `edges` is the authoritative store; `adj` and `degree` are derived views,
/// refreshed by rebuild_adjacency(). Instances built through make(),
/// generate_ba() or read_edge_list() satisfy the invariants checked by
/// validate(); aggregate-initialized instances may not (validate() exists
/// to report exactly that). Immutable once built; safe to share across threads.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;
    std::vector<int> degree;

    void rebuild_adjacency();

    /// Canonicalizes (u<v per pair, sorted, deduplicated) and throws
    /// std::invalid_argument on self-loops or out-of-range ids.
    static Graph make(int n, std::vector<std::pair<int, int>> edge_list);
};

/// Invariant check. Returns one message per violation (empty means valid);
/// never throws.
std::vector<std::string> validate(const Graph& g);

/// True iff a single traversal from vertex 0 reaches every vertex. n >= 1.
bool is_connected(const Graph& g);

struct BAParams {
    int m0 = 5;           // seed vertices (complete graph)
    int t = 95;           // vertices added by growth
    int m = 5;            // edges attached per new vertex, m <= m0
    std::uint64_t seed = 0;
};

/// Validates BAParams; returns violations (empty means valid).
std::vector<std::string> validate(const BAParams& p);

/// Preferential attachment: complete seed graph on m0 vertices, then t
/// vertices each attaching m distinct edges, targets drawn with probability
/// proportional to degree at the start of the step (redraw on duplicates).
/// Deterministic given seed. Throws std::invalid_argument on bad params.
Graph generate_ba(const BAParams& params);

/// Edge-list text: one "u v" per line, '#' comments and blank lines ignored.
/// An optional "# n=<N>" comment fixes the vertex count (otherwise max id+1).
/// Throws ParseError with the offending line number.
Graph read_edge_list(std::string_view text);

/// Canonical form: "# n=<N>" header, then edges sorted by (u,v) with u<v.
std::string write_edge_list(const Graph& g);

Graph load_graph_file(const std::string& path);
void save_graph_file(const Graph& g, const std::string& path);

}  // namespace likednet
