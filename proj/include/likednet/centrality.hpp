#pragma once

#include <vector>

#include "likednet/graph.hpp"

namespace likednet {

enum class Measure { degree, betweenness, closeness, eigenvector };

const char* to_string(Measure m);

struct CentralityScores {
    Measure measure;
    std::vector<double> values;
};

/// values = degree.
CentralityScores degree_centrality(const Graph& g);

/// Unnormalized shortest-path betweenness (Brandes), each unordered pair
/// counted once (accumulate over sources, halve). Parallel over sources;
/// per-source rows are reduced in source order, so the result is bit-identical
/// to the serial reference regardless of thread count.
CentralityScores betweenness_centrality(const Graph& g);

/// Serial reference implementation kept for testing and benchmarking.
CentralityScores betweenness_centrality_serial(const Graph& g);

/// (n-1) / sum of BFS distances. Throws std::invalid_argument if disconnected.
CentralityScores closeness_centrality(const Graph& g);

/// Perron vector of the adjacency matrix, unit-max normalized. Power
/// iteration runs on A+I: same Perron vector, but the shift keeps
/// sign-alternating modes on bipartite graphs from oscillating.
CentralityScores eigenvector_centrality(const Graph& g, double tol = 1e-12, long max_iter = 100000);

}  // namespace likednet
