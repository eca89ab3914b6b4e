#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "likednet/graph.hpp"
#include "likednet/markov.hpp"

namespace likednet {

struct RateEntry {
    int i = 0;       // liked vertex
    int j = 0;       // liking vertex
    double rate = 0; // rate at which j likes i; strictly positive
};

/// Positive like-rates on the ordered pairs of a bound graph's edges.
/// incoming[i][k] is the rate at which g.adj[i][k] likes i, so the storage
/// order follows the graph's adjacency lists. Every ordered edge pair must
/// carry a rate (zero rates are rejected: the geometric means downstream
/// would collapse, and the sampling model makes zeros measure-zero).
struct RateMatrix {
    int n = 0;
    std::vector<std::vector<double>> incoming;

    /// Validates edge support, positivity, and exactly-once coverage of all
    /// 2E ordered pairs. Throws std::invalid_argument naming the bad pair.
    static RateMatrix from_entries(const Graph& g, const std::vector<RateEntry>& entries);

    /// Rate at which j likes i; the ordered pair must be an edge pair.
    double at(const Graph& g, int i, int j) const;

    /// All ordered pairs in canonical (i, then adjacency) order.
    std::vector<RateEntry> entries(const Graph& g) const;
};

enum class Normalization { raw, p_unit, log_stationary };

const char* to_string(Normalization n);

/// Per-vertex positive likedness values with their normalization tag.
struct LikednessVector {
    std::vector<double> values;
    Normalization norm = Normalization::raw;
};

struct SolverConfig {
    double tol = 1e-10;            // relative sup-norm residual threshold
    long max_iter = 100000;
    double alpha = 0.5;            // damping in (0,1]
    std::vector<double> initial;   // empty = uniform start
};

struct SolveReport {
    LikednessVector likedness;     // tag raw
    long iterations = 0;
    double residual = 0;
    bool converged = false;
};

/// Sum of L over i's neighbors. Throws std::invalid_argument if i is isolated.
double sigma(const Graph& g, const LikednessVector& L, int i);

/// Damped fixed-point iteration L <- (1-alpha) L + alpha F(L) with
/// F_i = (sum_j R_ij L_j) / sigma_i. Does not throw on non-convergence;
/// inspect `converged`.
SolveReport solve_detailed(const Graph& g, const RateMatrix& rates, const SolverConfig& cfg = {});

/// As solve_detailed but throws ConvergenceError when the tolerance is missed.
LikednessVector solve(const Graph& g, const RateMatrix& rates, const SolverConfig& cfg = {});

/// Scales L so that p . L* = 1. The defining relation is invariant under the
/// joint scaling (L, R) -> (cL, cR); this picks the canonical representative
/// of that equivalence class (for the fixed R, the raw solution itself is an
/// isolated point, not a ray).
LikednessVector normalize_unique(const LikednessVector& L, const StationaryVector& p);

/// Per-vertex relative residual of the defining relation:
/// |sum_j (G_ij L_i - R_ij) L_j| / (L_i sigma_i).
std::vector<double> residual(const Graph& g, const RateMatrix& rates, const LikednessVector& L);

/// CSV with header "i,j,rate"; '#' comment lines ignored. Validates support
/// against the graph; throws ParseError with line numbers.
RateMatrix read_rate_csv(const Graph& g, std::string_view text);
std::string write_rate_csv(const Graph& g, const RateMatrix& rates);

RateMatrix load_rate_file(const Graph& g, const std::string& path);
void save_rate_file(const Graph& g, const RateMatrix& rates, const std::string& path);

}  // namespace likednet
