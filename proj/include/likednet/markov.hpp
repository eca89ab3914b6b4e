#pragma once

#include <vector>

#include "likednet/graph.hpp"

namespace likednet {

/// Row-stochastic random-walk kernel P = diag(1/deg) * A, stored as sparse
/// rows (row i: value 1/deg[i] on each neighbor of i).
struct TransitionMatrix {
    int n = 0;
    std::vector<std::vector<int>> cols;  // neighbors per row
    std::vector<double> row_value;       // 1/degree per row
};

/// Builds P. Throws std::invalid_argument if any vertex is isolated.
TransitionMatrix transition_matrix(const Graph& g);

/// y = x^T P (dense row vector through the sparse rows).
std::vector<double> left_multiply(const TransitionMatrix& P, const std::vector<double>& x);

struct StationaryVector {
    std::vector<double> p;  // positive, sums to 1
};

/// Stationary distribution of the walk (left fixed point of P), computed by
/// power iteration with iterate/image averaging x <- (x + xP)/2 so bipartite
/// components cannot oscillate. Converges to the degree-proportional vector.
/// Throws ConvergenceError if the residual ||xP - x||_inf stays above tol.
StationaryVector stationary(const Graph& g, double tol = 1e-13, long max_iter = 1000000);

/// Row i of sum_{t=0}^{n_max} P^t via repeated vector-kernel products; P^t is
/// never materialized. Row total is exactly n_max+1 up to accumulation error.
std::vector<double> power_sum_row(const Graph& g, int i, long n_max);

}  // namespace likednet
