#include "likednet/markov.hpp"

#include <cmath>
#include <stdexcept>

#include "likednet/errors.hpp"

namespace likednet {

TransitionMatrix transition_matrix(const Graph& g) {
    TransitionMatrix P;
    P.n = g.n;
    P.cols = g.adj;
    P.row_value.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        if (g.degree[i] == 0)
            throw std::invalid_argument("degenerate graph: vertex " + std::to_string(i) +
                                        " is isolated");
        P.row_value[i] = 1.0 / g.degree[i];
    }
    return P;
}

std::vector<double> left_multiply(const TransitionMatrix& P, const std::vector<double>& x) {
    std::vector<double> y(P.n, 0.0);
    for (int i = 0; i < P.n; ++i) {
        const double w = x[i] * P.row_value[i];
        if (w == 0.0) continue;
        for (int j : P.cols[i]) y[j] += w;
    }
    return y;
}

StationaryVector stationary(const Graph& g, double tol, long max_iter) {
    if (!is_connected(g)) throw std::invalid_argument("stationary requires a connected graph");
    const auto P = transition_matrix(g);
    std::vector<double> x(g.n, 1.0 / g.n);
    double res = 0;
    for (long it = 0; it < max_iter; ++it) {
        auto xp = left_multiply(P, x);
        res = 0;
        for (int i = 0; i < g.n; ++i) res = std::max(res, std::abs(xp[i] - x[i]));
        if (res <= tol) {
            double s = 0;
            for (double v : x) s += v;
            for (double& v : x) v /= s;
            return StationaryVector{std::move(x)};
        }
        for (int i = 0; i < g.n; ++i) x[i] = 0.5 * (x[i] + xp[i]);
    }
    throw ConvergenceError("stationary distribution did not converge", res, max_iter);
}

std::vector<double> power_sum_row(const Graph& g, int i, long n_max) {
    if (i < 0 || i >= g.n) throw std::invalid_argument("power_sum_row: vertex out of range");
    if (n_max < 0) throw std::invalid_argument("power_sum_row: n_max must be >= 0");
    const auto P = transition_matrix(g);
    std::vector<double> acc(g.n, 0.0);
    std::vector<double> x(g.n, 0.0);
    x[i] = 1.0;
    for (long t = 0;; ++t) {
        for (int j = 0; j < g.n; ++j) acc[j] += x[j];
        if (t == n_max) break;
        x = left_multiply(P, x);
    }
    return acc;
}

}  // namespace likednet
