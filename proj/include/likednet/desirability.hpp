#pragma once

#include <vector>

#include "likednet/graph.hpp"
#include "likednet/likedness.hpp"
#include "likednet/markov.hpp"

namespace likednet {

/// Neighbor desirability: geometric mean of a vertex's incoming like-rates
/// over the arithmetic mean of its neighbors' likedness values.
struct DesirabilityVector {
    std::vector<double> values;
    Normalization basis = Normalization::raw;  // which L normalization fed the AM
};

/// (prod of incoming rates)^(1/deg i), accumulated in log space.
double geometric_mean_incoming(const Graph& g, const RateMatrix& rates, int i);

/// ND_i = geometric_mean_incoming(i) / (sigma_i / deg_i).
DesirabilityVector neighbor_desirability(const Graph& g, const RateMatrix& rates,
                                         const LikednessVector& L);

/// Stationary-weighted mean of log ND under L's scaling: p . log ND(L).
double stationary_log_drift(const Graph& g, const RateMatrix& rates, const LikednessVector& L,
                            const StationaryVector& p);

/// Rescales L so the stationary log-drift of ND vanishes; this is the one
/// scaling under which the truncated random-walk product converges.
/// Closed form: log c = p . log ND(L), result = c L.
LikednessVector log_stationary_normalize(const Graph& g, const RateMatrix& rates,
                                         const LikednessVector& L, const StationaryVector& p);

/// Truncated random-walk product diagnostics at one truncation depth.
struct ProductEvalReport {
    long truncation = 0;
    std::vector<double> product;  // exp(sum_j W_n[i,j] log ND_j) per start vertex i
    std::vector<double> ratio;    // product[i] / L_i
    double ratio_cv = 0;          // std/mean of ratio over i
    double drift = 0;             // p . log ND under the supplied basis
};

/// Product value for one start vertex: exp(sum_j W_n[i,j] log ND_j) with
/// W_n = power_sum_row(i, n). Requires the log-stationary basis (any other
/// scaling makes the exponent drift linearly in n).
double product_formula_eval(const Graph& g, const RateMatrix& rates, const LikednessVector& L_basis,
                            const StationaryVector& p, int i, long n);

/// Full-vector report at each requested truncation (ascending), sharing one
/// walk accumulation per start vertex. Start vertices run in parallel.
std::vector<ProductEvalReport> product_formula_scan(const Graph& g, const RateMatrix& rates,
                                                    const LikednessVector& L_basis,
                                                    const StationaryVector& p,
                                                    const std::vector<long>& truncations);

/// Single-truncation convenience wrapper around product_formula_scan.
ProductEvalReport product_formula_report(const Graph& g, const RateMatrix& rates,
                                         const LikednessVector& L_basis, const StationaryVector& p,
                                         long n);

}  // namespace likednet
