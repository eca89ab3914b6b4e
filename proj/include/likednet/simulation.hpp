#pragma once

#include <cstdint>
#include <vector>

#include "likednet/centrality.hpp"
#include "likednet/desirability.hpp"
#include "likednet/graph.hpp"
#include "likednet/likedness.hpp"

namespace likednet {

struct BinSpec {
    int count = 40;   // number of log-spaced bins
    double lo = 0;    // 0 = take from data
    double hi = 0;    // 0 = take from data
};

struct ExperimentConfig {
    int ensemble_count = 1000;
    double lambda = 0.5;            // exponential rate parameter (mean 1/lambda)
    std::uint64_t master_seed = 0;
    SolverConfig solver;
    BinSpec bins;
    double max_failure_rate = 0.01; // run_experiment fails above this
};

/// One solved rate ensemble. Failed solves keep their slot (converged=false)
/// so aggregation order never depends on the failure pattern.
struct EnsembleResult {
    int index = 0;
    std::vector<double> lstar;  // p-unit likedness
    std::vector<double> nd;     // desirability against lstar
    long iterations = 0;
    double residual = 0;
    bool converged = false;
};

struct CurvePoint {
    double lo = 0;
    double hi = 0;
    double center = 0;        // geometric mean of the edges
    long count = 0;           // observations that fell in the bin
    double mean_y = 0;        // bin mean of the dependent quantity
    double scaled = 0;        // over-representation summary (neighbor curve only)
};

struct Histogram {
    std::vector<double> edges;   // count+1 ascending edges
    std::vector<long> counts;
};

struct AggregateDataset {
    std::vector<double> mean_lstar;         // per node, over converged ensembles
    std::vector<double> mean_nd;
    CentralityScores degree;
    CentralityScores betweenness;
    CentralityScores closeness;
    CentralityScores eigenvector;
    std::vector<CurvePoint> neighbor_curve; // own ND bin -> mean neighbor ND (+ scaled)
    std::vector<CurvePoint> lc_curve;       // L* bin -> mean ND over observations
    Histogram nd_histogram;                 // all (node, ensemble) ND observations
    double neighbor_correlation = 0;        // Pearson, own ND vs mean neighbor ND
    int ensembles_total = 0;
    int ensembles_failed = 0;
};

/// One exponential draw per ordered edge pair (both directions, drawn in
/// canonical edge order). Deterministic given stream_seed.
RateMatrix sample_rates(const Graph& g, double lambda, std::uint64_t stream_seed);

/// Solve every ensemble: rates from derive_stream_seed(master_seed, index),
/// then p-unit L* and ND. Serial reference path.
std::vector<EnsembleResult> run_ensembles_serial(const Graph& g, const ExperimentConfig& cfg);

/// OpenMP path; each ensemble writes only its own slot, so the result is
/// bit-identical to the serial path for any thread count.
std::vector<EnsembleResult> run_ensembles_parallel(const Graph& g, const ExperimentConfig& cfg,
                                                   int threads = 0);

/// Figure-4 dataset: log-spaced bins over own ND; per bin the mean over
/// observations of (arithmetic mean of neighbors' ND in the same ensemble),
/// plus the over-representation summary against the global ND histogram.
/// Returns only nonempty bins. Also emits the global histogram and the
/// own-vs-neighbor correlation.
struct NeighborCurve {
    std::vector<CurvePoint> curve;
    Histogram global;
    double correlation = 0;
    long observations = 0;
};
NeighborCurve neighbor_pair_curve(const Graph& g, const std::vector<EnsembleResult>& results,
                                  const BinSpec& bins);

/// Binned observation-level L* -> mean ND curve (Figure-3 dataset).
std::vector<CurvePoint> likedness_nd_curve(const std::vector<EnsembleResult>& results,
                                           const BinSpec& bins);

/// Full experiment: ensembles (parallel when threads != 1), failure
/// accounting, per-node means, structural centralities, curves, histogram.
/// Throws std::runtime_error when the failure rate exceeds the configured cap.
AggregateDataset aggregate(const Graph& g, const std::vector<EnsembleResult>& results,
                           const ExperimentConfig& cfg);
AggregateDataset run_experiment(const Graph& g, const ExperimentConfig& cfg, int threads = 1);

}  // namespace likednet
