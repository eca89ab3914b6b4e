#include "likednet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "likednet/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace likednet {

RateMatrix sample_rates(const Graph& g, double lambda, std::uint64_t stream_seed) {
    if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
    std::mt19937_64 gen(stream_seed);
    std::vector<RateEntry> entries;
    entries.reserve(2 * g.edges.size());
    // canonical edge order; for each edge first the (u<-v) rate, then (v<-u)
    for (const auto& [u, v] : g.edges) {
        entries.push_back({u, v, exp_positive(gen, lambda)});
        entries.push_back({v, u, exp_positive(gen, lambda)});
    }
    return RateMatrix::from_entries(g, entries);
}

namespace {

EnsembleResult run_one(const Graph& g, const StationaryVector& p, const ExperimentConfig& cfg,
                       int index) {
    EnsembleResult r;
    r.index = index;
    const auto rates =
        sample_rates(g, cfg.lambda, derive_stream_seed(cfg.master_seed, static_cast<std::uint64_t>(index)));
    auto rep = solve_detailed(g, rates, cfg.solver);
    r.iterations = rep.iterations;
    r.residual = rep.residual;
    r.converged = rep.converged;
    if (rep.converged) {
        auto lstar = normalize_unique(rep.likedness, p);
        r.nd = neighbor_desirability(g, rates, lstar).values;
        r.lstar = std::move(lstar.values);
    }
    return r;
}

void check_config(const Graph& g, const ExperimentConfig& cfg) {
    if (cfg.ensemble_count < 1) throw std::invalid_argument("ensemble_count must be >= 1");
    if (!(cfg.lambda > 0)) throw std::invalid_argument("lambda must be positive");
    if (cfg.bins.count < 1) throw std::invalid_argument("bin count must be >= 1");
    if (!is_connected(g)) throw std::invalid_argument("experiment requires a connected graph");
}

std::vector<double> make_log_edges(double lo, double hi, int count) {
    if (!(lo > 0) || !(hi > 0)) throw std::invalid_argument("log bins need positive bounds");
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi) {  // degenerate data (e.g. one uniform ensemble)
        lo *= 1.0 - 1e-9;
        hi *= 1.0 + 1e-9;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    std::vector<double> edges(count + 1);
    for (int k = 0; k <= count; ++k)
        edges[k] = std::exp(llo + (lhi - llo) * static_cast<double>(k) / count);
    edges.front() = lo;
    edges.back() = hi;
    return edges;
}

// Clamp into the end bins so every observation lands somewhere; keeps the
// "counts sum to observations" invariant even with explicit bin bounds.
int bin_of(const std::vector<double>& edges, double v) {
    const int nb = static_cast<int>(edges.size()) - 1;
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    int idx = static_cast<int>(it - edges.begin()) - 1;
    return std::clamp(idx, 0, nb - 1);
}

}  // namespace

std::vector<EnsembleResult> run_ensembles_serial(const Graph& g, const ExperimentConfig& cfg) {
    check_config(g, cfg);
    const auto p = stationary(g);
    std::vector<EnsembleResult> out(cfg.ensemble_count);
    for (int e = 0; e < cfg.ensemble_count; ++e) out[e] = run_one(g, p, cfg, e);
    return out;
}

std::vector<EnsembleResult> run_ensembles_parallel(const Graph& g, const ExperimentConfig& cfg,
                                                   int threads) {
    check_config(g, cfg);
    const auto p = stationary(g);
    std::vector<EnsembleResult> out(cfg.ensemble_count);
#ifdef _OPENMP
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (int e = 0; e < cfg.ensemble_count; ++e) out[e] = run_one(g, p, cfg, e);
#ifndef _OPENMP
    (void)threads;
#endif
    return out;
}

NeighborCurve neighbor_pair_curve(const Graph& g, const std::vector<EnsembleResult>& results,
                                  const BinSpec& bins) {
    NeighborCurve out;
    std::vector<double> own, nbmean;
    for (const auto& r : results) {
        if (!r.converged) continue;
        for (int i = 0; i < g.n; ++i) {
            double s = 0;
            for (int j : g.adj[i]) s += r.nd[j];
            own.push_back(r.nd[i]);
            nbmean.push_back(s / g.degree[i]);
        }
    }
    if (own.empty()) throw std::invalid_argument("neighbor_pair_curve: no converged ensembles");
    out.observations = static_cast<long>(own.size());

    double lo = bins.lo, hi = bins.hi;
    if (lo <= 0) lo = *std::min_element(own.begin(), own.end());
    if (hi <= 0) hi = *std::max_element(own.begin(), own.end());
    const auto edges = make_log_edges(lo, hi, bins.count);
    const int nb = bins.count;

    // global ND histogram over the same grid
    std::vector<long> global(nb, 0);
    for (double v : own) ++global[bin_of(edges, v)];

    std::vector<long> count(nb, 0);
    std::vector<double> sum_nb(nb, 0.0);
    // conditional histogram of individual neighbor ND values per own-ND bin
    std::vector<std::vector<long>> cond(nb, std::vector<long>(nb, 0));
    std::size_t obs = 0;
    for (const auto& r : results) {
        if (!r.converged) continue;
        for (int i = 0; i < g.n; ++i, ++obs) {
            const int b = bin_of(edges, own[obs]);
            ++count[b];
            sum_nb[b] += nbmean[obs];
            for (int j : g.adj[i]) ++cond[b][bin_of(edges, r.nd[j])];
        }
    }

    out.global.edges = edges;
    out.global.counts = global;

    const double total_global = static_cast<double>(out.observations);
    for (int b = 0; b < nb; ++b) {
        if (count[b] == 0) continue;  // absent, not zero
        CurvePoint pt;
        pt.lo = edges[b];
        pt.hi = edges[b + 1];
        pt.center = std::sqrt(edges[b] * edges[b + 1]);
        pt.count = count[b];
        pt.mean_y = sum_nb[b] / static_cast<double>(count[b]);
        // over-representation of neighbor ND against the global distribution,
        // summarized as the ratio-weighted mean bin center
        long cond_total = 0;
        for (int r2 = 0; r2 < nb; ++r2) cond_total += cond[b][r2];
        double wsum = 0, wc = 0;
        for (int r2 = 0; r2 < nb; ++r2) {
            if (global[r2] == 0 || cond[b][r2] == 0) continue;
            const double ratio = (static_cast<double>(cond[b][r2]) / cond_total) /
                                 (static_cast<double>(global[r2]) / total_global);
            const double center = std::sqrt(edges[r2] * edges[r2 + 1]);
            wsum += ratio;
            wc += ratio * center;
        }
        pt.scaled = wsum > 0 ? wc / wsum : 0.0;
        out.curve.push_back(pt);
    }

    // Pearson correlation of own ND vs mean neighbor ND
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < own.size(); ++k) {
        mx += own[k];
        my += nbmean[k];
    }
    mx /= own.size();
    my /= own.size();
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t k = 0; k < own.size(); ++k) {
        const double dx = own[k] - mx, dy = nbmean[k] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    out.correlation = (sxx > 0 && syy > 0) ? sxy / std::sqrt(sxx * syy) : 0.0;
    return out;
}

std::vector<CurvePoint> likedness_nd_curve(const std::vector<EnsembleResult>& results,
                                           const BinSpec& bins) {
    std::vector<double> xs, ys;
    for (const auto& r : results) {
        if (!r.converged) continue;
        xs.insert(xs.end(), r.lstar.begin(), r.lstar.end());
        ys.insert(ys.end(), r.nd.begin(), r.nd.end());
    }
    if (xs.empty()) throw std::invalid_argument("likedness_nd_curve: no converged ensembles");
    double lo = bins.lo > 0 ? bins.lo : *std::min_element(xs.begin(), xs.end());
    double hi = bins.hi > 0 ? bins.hi : *std::max_element(xs.begin(), xs.end());
    const auto edges = make_log_edges(lo, hi, bins.count);
    std::vector<long> count(bins.count, 0);
    std::vector<double> sum(bins.count, 0.0);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const int b = bin_of(edges, xs[k]);
        ++count[b];
        sum[b] += ys[k];
    }
    std::vector<CurvePoint> out;
    for (int b = 0; b < bins.count; ++b) {
        if (count[b] == 0) continue;
        CurvePoint pt;
        pt.lo = edges[b];
        pt.hi = edges[b + 1];
        pt.center = std::sqrt(edges[b] * edges[b + 1]);
        pt.count = count[b];
        pt.mean_y = sum[b] / static_cast<double>(count[b]);
        out.push_back(pt);
    }
    return out;
}

AggregateDataset aggregate(const Graph& g, const std::vector<EnsembleResult>& results,
                           const ExperimentConfig& cfg) {
    AggregateDataset out;
    out.ensembles_total = static_cast<int>(results.size());
    out.mean_lstar.assign(g.n, 0.0);
    out.mean_nd.assign(g.n, 0.0);
    int ok = 0;
    for (const auto& r : results) {
        if (!r.converged) {
            ++out.ensembles_failed;
            continue;
        }
        ++ok;
        for (int i = 0; i < g.n; ++i) {
            out.mean_lstar[i] += r.lstar[i];
            out.mean_nd[i] += r.nd[i];
        }
    }
    if (ok == 0) throw std::runtime_error("all ensembles failed to converge");
    for (int i = 0; i < g.n; ++i) {
        out.mean_lstar[i] /= ok;
        out.mean_nd[i] /= ok;
    }
    out.degree = degree_centrality(g);
    out.betweenness = betweenness_centrality(g);
    out.closeness = closeness_centrality(g);
    out.eigenvector = eigenvector_centrality(g);
    auto nc = neighbor_pair_curve(g, results, cfg.bins);
    out.neighbor_curve = std::move(nc.curve);
    out.nd_histogram = std::move(nc.global);
    out.neighbor_correlation = nc.correlation;
    out.lc_curve = likedness_nd_curve(results, cfg.bins);
    return out;
}

AggregateDataset run_experiment(const Graph& g, const ExperimentConfig& cfg, int threads) {
    auto results =
        threads == 1 ? run_ensembles_serial(g, cfg) : run_ensembles_parallel(g, cfg, threads);
    int failed = 0;
    for (const auto& r : results)
        if (!r.converged) ++failed;
    if (static_cast<double>(failed) > cfg.max_failure_rate * cfg.ensemble_count)
        throw std::runtime_error("solver failure rate " + std::to_string(failed) + "/" +
                                 std::to_string(cfg.ensemble_count) + " exceeds the configured cap");
    return aggregate(g, results, cfg);
}

}  // namespace likednet
