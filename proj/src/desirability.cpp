#include "likednet/desirability.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace likednet {

namespace {

// Kahan-compensated accumulator; the product-formula exponents grow linearly
// in the truncation depth, so plain summation would shed digits.
struct Kahan {
    double sum = 0, c = 0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

std::vector<double> log_nd(const Graph& g, const RateMatrix& rates, const LikednessVector& L) {
    std::vector<double> out(g.n);
    for (int i = 0; i < g.n; ++i) {
        if (g.degree[i] == 0)
            throw std::invalid_argument("degenerate graph: vertex " + std::to_string(i) +
                                        " is isolated");
        Kahan lg;
        double am = 0;
        const auto& nbrs = g.adj[i];
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            lg.add(std::log(rates.incoming[i][k]));
            am += L.values[nbrs[k]];
        }
        out[i] = lg.sum / g.degree[i] - std::log(am / g.degree[i]);
    }
    return out;
}

}  // namespace

double geometric_mean_incoming(const Graph& g, const RateMatrix& rates, int i) {
    if (i < 0 || i >= g.n) throw std::invalid_argument("vertex out of range");
    if (g.degree[i] == 0)
        throw std::invalid_argument("degenerate graph: vertex " + std::to_string(i) +
                                    " is isolated");
    Kahan lg;
    for (double r : rates.incoming[i]) {
        if (!(r > 0)) throw std::invalid_argument("nonpositive incoming rate");
        lg.add(std::log(r));
    }
    return std::exp(lg.sum / g.degree[i]);
}

DesirabilityVector neighbor_desirability(const Graph& g, const RateMatrix& rates,
                                         const LikednessVector& L) {
    DesirabilityVector out;
    out.basis = L.norm;
    const auto lnd = log_nd(g, rates, L);
    out.values.resize(g.n);
    for (int i = 0; i < g.n; ++i) out.values[i] = std::exp(lnd[i]);
    return out;
}

double stationary_log_drift(const Graph& g, const RateMatrix& rates, const LikednessVector& L,
                            const StationaryVector& p) {
    const auto lnd = log_nd(g, rates, L);
    Kahan d;
    for (int i = 0; i < g.n; ++i) d.add(p.p[i] * lnd[i]);
    return d.sum;
}

LikednessVector log_stationary_normalize(const Graph& g, const RateMatrix& rates,
                                         const LikednessVector& L, const StationaryVector& p) {
    // scaling L by c shifts every log ND by -log c, so log c = p . log ND(L)
    const double logc = stationary_log_drift(g, rates, L, p);
    const double c = std::exp(logc);
    LikednessVector out;
    out.norm = Normalization::log_stationary;
    out.values.resize(L.values.size());
    for (std::size_t i = 0; i < L.values.size(); ++i) out.values[i] = c * L.values[i];
    return out;
}

std::vector<ProductEvalReport> product_formula_scan(const Graph& g, const RateMatrix& rates,
                                                    const LikednessVector& L_basis,
                                                    const StationaryVector& p,
                                                    const std::vector<long>& truncations) {
    if (L_basis.norm != Normalization::log_stationary)
        throw std::invalid_argument("product formula requires the log-stationary basis");
    if (truncations.empty()) throw std::invalid_argument("no truncation depths given");
    for (std::size_t k = 0; k < truncations.size(); ++k) {
        if (truncations[k] < 0) throw std::invalid_argument("truncation depth must be >= 0");
        if (k > 0 && truncations[k] <= truncations[k - 1])
            throw std::invalid_argument("truncation depths must be strictly ascending");
    }
    const auto lnd = log_nd(g, rates, L_basis);
    const double drift = stationary_log_drift(g, rates, L_basis, p);
    const auto P = transition_matrix(g);
    const long n_last = truncations.back();

    // log_prod[k][i]: exponent sum at truncation k for start vertex i
    std::vector<std::vector<double>> log_prod(truncations.size(), std::vector<double>(g.n));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < g.n; ++i) {
        std::vector<double> acc(g.n, 0.0);  // row i of sum_t P^t, built incrementally
        std::vector<double> x(g.n, 0.0);
        x[i] = 1.0;
        std::size_t k = 0;
        for (long t = 0; t <= n_last; ++t) {
            for (int j = 0; j < g.n; ++j) acc[j] += x[j];
            if (t == truncations[k]) {
                Kahan s;
                for (int j = 0; j < g.n; ++j) s.add(acc[j] * lnd[j]);
                log_prod[k][i] = s.sum;
                if (++k == truncations.size()) break;
            }
            x = left_multiply(P, x);
        }
    }

    std::vector<ProductEvalReport> out(truncations.size());
    for (std::size_t k = 0; k < truncations.size(); ++k) {
        auto& rep = out[k];
        rep.truncation = truncations[k];
        rep.drift = drift;
        rep.product.resize(g.n);
        rep.ratio.resize(g.n);
        double mean = 0;
        for (int i = 0; i < g.n; ++i) {
            rep.product[i] = std::exp(log_prod[k][i]);
            rep.ratio[i] = rep.product[i] / L_basis.values[i];
            mean += rep.ratio[i];
        }
        mean /= g.n;
        double var = 0;
        for (int i = 0; i < g.n; ++i) {
            const double d = rep.ratio[i] - mean;
            var += d * d;
        }
        rep.ratio_cv = g.n > 1 ? std::sqrt(var / g.n) / mean : 0.0;
    }
    return out;
}

ProductEvalReport product_formula_report(const Graph& g, const RateMatrix& rates,
                                         const LikednessVector& L_basis, const StationaryVector& p,
                                         long n) {
    return product_formula_scan(g, rates, L_basis, p, {n}).front();
}

double product_formula_eval(const Graph& g, const RateMatrix& rates, const LikednessVector& L_basis,
                            const StationaryVector& p, int i, long n) {
    if (i < 0 || i >= g.n) throw std::invalid_argument("vertex out of range");
    if (L_basis.norm != Normalization::log_stationary)
        throw std::invalid_argument("product formula requires the log-stationary basis");
    const auto lnd = log_nd(g, rates, L_basis);
    (void)p;
    const auto w = power_sum_row(g, i, n);
    Kahan s;
    for (int j = 0; j < g.n; ++j) s.add(w[j] * lnd[j]);
    return std::exp(s.sum);
}

}  // namespace likednet
