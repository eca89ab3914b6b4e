// Test-only helpers: independent oracles (exhaustive path enumeration for
// betweenness, a Levenberg-Marquardt root-finder for the likedness relation)
// and deterministic samplers. Nothing here may call the library code path it
// is used to check.

#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "likednet/graph.hpp"
#include "likednet/likedness.hpp"
#include "likednet/markov.hpp"
#include "likednet/rng.hpp"

namespace likednet::testing {

// ---------------------------------------------------------------- samplers

inline double gauss(std::mt19937_64& gen) {
    const double u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Random tree plus `extra` random chords; always connected.
inline Graph random_connected_graph(int n, int extra, std::mt19937_64& gen) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = n - 1; k > 0; --k) std::swap(perm[k], perm[bounded(gen, k + 1)]);
    std::set<std::pair<int, int>> edges;
    for (int k = 1; k < n; ++k) {
        int u = perm[k], v = perm[bounded(gen, k)];
        edges.insert({std::min(u, v), std::max(u, v)});
    }
    for (int tries = 0; static_cast<int>(edges.size()) < n - 1 + extra && tries < 400; ++tries) {
        int u = static_cast<int>(bounded(gen, n));
        int v = static_cast<int>(bounded(gen, n));
        if (u == v) continue;
        edges.insert({std::min(u, v), std::max(u, v)});
    }
    return Graph::make(n, {edges.begin(), edges.end()});
}

inline bool is_bipartite(const Graph& g) {
    std::vector<int> color(g.n, -1);
    for (int s = 0; s < g.n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : g.adj[u]) {
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline Graph random_connected_nonbipartite(int n, int extra, std::mt19937_64& gen) {
    for (int tries = 0; tries < 500; ++tries) {
        Graph g = random_connected_graph(n, extra, gen);
        if (!is_bipartite(g)) return g;
    }
    throw std::runtime_error("could not sample a non-bipartite graph");
}

// Rates exp(sigma_log * Z); log-spread sigma_log around 1.
inline RateMatrix lognormal_rates(const Graph& g, double sigma_log, std::mt19937_64& gen) {
    std::vector<RateEntry> entries;
    for (const auto& [u, v] : g.edges) {
        entries.push_back({u, v, std::exp(sigma_log * gauss(gen))});
        entries.push_back({v, u, std::exp(sigma_log * gauss(gen))});
    }
    return RateMatrix::from_entries(g, entries);
}

inline RateMatrix exponential_rates(const Graph& g, double lambda, std::mt19937_64& gen) {
    std::vector<RateEntry> entries;
    for (const auto& [u, v] : g.edges) {
        entries.push_back({u, v, exp_positive(gen, lambda)});
        entries.push_back({v, u, exp_positive(gen, lambda)});
    }
    return RateMatrix::from_entries(g, entries);
}

// ------------------------------------------------------------ permutations

inline Graph permute_graph(const Graph& g, const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) edges.emplace_back(perm[u], perm[v]);
    return Graph::make(g.n, std::move(edges));
}

inline RateMatrix permute_rates(const Graph& g, const Graph& gp, const RateMatrix& rates,
                                const std::vector<int>& perm) {
    std::vector<RateEntry> entries;
    for (const auto& e : rates.entries(g)) entries.push_back({perm[e.i], perm[e.j], e.rate});
    return RateMatrix::from_entries(gp, entries);
}

// ------------------------------------------- betweenness by path counting

// Exhaustive shortest-path enumeration (DFS over the BFS distance field);
// feasible for the n <= 8 oracle graphs.
inline std::vector<double> betweenness_bruteforce(const Graph& g) {
    const int n = g.n;
    std::vector<double> cb(n, 0.0);
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1);
        dist[s] = 0;
        std::vector<int> q{s};
        for (std::size_t head = 0; head < q.size(); ++head) {
            int u = q[head];
            for (int v : g.adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
        }
        for (int t = s + 1; t < n; ++t) {
            long total = 0;
            std::vector<long> through(n, 0);
            std::vector<int> chain;
            std::function<void(int)> walk = [&](int u) {
                if (u == s) {
                    ++total;
                    for (int v : chain) ++through[v];
                    return;
                }
                for (int w : g.adj[u]) {
                    if (dist[w] != dist[u] - 1) continue;
                    if (w != s) chain.push_back(w);
                    walk(w);
                    if (w != s) chain.pop_back();
                }
            };
            walk(t);
            for (int v = 0; v < n; ++v)
                if (through[v] > 0)
                    cb[v] += static_cast<double>(through[v]) / static_cast<double>(total);
        }
    }
    return cb;
}

// ------------------------------------- root-finder on the defining relation

// Damped Newton on the defining relations in log form,
//   log(sum_j R_ij L_j) - log L_i - log(sum_j G_ij L_j) = 0  over z = log L,
// which has the same zero set as sum_j (G_ij L_i - R_ij) L_j = 0 for positive
// L and a fixed R (the relation is quadratic-vs-linear in L, so for fixed
// rates its positive solution is an isolated point, not a ray; the joint
// (L, R) scaling is what the p-unit normalization quotients out afterwards).
// Shares nothing with the damped fixed-point iteration it cross-checks.
struct RootFindResult {
    std::vector<double> L;  // p-unit normalized for comparison
    bool converged = false;
    double max_equation_residual = 0;
};

namespace detail {

inline double log_sum(const std::vector<double>& terms) {
    double mx = terms.front();
    for (double t : terms) mx = std::max(mx, t);
    double s = 0;
    for (double t : terms) s += std::exp(t - mx);
    return mx + std::log(s);
}

inline std::vector<double> relation_system(const Graph& g, const RateMatrix& rates,
                                      const std::vector<double>& z) {
    const int n = g.n;
    std::vector<double> F(n, 0.0);
    std::vector<double> num, den;
    for (int i = 0; i < n; ++i) {
        num.clear();
        den.clear();
        const auto& nbrs = g.adj[i];
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            num.push_back(std::log(rates.incoming[i][k]) + z[nbrs[k]]);
            den.push_back(z[nbrs[k]]);
        }
        F[i] = log_sum(num) - z[i] - log_sum(den);
    }
    return F;
}

inline bool gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b,
                        std::vector<double>& x) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double v = b[r];
        for (int c = r + 1; c < n; ++c) v -= a[r][c] * x[c];
        x[r] = v / a[r][r];
    }
    return true;
}

}  // namespace detail

namespace detail {

}  // namespace detail

inline RootFindResult solve_relation_rootfinder(const Graph& g, const RateMatrix& rates,
                                           const StationaryVector& p, std::uint64_t start_seed) {
    const int n = g.n;
    std::mt19937_64 gen(start_seed);
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = 2.0 * uniform01(gen) - 1.0;

    const auto norm_inf = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s = std::max(s, std::abs(x));
        return s;
    };

    auto F = detail::relation_system(g, rates, z);
    double fn = norm_inf(F);
    for (int it = 0; it < 300 && fn >= 1e-13; ++it) {
        // finite-difference Jacobian (kept generic on purpose)
        std::vector<std::vector<double>> J(n, std::vector<double>(n));
        for (int c = 0; c < n; ++c) {
            const double h = 1e-7;
            auto zp = z, zm = z;
            zp[c] += h;
            zm[c] -= h;
            const auto Fp = detail::relation_system(g, rates, zp);
            const auto Fm = detail::relation_system(g, rates, zm);
            for (int r = 0; r < n; ++r) J[r][c] = (Fp[r] - Fm[r]) / (2 * h);
        }
        std::vector<double> rhs(n);
        for (int r = 0; r < n; ++r) rhs[r] = -F[r];
        std::vector<double> delta;
        if (!detail::gauss_solve(J, rhs, delta)) break;
        // clip so the log-sum-exp terms cannot saturate, then backtrack
        double dmax = 0;
        for (double d : delta) dmax = std::max(dmax, std::abs(d));
        double step = dmax > 2.0 ? 2.0 / dmax : 1.0;
        bool ok = false;
        for (int back = 0; back < 50 && !ok; ++back, step *= 0.5) {
            auto zt = z;
            for (int d = 0; d < n; ++d) zt[d] += step * delta[d];
            auto Ft = detail::relation_system(g, rates, zt);
            const double ft = norm_inf(Ft);
            if (ft < fn) {
                z = std::move(zt);
                F = std::move(Ft);
                fn = ft;
                ok = true;
            }
        }
        if (!ok) break;
    }

    RootFindResult out;
    out.L.resize(n);
    double dot = 0;
    for (int i = 0; i < n; ++i) {
        out.L[i] = std::exp(z[i]);
        dot += p.p[i] * out.L[i];
    }
    for (int i = 0; i < n; ++i) out.L[i] /= dot;  // p-unit representative
    out.max_equation_residual = fn;
    out.converged = fn < 1e-12;
    return out;
}

}  // namespace likednet::testing
