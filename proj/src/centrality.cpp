#include "likednet/centrality.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

#include "likednet/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace likednet {

const char* to_string(Measure m) {
    switch (m) {
        case Measure::degree: return "degree";
        case Measure::betweenness: return "betweenness";
        case Measure::closeness: return "closeness";
        case Measure::eigenvector: return "eigenvector";
    }
    return "?";
}

CentralityScores degree_centrality(const Graph& g) {
    CentralityScores s{Measure::degree, {}};
    s.values.assign(g.degree.begin(), g.degree.end());
    return s;
}

namespace {

// One Brandes source pass; adds this source's pair dependencies into `out`.
void brandes_source(const Graph& g, int s, std::vector<double>& out) {
    const int n = g.n;
    std::vector<int> order;
    order.reserve(n);
    std::vector<std::vector<int>> pred(n);
    std::vector<long long> npaths(n, 0);
    std::vector<int> dist(n, -1);
    npaths[s] = 1;
    dist[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        for (int w : g.adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
            if (dist[w] == dist[v] + 1) {
                npaths[w] += npaths[v];
                pred[w].push_back(v);
            }
        }
    }
    std::vector<double> delta(n, 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int w = *it;
        for (int v : pred[w])
            delta[v] += static_cast<double>(npaths[v]) / static_cast<double>(npaths[w]) *
                        (1.0 + delta[w]);
        if (w != s) out[w] += delta[w];
    }
}

}  // namespace

CentralityScores betweenness_centrality_serial(const Graph& g) {
    if (g.n > 0 && !is_connected(g))
        throw std::invalid_argument("betweenness requires a connected graph");
    std::vector<double> cb(g.n, 0.0);
    for (int s = 0; s < g.n; ++s) brandes_source(g, s, cb);
    for (double& v : cb) v *= 0.5;  // each unordered pair was seen from both endpoints
    return {Measure::betweenness, std::move(cb)};
}

CentralityScores betweenness_centrality(const Graph& g) {
    if (g.n > 0 && !is_connected(g))
        throw std::invalid_argument("betweenness requires a connected graph");
    const int n = g.n;
    // per-source rows, reduced in source order: bit-identical for any schedule
    std::vector<std::vector<double>> rows(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int s = 0; s < n; ++s) {
        rows[s].assign(n, 0.0);
        brandes_source(g, s, rows[s]);
    }
    std::vector<double> cb(n, 0.0);
    for (int s = 0; s < n; ++s)
        for (int w = 0; w < n; ++w) cb[w] += rows[s][w];
    for (double& v : cb) v *= 0.5;
    return {Measure::betweenness, std::move(cb)};
}

CentralityScores closeness_centrality(const Graph& g) {
    if (!is_connected(g)) throw std::invalid_argument("closeness requires a connected graph");
    std::vector<double> out(g.n, 0.0);
    if (g.n == 1) {
        out[0] = 0.0;
        return {Measure::closeness, std::move(out)};
    }
    std::vector<int> dist(g.n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) firstprivate(dist)
#endif
    for (int s = 0; s < g.n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        long long total = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            total += dist[v];
            for (int w : g.adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
            }
        }
        out[s] = static_cast<double>(g.n - 1) / static_cast<double>(total);
    }
    return {Measure::closeness, std::move(out)};
}

CentralityScores eigenvector_centrality(const Graph& g, double tol, long max_iter) {
    if (!is_connected(g)) throw std::invalid_argument("eigenvector centrality requires a connected graph");
    std::vector<double> x(g.n, 1.0);
    std::vector<double> y(g.n);
    double res = 0;
    for (long it = 0; it < max_iter; ++it) {
        for (int i = 0; i < g.n; ++i) {
            double s = x[i];  // A+I shift
            for (int j : g.adj[i]) s += x[j];
            y[i] = s;
        }
        double mx = 0;
        for (double v : y) mx = std::max(mx, v);
        res = 0;
        for (int i = 0; i < g.n; ++i) {
            y[i] /= mx;
            res = std::max(res, std::abs(y[i] - x[i]));
        }
        x.swap(y);
        if (res <= tol) return {Measure::eigenvector, std::move(x)};
    }
    throw ConvergenceError("eigenvector centrality did not converge", res, max_iter);
}

}  // namespace likednet
