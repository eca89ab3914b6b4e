#include "likednet/likedness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "likednet/errors.hpp"
#include "likednet/text.hpp"

namespace likednet {

namespace {

int neighbor_slot(const Graph& g, int i, int j) {
    const auto& nbrs = g.adj[i];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
    if (it == nbrs.end() || *it != j) return -1;
    return static_cast<int>(it - nbrs.begin());
}

void check_positive_values(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!(x > 0) || !std::isfinite(x))
            throw std::invalid_argument(std::string(what) + " must be strictly positive and finite");
}

}  // namespace

RateMatrix RateMatrix::from_entries(const Graph& g, const std::vector<RateEntry>& entries) {
    RateMatrix r;
    r.n = g.n;
    r.incoming.resize(g.n);
    for (int i = 0; i < g.n; ++i) r.incoming[i].assign(g.adj[i].size(), -1.0);
    for (const auto& e : entries) {
        if (e.i < 0 || e.i >= g.n || e.j < 0 || e.j >= g.n)
            throw std::invalid_argument("rate pair (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ") out of range");
        if (!(e.rate > 0) || !std::isfinite(e.rate))
            throw std::invalid_argument("rate for pair (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ") must be strictly positive");
        const int slot = neighbor_slot(g, e.i, e.j);
        if (slot < 0)
            throw std::invalid_argument("rate pair (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ") is not an edge of the graph");
        if (r.incoming[e.i][slot] >= 0)
            throw std::invalid_argument("duplicate rate for pair (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ")");
        r.incoming[e.i][slot] = e.rate;
    }
    for (int i = 0; i < g.n; ++i)
        for (std::size_t k = 0; k < r.incoming[i].size(); ++k)
            if (r.incoming[i][k] < 0)
                throw std::invalid_argument("missing rate for pair (" + std::to_string(i) + "," +
                                            std::to_string(g.adj[i][k]) + ")");
    return r;
}

double RateMatrix::at(const Graph& g, int i, int j) const {
    const int slot = neighbor_slot(g, i, j);
    if (slot < 0)
        throw std::invalid_argument("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is not an edge pair");
    return incoming[i][slot];
}

std::vector<RateEntry> RateMatrix::entries(const Graph& g) const {
    std::vector<RateEntry> out;
    for (int i = 0; i < n; ++i)
        for (std::size_t k = 0; k < incoming[i].size(); ++k)
            out.push_back({i, g.adj[i][k], incoming[i][k]});
    return out;
}

const char* to_string(Normalization n) {
    switch (n) {
        case Normalization::raw: return "raw";
        case Normalization::p_unit: return "p-unit";
        case Normalization::log_stationary: return "log-stationary";
    }
    return "?";
}

double sigma(const Graph& g, const LikednessVector& L, int i) {
    if (i < 0 || i >= g.n) throw std::invalid_argument("sigma: vertex out of range");
    if (g.degree[i] == 0)
        throw std::invalid_argument("degenerate graph: vertex " + std::to_string(i) +
                                    " is isolated");
    double s = 0;
    for (int j : g.adj[i]) s += L.values[j];
    return s;
}

SolveReport solve_detailed(const Graph& g, const RateMatrix& rates, const SolverConfig& cfg) {
    if (g.n <= 0) throw std::invalid_argument("solve: empty graph");
    if (!(cfg.tol > 0)) throw std::invalid_argument("solve: tol must be positive");
    if (!(cfg.alpha > 0) || cfg.alpha > 1)
        throw std::invalid_argument("solve: alpha must be in (0,1]");
    if (!is_connected(g)) throw std::invalid_argument("solve requires a connected graph");

    std::vector<double> L;
    if (cfg.initial.empty()) {
        L.assign(g.n, 1.0);
    } else {
        if (static_cast<int>(cfg.initial.size()) != g.n)
            throw std::invalid_argument("solve: initial vector has wrong length");
        check_positive_values(cfg.initial, "initial vector");
        L = cfg.initial;
    }

    std::vector<double> F(g.n);
    double res = 0;
    for (long it = 1; it <= cfg.max_iter; ++it) {
        res = 0;
        for (int i = 0; i < g.n; ++i) {
            double num = 0, den = 0;
            const auto& nbrs = g.adj[i];
            const auto& in = rates.incoming[i];
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                const double lj = L[nbrs[k]];
                num += in[k] * lj;
                den += lj;
            }
            F[i] = num / den;
            res = std::max(res, std::abs(1.0 - F[i] / L[i]));
        }
        if (res <= cfg.tol)
            return {LikednessVector{std::move(L), Normalization::raw}, it, res, true};
        for (int i = 0; i < g.n; ++i) {
            L[i] = (1.0 - cfg.alpha) * L[i] + cfg.alpha * F[i];
            if (!(L[i] > 0) || !std::isfinite(L[i]))
                throw std::runtime_error("solve: iterate lost positivity at vertex " +
                                         std::to_string(i));
        }
    }
    return {LikednessVector{std::move(L), Normalization::raw}, cfg.max_iter, res, false};
}

LikednessVector solve(const Graph& g, const RateMatrix& rates, const SolverConfig& cfg) {
    auto rep = solve_detailed(g, rates, cfg);
    if (!rep.converged)
        throw ConvergenceError("likedness solve did not converge", rep.residual, rep.iterations);
    return std::move(rep.likedness);
}

LikednessVector normalize_unique(const LikednessVector& L, const StationaryVector& p) {
    if (L.values.size() != p.p.size())
        throw std::invalid_argument("normalize_unique: dimension mismatch");
    check_positive_values(L.values, "likedness");
    double dot = 0;
    for (std::size_t i = 0; i < L.values.size(); ++i) dot += p.p[i] * L.values[i];
    LikednessVector out;
    out.norm = Normalization::p_unit;
    out.values.resize(L.values.size());
    for (std::size_t i = 0; i < L.values.size(); ++i) out.values[i] = L.values[i] / dot;
    return out;
}

std::vector<double> residual(const Graph& g, const RateMatrix& rates, const LikednessVector& L) {
    std::vector<double> out(g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        double num = 0, den = 0;
        const auto& nbrs = g.adj[i];
        const auto& in = rates.incoming[i];
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            const double lj = L.values[nbrs[k]];
            num += (L.values[i] - in[k]) * lj;  // (G_ij L_i - R_ij) L_j
            den += lj;
        }
        out[i] = std::abs(num) / (L.values[i] * den);
    }
    return out;
}

RateMatrix read_rate_csv(const Graph& g, std::string_view text) {
    std::vector<RateEntry> entries;
    int lineno = 0;
    bool header_seen = false;
    for (auto raw : split_lines(text)) {
        ++lineno;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "i,j,rate") throw ParseError(lineno, "expected header \"i,j,rate\"");
            header_seen = true;
            continue;
        }
        RateEntry e;
        const char* s = line.data();
        const char* end = line.data() + line.size();
        auto r1 = std::from_chars(s, end, e.i);
        if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',')
            throw ParseError(lineno, "expected \"i,j,rate\" row");
        auto r2 = std::from_chars(r1.ptr + 1, end, e.j);
        if (r2.ec != std::errc{} || r2.ptr == end || *r2.ptr != ',')
            throw ParseError(lineno, "expected \"i,j,rate\" row");
        auto r3 = std::from_chars(r2.ptr + 1, end, e.rate);
        if (r3.ec != std::errc{} || r3.ptr != end)
            throw ParseError(lineno, "bad rate value");
        entries.push_back(e);
    }
    if (!header_seen) throw ParseError(lineno, "missing \"i,j,rate\" header");
    try {
        return RateMatrix::from_entries(g, entries);
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

std::string write_rate_csv(const Graph& g, const RateMatrix& rates) {
    std::ostringstream out;
    out << "i,j,rate\n";
    for (const auto& e : rates.entries(g))
        out << e.i << "," << e.j << "," << format_double(e.rate) << "\n";
    return out.str();
}

RateMatrix load_rate_file(const Graph& g, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open rate file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_rate_csv(g, buf.str());
}

void save_rate_file(const Graph& g, const RateMatrix& rates, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write rate file: " + path);
    out << write_rate_csv(g, rates);
}

}  // namespace likednet
