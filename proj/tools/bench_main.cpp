// Timing harness comparing the serial reference kernels against the OpenMP
// ones. Not a correctness test (the suites assert bit-identical results);
// this just reports wall time and speedup.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "likednet/centrality.hpp"
#include "likednet/desirability.hpp"
#include "likednet/graph.hpp"
#include "likednet/simulation.hpp"

using namespace likednet;
namespace chrono = std::chrono;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = chrono::steady_clock::now();
    fn();
    const auto t1 = chrono::steady_clock::now();
    return chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    int scale = 1;
    if (argc > 1) scale = std::max(1, std::atoi(argv[1]));
#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled (serial build)\n");
#endif

    // betweenness over sources
    {
        const Graph g = generate_ba({5, 795 * scale + 195, 5, 7});
        CentralityScores a, b;
        const double ts = time_ms([&] { a = betweenness_centrality_serial(g); });
        const double tp = time_ms([&] { b = betweenness_centrality(g); });
        report(("betweenness n=" + std::to_string(g.n)).c_str(), ts, tp);
    }

    // ensemble batch
    {
        const Graph g = generate_ba({5, 95, 5, 7});
        ExperimentConfig cfg;
        cfg.ensemble_count = 200 * scale;
        cfg.master_seed = 11;
        const double ts = time_ms([&] { run_ensembles_serial(g, cfg); });
        const double tp = time_ms([&] { run_ensembles_parallel(g, cfg, 0); });
        report(("ensembles x" + std::to_string(cfg.ensemble_count)).c_str(), ts, tp);
    }

    // product-formula rows
    {
        const Graph g = generate_ba({5, 45, 5, 7});
        const auto rates = sample_rates(g, 0.5, 3);
        const auto p = stationary(g);
        const auto L = solve(g, rates);
        const auto basis = log_stationary_normalize(g, rates, L, p);
        const long n = 2000 * scale;
        double tp = time_ms([&] { product_formula_report(g, rates, basis, p, n); });
        double ts = 0;
        for (int i = 0; i < g.n; ++i)
            ts += time_ms([&] { product_formula_eval(g, rates, basis, p, i, n); });
        report(("product rows n=" + std::to_string(n)).c_str(), ts, tp);
    }
    return 0;
}
