#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "likednet/simulation.hpp"
#include "oracles.hpp"

using namespace likednet;
using namespace likednet::testing;

namespace {

const Graph k2 = Graph::make(2, {{0, 1}});
const Graph k3 = Graph::make(3, {{0, 1}, {1, 2}, {0, 2}});

EnsembleResult fake_result(int index, std::vector<double> lstar, std::vector<double> nd) {
    EnsembleResult r;
    r.index = index;
    r.lstar = std::move(lstar);
    r.nd = std::move(nd);
    r.converged = true;
    r.residual = 0;
    return r;
}

}  // namespace

TEST_CASE("sample_rates covers every ordered pair deterministically") {
    const auto g = generate_ba({4, 20, 2, 5});
    const auto a = sample_rates(g, 0.5, 99);
    const auto b = sample_rates(g, 0.5, 99);
    const auto c = sample_rates(g, 0.5, 100);
    CHECK(a.entries(g).size() == 2 * g.edges.size());
    CHECK(a.incoming == b.incoming);
    CHECK(a.incoming != c.incoming);
    for (const auto& e : a.entries(g)) CHECK(e.rate > 0);
}

TEST_CASE("sampled rates have the exponential mean") {
    // star with 50k leaves gives 1e5 ordered pairs in one draw
    const int leaves = 50000;
    std::vector<std::pair<int, int>> edges;
    for (int k = 1; k <= leaves; ++k) edges.emplace_back(0, k);
    const auto star = Graph::make(leaves + 1, std::move(edges));
    const auto r = sample_rates(star, 0.5, 4242);
    double mean = 0;
    long cnt = 0;
    for (const auto& row : r.incoming)
        for (double v : row) {
            mean += v;
            ++cnt;
        }
    mean /= cnt;
    CHECK(cnt == 2 * leaves);
    CHECK(std::abs(mean - 2.0) < 0.03);
}

TEST_CASE("one-ensemble experiment on K3") {
    ExperimentConfig cfg;
    cfg.ensemble_count = 1;
    cfg.master_seed = 3;
    const auto results = run_ensembles_serial(k3, cfg);
    REQUIRE(results.size() == 1);
    CHECK(results[0].converged);
    CHECK(results[0].residual <= cfg.solver.tol);
    for (double v : results[0].lstar) CHECK(v > 0);
    for (double v : results[0].nd) CHECK(v > 0);
}

TEST_CASE("parallel ensembles are bit-identical to serial in any thread count") {
    const auto g = generate_ba({5, 35, 3, 8});
    ExperimentConfig cfg;
    cfg.ensemble_count = 24;
    cfg.master_seed = 17;
    const auto s = run_ensembles_serial(g, cfg);
    for (int threads : {2, 3, 7}) {
        const auto par = run_ensembles_parallel(g, cfg, threads);
        REQUIRE(par.size() == s.size());
        for (std::size_t e = 0; e < s.size(); ++e) {
            CHECK(par[e].lstar == s[e].lstar);
            CHECK(par[e].nd == s[e].nd);
            CHECK(par[e].iterations == s[e].iterations);
        }
    }
}

TEST_CASE("converged ensembles satisfy the solver tolerance") {
    const auto g = generate_ba({5, 25, 3, 4});
    ExperimentConfig cfg;
    cfg.ensemble_count = 50;
    cfg.master_seed = 9;
    for (const auto& r : run_ensembles_serial(g, cfg)) {
        REQUIRE(r.converged);
        CHECK(r.residual <= cfg.solver.tol);
    }
}

TEST_CASE("experiment rejects bad configs") {
    ExperimentConfig cfg;
    cfg.ensemble_count = 0;
    CHECK_THROWS_AS(run_experiment(k3, cfg), std::invalid_argument);
    cfg = {};
    cfg.lambda = -1;
    CHECK_THROWS_AS(run_experiment(k3, cfg), std::invalid_argument);
    cfg = {};
    CHECK_THROWS_AS(run_experiment(Graph::make(4, {{0, 1}, {2, 3}}), cfg), std::invalid_argument);
}

TEST_CASE("failure cap aborts the experiment") {
    ExperimentConfig cfg;
    cfg.ensemble_count = 5;
    cfg.solver.max_iter = 2;  // guarantees non-convergence
    CHECK_THROWS_WITH_AS(run_experiment(k3, cfg), doctest::Contains("failure rate"),
                         std::runtime_error);
}

TEST_CASE("failed ensembles are excluded from the means and counted") {
    auto ok1 = fake_result(0, {1.0, 1.0, 1.0}, {2.0, 2.0, 2.0});
    auto bad = EnsembleResult{};
    bad.index = 1;
    bad.converged = false;
    auto ok2 = fake_result(2, {3.0, 1.0, 1.0}, {4.0, 2.0, 2.0});
    ExperimentConfig cfg;
    cfg.ensemble_count = 3;
    const auto agg = aggregate(k3, {ok1, bad, ok2}, cfg);
    CHECK(agg.ensembles_total == 3);
    CHECK(agg.ensembles_failed == 1);
    CHECK(agg.mean_lstar[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(agg.mean_nd[0] == doctest::Approx(3.0).epsilon(1e-15));
    long binned = 0;
    for (long c : agg.nd_histogram.counts) binned += c;
    CHECK(binned == 6);  // 2 converged ensembles x 3 nodes
}

TEST_CASE("neighbor curve on a single K2 ensemble") {
    const auto r = fake_result(0, {1.0, 1.0}, {2.0, 8.0});
    BinSpec bins;
    bins.count = 4;
    const auto nc = neighbor_pair_curve(k2, {r}, bins);
    CHECK(nc.observations == 2);
    // two observations: own 2 pairs with neighbor-mean 8, own 8 with 2
    REQUIRE(nc.curve.size() == 2);
    CHECK(nc.curve.front().mean_y == 8.0);
    CHECK(nc.curve.back().mean_y == 2.0);
    long total = 0;
    for (long c : nc.global.counts) total += c;
    CHECK(total == nc.observations);
}

TEST_CASE("neighbor curve collapses to one point for a uniform ensemble") {
    const double r = 3.2;
    const auto res = fake_result(0, {1, 1, 1}, {r, r, r});
    BinSpec bins;
    bins.count = 10;
    const auto nc = neighbor_pair_curve(k3, {res}, bins);
    REQUIRE(nc.curve.size() == 1);  // empty bins are absent, not zero
    CHECK(nc.curve[0].count == 3);
    CHECK(nc.curve[0].mean_y == doctest::Approx(r).epsilon(1e-12));
    CHECK(nc.curve[0].center == doctest::Approx(r).epsilon(1e-6));
}

TEST_CASE("aggregate determinism and anti-homophily at desk scale") {
    const auto g = generate_ba({5, 95, 5, 12});
    ExperimentConfig cfg;
    cfg.ensemble_count = 500;
    cfg.master_seed = 21;
    const auto a = run_experiment(g, cfg, 0);  // all cores
    const auto b = run_experiment(g, cfg, 2);
    CHECK(a.mean_lstar == b.mean_lstar);
    CHECK(a.mean_nd == b.mean_nd);
    CHECK(a.neighbor_correlation == b.neighbor_correlation);
    REQUIRE(a.neighbor_curve.size() == b.neighbor_curve.size());
    for (std::size_t k = 0; k < a.neighbor_curve.size(); ++k) {
        CHECK(a.neighbor_curve[k].mean_y == b.neighbor_curve[k].mean_y);
        CHECK(a.neighbor_curve[k].count == b.neighbor_curve[k].count);
        CHECK(a.neighbor_curve[k].scaled == b.neighbor_curve[k].scaled);
    }

    // desirable neighbors sit next to less desirable ones
    CHECK(a.neighbor_correlation < 0);
    CHECK(a.ensembles_failed == 0);

    // histogram counts cover every observation
    long total = 0;
    for (long c : a.nd_histogram.counts) total += c;
    CHECK(total == static_cast<long>(g.n) * cfg.ensemble_count);
}

TEST_CASE("explicit bin bounds clamp outliers into the end bins") {
    const auto r = fake_result(0, {1, 1, 1}, {0.5, 2.0, 50.0});
    BinSpec bins;
    bins.count = 3;
    bins.lo = 1.0;
    bins.hi = 4.0;
    const auto nc = neighbor_pair_curve(k3, {r}, bins);
    long total = 0;
    for (long c : nc.global.counts) total += c;
    CHECK(total == 3);  // nothing dropped
    CHECK(nc.global.counts.front() >= 1);
    CHECK(nc.global.counts.back() >= 1);
}

TEST_CASE("likedness-vs-desirability curve bins every observation") {
    const auto g = generate_ba({5, 45, 4, 6});
    ExperimentConfig cfg;
    cfg.ensemble_count = 30;
    cfg.master_seed = 33;
    const auto results = run_ensembles_serial(g, cfg);
    const auto curve = likedness_nd_curve(results, cfg.bins);
    long total = 0;
    for (const auto& pt : curve) {
        CHECK(pt.count > 0);
        CHECK(pt.mean_y > 0);
        total += pt.count;
    }
    CHECK(total == static_cast<long>(g.n) * cfg.ensemble_count);
}
