#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "likednet/errors.hpp"
#include "likednet/graph.hpp"
#include "oracles.hpp"

using namespace likednet;

namespace {

Graph raw_graph(int n, std::vector<std::pair<int, int>> edges) {
    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    g.rebuild_adjacency();
    return g;
}

}  // namespace

TEST_CASE("validate accepts a clean triangle") {
    const auto g = Graph::make(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(validate(g).empty());
}

TEST_CASE("validate flags a self-loop") {
    const auto g = raw_graph(3, {{0, 1}, {2, 2}});
    const auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("self-loop") != std::string::npos);
    CHECK(v[0].find("2") != std::string::npos);
}

TEST_CASE("make stores an undirected pair once") {
    const auto g = Graph::make(2, {{0, 1}, {1, 0}});
    CHECK(g.edges.size() == 1);
    CHECK(validate(g).empty());
}

TEST_CASE("validate flags duplicates, range and degree errors") {
    auto g = raw_graph(3, {{0, 1}, {1, 0}, {0, 5}});
    auto v = validate(g);
    CHECK(v.size() == 2);  // duplicate (0,1) and out-of-range (0,5)
    g.degree[2] = 7;
    v = validate(g);
    CHECK(v.size() == 3);
}

TEST_CASE("is_connected") {
    CHECK(is_connected(Graph::make(3, {{0, 1}, {1, 2}})));
    CHECK_FALSE(is_connected(Graph::make(4, {{0, 1}, {2, 3}})));
    CHECK(is_connected(Graph::make(1, {})));
}

TEST_CASE("generate_ba hundred-vertex instance") {
    const auto g = generate_ba({5, 95, 5, 42});
    CHECK(g.n == 100);
    CHECK(g.edges.size() == 485);  // C(5,2) + 95*5
    CHECK(validate(g).empty());
    CHECK(is_connected(g));
}

TEST_CASE("generate_ba with no growth is the complete seed") {
    const auto g = generate_ba({3, 0, 1, 9});
    CHECK(g.n == 3);
    CHECK(g.edges.size() == 3);
}

TEST_CASE("generate_ba is deterministic in the seed") {
    const auto a = generate_ba({5, 40, 3, 1234});
    const auto b = generate_ba({5, 40, 3, 1234});
    const auto c = generate_ba({5, 40, 3, 1235});
    CHECK(a.edges == b.edges);
    CHECK(a.edges != c.edges);
}

TEST_CASE("generate_ba rejects bad parameters") {
    CHECK_THROWS_AS(generate_ba({5, 95, 6, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate_ba({0, 5, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate_ba({5, -1, 5, 0}), std::invalid_argument);
}

TEST_CASE("generate_ba invariants over random parameters") {
    std::mt19937_64 gen(7);
    for (int rep = 0; rep < 50; ++rep) {
        const int m0 = 1 + static_cast<int>(bounded(gen, 6));
        const int m = 1 + static_cast<int>(bounded(gen, m0));
        const int t = static_cast<int>(bounded(gen, 40));
        const auto g = generate_ba({m0, t, m, gen()});
        CAPTURE(m0);
        CAPTURE(t);
        CAPTURE(m);
        CHECK(validate(g).empty());
        CHECK(is_connected(g));
        long degsum = 0;
        for (int d : g.degree) degsum += d;
        CHECK(degsum == 2L * (m0 * (m0 - 1) / 2 + static_cast<long>(m) * t));
    }
}

TEST_CASE("generate_ba degree distribution is right-skewed") {
    int hits = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        const auto g = generate_ba({5, 95, 5, static_cast<std::uint64_t>(s)});
        const int maxdeg = *std::max_element(g.degree.begin(), g.degree.end());
        const double mean = 2.0 * g.edges.size() / g.n;
        if (maxdeg >= 2 * mean) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("read_edge_list parses a path") {
    const auto g = read_edge_list("0 1\n1 2\n");
    CHECK(g.n == 3);
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("edge list round trip is canonical") {
    const std::string messy = "# a comment\n\n2 0\n0 1\n\n1 2\n";
    const auto g = read_edge_list(messy);
    const auto text = write_edge_list(g);
    CHECK(text == "# n=3\n0 1\n0 2\n1 2\n");
    const auto g2 = read_edge_list(text);
    CHECK(g2.edges == g.edges);
    CHECK(g2.n == g.n);
    CHECK(write_edge_list(g2) == text);
}

TEST_CASE("read_edge_list errors carry line numbers") {
    CHECK_THROWS_WITH_AS(read_edge_list("0 1\n0 0\n"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(read_edge_list("0 x\n"), ParseError);
    CHECK_THROWS_AS(read_edge_list("0 1 2\n"), ParseError);
    CHECK_THROWS_AS(read_edge_list("0 -2\n"), ParseError);
    CHECK_THROWS_AS(read_edge_list("# n=2\n0 5\n"), ParseError);
}

TEST_CASE("declared vertex count allows isolated tail vertices") {
    const auto g = read_edge_list("# n=4\n0 1\n");
    CHECK(g.n == 4);
    CHECK_FALSE(is_connected(g));
}
