#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "sparsetsp/exact.hpp"
#include "sparsetsp/graph.hpp"
#include "test_util.hpp"

using namespace sparsetsp;

namespace {

std::int64_t total_weight(const std::vector<Edge>& edges) {
    std::int64_t s = 0;
    for (const Edge& e : edges) s += e.w;
    return s;
}

std::set<std::pair<int, int>> edge_pairs(const std::vector<Edge>& edges) {
    std::set<std::pair<int, int>> s;
    for (const Edge& e : edges) s.insert({e.u, e.v});
    return s;
}

// Minimum spanning-tree weight by enumerating all (n-1)-edge subsets.
std::int64_t brute_force_mst_weight(const WeightedGraph& g) {
    const int m = static_cast<int>(g.edges.size());
    const int need = g.n - 1;
    std::vector<int> pick(need);
    std::int64_t best = -1;
    // Iterate combinations via a simple counter.
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        // Check whether the selection spans.
        std::vector<int> parent(g.n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int merges = 0;
        std::int64_t w = 0;
        for (int i : pick) {
            const Edge& e = g.edges[i];
            w += e.w;
            int a = find(e.u), b = find(e.v);
            if (a != b) {
                parent[a] = b;
                ++merges;
            }
        }
        if (merges == need && (best < 0 || w < best)) best = w;
        // Next combination.
        int i = need - 1;
        while (i >= 0 && pick[i] == m - need + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

}  // namespace

TEST_CASE("MST on a weighted triangle") {
    Instance inst = tst::explicit_instance(3, {1, 2, 3});
    WeightedGraph g{3, instance_edges(inst)};
    std::vector<Edge> t = minimum_spanning_tree(g);
    CHECK(edge_pairs(t) == std::set<std::pair<int, int>>{{0, 1}, {0, 2}});
    CHECK(total_weight(t) == 3);
}

TEST_CASE("MST tie-break on uniform K4 is the star at vertex 0") {
    WeightedGraph g{4, instance_edges(tst::uniform_instance(4))};
    std::vector<Edge> t = minimum_spanning_tree(g);
    CHECK(edge_pairs(t) == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}});
}

TEST_CASE("MST of a tree is the tree itself") {
    WeightedGraph g{4, {{0, 1, 5}, {1, 2, 7}, {2, 3, 2}}};
    std::vector<Edge> t = minimum_spanning_tree(g);
    CHECK(edge_pairs(t) == edge_pairs(g.edges));
    WeightedGraph disconnected{4, {{0, 1, 1}, {2, 3, 1}}};
    CHECK_THROWS_AS(minimum_spanning_tree(disconnected), ConnectivityError);
}

TEST_CASE("MST matches brute-force enumeration on random instances") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Instance inst = generate_random_instance(7, seed, 100.0);
        WeightedGraph g{7, instance_edges(inst)};
        CHECK(total_weight(minimum_spanning_tree(g)) == brute_force_mst_weight(g));
    }
}

TEST_CASE("successive MST extraction on the K4 example") {
    WeightedGraph g{4, instance_edges(tst::k4_example())};
    MstExtraction ext = successive_mst_extract(g, 2);
    REQUIRE(ext.levels.size() == 2);
    CHECK(edge_pairs(ext.levels[0]) ==
          std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(edge_pairs(ext.levels[1]) ==
          std::set<std::pair<int, int>>{{0, 2}, {1, 3}, {0, 3}});
    CHECK(ext.level_of(0, 1) == 1);
    CHECK(ext.level_of(3, 1) == 2);  // order-insensitive lookup
}

TEST_CASE("one extraction level equals the MST") {
    Instance inst = generate_random_instance(8, 3, 100.0);
    WeightedGraph g{8, instance_edges(inst)};
    MstExtraction ext = successive_mst_extract(g, 1);
    REQUIRE(ext.levels.size() == 1);
    CHECK(edge_pairs(ext.levels[0]) == edge_pairs(minimum_spanning_tree(g)));
}

TEST_CASE("extraction levels partition k(n-1) edges") {
    Instance inst = generate_random_instance(5, 11, 100.0);
    WeightedGraph g{5, instance_edges(inst)};
    MstExtraction ext = successive_mst_extract(g, 2);
    std::set<std::pair<int, int>> seen;
    std::size_t total = 0;
    for (const auto& level : ext.levels) {
        CHECK(level.size() == 4);
        total += level.size();
        for (const Edge& e : level) CHECK(seen.insert({e.u, e.v}).second);
    }
    CHECK(total == 8);
}

TEST_CASE("extraction reports early disconnection with completed levels") {
    // The weighted K4 supports exactly two extraction levels (6 edges).
    WeightedGraph g{4, instance_edges(tst::k4_example())};
    CHECK_THROWS_WITH_AS(successive_mst_extract(g, 3), doctest::Contains("2 of 3"),
                         ConnectivityError);
    // On uniform K4 the first MST is the star at vertex 0, which isolates
    // it from the residual immediately.
    WeightedGraph u{4, instance_edges(tst::uniform_instance(4))};
    CHECK_THROWS_WITH_AS(successive_mst_extract(u, 2), doctest::Contains("1 of 2"),
                         ConnectivityError);
}

TEST_CASE("tour length worked examples") {
    CHECK(tour_length({0, 1, 2, 3}, tst::uniform_instance(4)) == 4);
    CHECK(tour_length({0, 1, 2, 3}, tst::k4_example()) == 12);
    CHECK(tour_length({0, 2, 1, 3}, tst::k4_example()) == 4 + 2 + 5 + 6);
    CHECK_THROWS_AS(tour_length({0, 1, 1, 3}, tst::k4_example()), ValidationError);
    CHECK_THROWS_AS(tour_length({0, 1, 2}, tst::k4_example()), ValidationError);
}

TEST_CASE("double-tree tours on the rectangle") {
    auto [left, right] = double_tree_tours(tst::rectangle_instance());
    CHECK(left.order == std::vector<int>{0, 1, 2, 3});
    CHECK(left.length == 64);
    CHECK(right.length == 60);
}

TEST_CASE("double-tree degenerate cases") {
    auto [a, b] = double_tree_tours(tst::uniform_instance(4));
    CHECK(a.length == 4);
    CHECK(b.length == 4);
    Instance tri = tst::explicit_instance(3, {1, 2, 3});
    auto [ta, tb] = double_tree_tours(tri);
    CHECK(ta.length == 6);
    CHECK(tb.length == 6);
}

TEST_CASE("double-tree bound holds on random metric instances") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Instance inst = generate_random_instance(9, 100 + seed, 1000.0);
        WeightedGraph g{9, instance_edges(inst)};
        std::int64_t mst_w = total_weight(minimum_spanning_tree(g));
        std::int64_t opt = held_karp(inst).length;
        auto [a, b] = double_tree_tours(inst);
        for (const Tour* t : {&a, &b}) {
            // Rounded Euclidean weights can break the triangle inequality by
            // at most 1 per shortcut, hence the n slack on the 2x bound.
            CHECK(t->length <= 2 * mst_w + inst.n());
            CHECK(t->length >= opt);
        }
    }
}

TEST_CASE("instance_edges respects a retained edge list") {
    Instance inst = tst::uniform_instance(4);
    CHECK(instance_edges(inst).size() == 6);
    inst.set_edge_list({{0, 1}, {2, 3}});
    std::vector<Edge> es = instance_edges(inst);
    REQUIRE(es.size() == 2);
    CHECK(es[0] == Edge{0, 1, 1});
    CHECK(es[1] == Edge{2, 3, 1});
}
