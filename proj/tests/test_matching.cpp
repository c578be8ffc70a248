#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "maxatsp/matching.hpp"
#include "maxatsp/oracle.hpp"
#include "support/fixtures.hpp"

using namespace maxatsp;

namespace {

void expect_valid_matching(const UndirectedWeightedGraph& g, const Matching& m) {
    Weight total = 0;
    std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int id : m.edge_ids) {
        const auto& e = g.edges()[static_cast<std::size_t>(id)];
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
        total += e.weight;
        EXPECT_EQ(m.mate[static_cast<std::size_t>(e.u)], e.v);
        EXPECT_EQ(m.mate[static_cast<std::size_t>(e.v)], e.u);
    }
    for (int d : deg) EXPECT_LE(d, 1);
    EXPECT_EQ(total, m.weight);
}

Weight permutation_scan(const std::vector<Weight>& w, int n, bool derangement) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    Weight best = std::numeric_limits<Weight>::min();
    do {
        Weight s = 0;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            if (derangement && p[static_cast<std::size_t>(i)] == i) ok = false;
            s += w[static_cast<std::size_t>(i * n + p[static_cast<std::size_t>(i)])];
        }
        if (ok) best = std::max(best, s);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

}  // namespace

TEST(Blossom, SingleEdge) {
    UndirectedWeightedGraph g(2);
    g.add_edge(0, 1, 7);
    const auto m = max_weight_perfect_matching(g);
    EXPECT_EQ(m.weight, 7);
    EXPECT_EQ(m.edge_ids, std::vector<int>{0});
}

TEST(Blossom, FourCyclePicksHeavierPair) {
    UndirectedWeightedGraph g(4);
    g.add_edge(0, 1, 5);
    g.add_edge(1, 2, 1);
    g.add_edge(2, 3, 5);
    g.add_edge(3, 0, 1);
    const auto m = max_weight_perfect_matching(g);
    EXPECT_EQ(m.weight, 10);
    EXPECT_EQ(m.edge_ids, (std::vector<int>{0, 2}));
}

TEST(Blossom, PerfectnessBeatsWeight) {
    // The heavy middle edge would leave both ends unmatched.
    UndirectedWeightedGraph g(4);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 100);
    g.add_edge(2, 3, 1);
    const auto m = max_weight_perfect_matching(g);
    EXPECT_EQ(m.weight, 2);
}

TEST(Blossom, NoPerfectMatchingThrows) {
    UndirectedWeightedGraph g(4);
    g.add_edge(0, 1, 1);
    g.add_edge(0, 2, 1);
    g.add_edge(0, 3, 1);
    EXPECT_THROW(max_weight_perfect_matching(g), NoPerfectMatching);
    UndirectedWeightedGraph odd(3);
    odd.add_edge(0, 1, 1);
    odd.add_edge(1, 2, 1);
    EXPECT_THROW(max_weight_perfect_matching(odd), NoPerfectMatching);
}

TEST(Blossom, EmptyGraphIsPerfect) {
    UndirectedWeightedGraph g(0);
    EXPECT_EQ(max_weight_perfect_matching(g).weight, 0);
}

TEST(Blossom, RejectsBadEdges) {
    UndirectedWeightedGraph g(3);
    EXPECT_THROW(g.add_edge(1, 1, 0), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 3, 0), std::out_of_range);
}

TEST(Blossom, AgreesWithBruteForceOnRandomGraphs) {
    int discrepancies = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int n = 2 * static_cast<int>(1 + seed % 6);  // 2..12
        const double density = 0.25 + 0.1 * static_cast<double>(seed % 7);
        const auto g = fixtures::random_graph(n, density, 50, seed, seed % 5 != 0);
        const auto oracle = brute_perfect_matching(g);
        if (!oracle) {
            EXPECT_THROW(max_weight_perfect_matching(g), NoPerfectMatching) << "seed " << seed;
            continue;
        }
        const auto m = max_weight_perfect_matching(g);
        expect_valid_matching(g, m);
        EXPECT_TRUE(m.is_perfect());
        if (m.weight != oracle->value) ++discrepancies;
        EXPECT_EQ(m.weight, oracle->value) << "seed " << seed << " n " << n;
    }
    EXPECT_EQ(discrepancies, 0);
}

TEST(Blossom, DenseZeroWeightGraphsStillPerfect) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto g = fixtures::random_graph(12, 0.3, 0, seed, true);
        EXPECT_TRUE(max_weight_perfect_matching(g).is_perfect());
    }
}

TEST(Assignment, SmallCases) {
    EXPECT_EQ(max_weight_assignment({0, 4, 2, 0}, 2, true), (std::vector<int>{1, 0}));
    // 3x3 derangements are the two 3-cycles.
    const std::vector<Weight> w{0, 5, 0, 0, 0, 5, 5, 0, 0};
    EXPECT_EQ(max_weight_assignment(w, 3, true), (std::vector<int>{1, 2, 0}));
    EXPECT_THROW(max_weight_assignment({0}, 1, true), InfeasibleAssignment);
}

TEST(Assignment, AgreesWithPermutationScan) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const int n = 2 + static_cast<int>(seed % 6);  // 2..7
        const auto inst = random_instance(n, 100, seed + 1000);
        const auto& w = inst.weights();
        for (bool derange : {true, false}) {
            const auto p = max_weight_assignment(w, n, derange);
            Weight s = 0;
            std::vector<char> used(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i) {
                const int j = p[static_cast<std::size_t>(i)];
                ASSERT_FALSE(used[static_cast<std::size_t>(j)]);
                used[static_cast<std::size_t>(j)] = 1;
                if (derange) {
                    EXPECT_NE(i, j);
                }
                s += w[static_cast<std::size_t>(i * n + j)];
            }
            EXPECT_EQ(s, permutation_scan(w, n, derange)) << "seed " << seed;
        }
    }
}
