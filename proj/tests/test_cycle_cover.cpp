#include <gtest/gtest.h>

#include "maxatsp/cycle_cover.hpp"
#include "maxatsp/oracle.hpp"
#include "maxatsp/relaxed_cover.hpp"
#include "support/fixtures.hpp"

using namespace maxatsp;
using fixtures::A;
using fixtures::B;
using fixtures::C;

TEST(CycleCover, RejectsNonDerangements) {
    EXPECT_THROW(CycleCover({0, 1}), std::invalid_argument);
    EXPECT_THROW(CycleCover({1, 1, 0}), std::invalid_argument);
    EXPECT_THROW(CycleCover({1, 3}), std::invalid_argument);
    EXPECT_THROW(CycleCover::from_cycles(3, {{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST(CycleCover, CanonicalCycles) {
    const auto c = CycleCover::from_cycles(5, {{3, 4}, {2, 0, 1}});
    EXPECT_EQ(c.cycles(), (std::vector<std::vector<int>>{{0, 1, 2}, {3, 4}}));
    EXPECT_EQ(c.cycle_ids(), (std::vector<int>{0, 0, 0, 1, 1}));
    EXPECT_EQ(c.pred(0), 2);
}

TEST(MaxCycleCover, TwoVertices) {
    const auto c = max_cycle_cover(load_instance("2\n0 5\n3 0"));
    EXPECT_EQ(c.successors(), (std::vector<int>{1, 0}));
}

TEST(MaxCycleCover, Fig1WeighsThree) {
    const auto inst = fixtures::fig1();
    const auto c = max_cycle_cover(inst);
    EXPECT_EQ(c.weight(inst), 3);
}

TEST(MaxCycleCover, Fig1TriangleSubInstance) {
    const auto sub = Instance::from_rows({{0, 1, 1}, {0, 0, 1}, {1, 0, 0}});
    EXPECT_EQ(brute_cycle_cover(sub).value, 3);
    EXPECT_EQ(max_cycle_cover(sub).weight(sub), 3);
}

TEST(MaxCycleCover, AgreesWithDerangementScan) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int n = 2 + static_cast<int>(seed % 7);  // 2..8
        const auto inst = random_instance(n, 100, seed);
        EXPECT_EQ(max_cycle_cover(inst).weight(inst), brute_cycle_cover(inst).value) << seed;
    }
}

TEST(MaxCycleCover, UpperBoundsOptimum) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const int n = 2 + static_cast<int>(seed % 11);  // 2..12
        const auto inst = random_instance(n, 100, seed + 500);
        EXPECT_GE(max_cycle_cover(inst).weight(inst), held_karp_max(inst).value) << seed;
    }
}

TEST(IsHard, Examples) {
    const auto tri = Instance::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    EXPECT_TRUE(is_hard(tri, {A, B, C}));
    const auto two = load_instance("2\n0 10\n1 0");
    EXPECT_FALSE(is_hard(two, {0, 1}));
    const auto two_even = load_instance("2\n0 5\n5 0");
    EXPECT_TRUE(is_hard(two_even, {0, 1}));
    // A 4-cycle can never be hard: some edge is at most a quarter.
    EXPECT_FALSE(is_hard(fixtures::uniform(4, 1), {0, 1, 2, 3}));
}

TEST(IsHard, OnlyShortCyclesQualify) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = random_instance(9, 100, seed);
        for (const auto& cyc : max_cycle_cover(inst).cycles()) {
            if (is_hard(inst, cyc)) {
                EXPECT_LE(cyc.size(), 3u);
            }
        }
    }
}

TEST(DropLightest, PathsKeepThreeQuartersOfEachCycle) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = random_instance(4 + static_cast<int>(seed % 8), 100, seed);
        const auto c = max_cycle_cover(inst);
        const auto paths = drop_lightest_and_collect_paths(inst, c);
        const auto cycles = c.cycles();
        ASSERT_EQ(paths.size(), cycles.size());
        std::size_t covered = 0;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const auto& cyc = cycles[i];
            covered += paths[i].size();
            const Weight cw = cycle_weight(inst, cyc);
            const Weight pw = path_weight(inst, paths[i]);
            EXPECT_EQ(cw - pw, inst.weight(lightest_edge(inst, cyc).from, lightest_edge(inst, cyc).to));
            if (!is_hard(inst, cyc)) {
                EXPECT_GE(4 * pw, 3 * cw);
            }
        }
        EXPECT_EQ(covered, static_cast<std::size_t>(inst.size()));
    }
}

TEST(DropLightest, TieBreaksBySmallestArc) {
    const auto inst = fixtures::uniform(3, 1);
    EXPECT_EQ(lightest_edge(inst, {0, 1, 2}), (Arc{0, 1}));
    const auto paths = drop_lightest_and_collect_paths(inst, CycleCover::from_cycles(3, {{0, 1, 2}}));
    EXPECT_EQ(paths, (std::vector<VertexPath>{{1, 2, 0}}));
}

TEST(RelaxedCover, IntegralRoundTrip) {
    const auto c = CycleCover::from_cycles(5, {{0, 1, 2}, {3, 4}});
    const auto r = RelaxedCover::from_cycle_cover(c);
    EXPECT_TRUE(r.is_integral());
    EXPECT_EQ(r.to_cycle_cover(), c);
    EXPECT_EQ(r.cycles(), c.cycles());
    const auto inst = random_instance(5, 20, 3);
    EXPECT_EQ(r.weight(inst), HalfWeight::whole(c.weight(inst)));
}

TEST(RelaxedCover, PathsAndHalfWeights) {
    // 0 -> 1 full; the other four halves are unpaired.
    const RelaxedCover r({1, 2, 0}, {1, 0, 0});
    EXPECT_FALSE(r.is_integral());
    EXPECT_TRUE(r.has_full(0, 1));
    EXPECT_TRUE(r.has_tail(1, 2));
    EXPECT_FALSE(r.has_head(1, 2));
    const auto comps = r.components();
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].kind, ComponentKind::Path);
    EXPECT_EQ(comps[0].vertices, (std::vector<int>{0, 1}));
    EXPECT_EQ(comps[1].vertices, (std::vector<int>{2}));
    const auto inst = fixtures::uniform(3, 1);
    EXPECT_EQ(r.weight(inst), HalfWeight::whole(3));
    EXPECT_THROW(RelaxedCover({0, 2, 0}, {2, 0, 0}), std::invalid_argument);
}
