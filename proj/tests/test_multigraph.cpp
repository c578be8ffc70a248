#include <gtest/gtest.h>

#include "maxatsp/gadget.hpp"
#include "maxatsp/multigraph.hpp"
#include "maxatsp/oracle.hpp"
#include "support/fixtures.hpp"

using namespace maxatsp;

namespace {

CycleCover hamiltonian(int n) {
    std::vector<int> cyc(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = i;
    return CycleCover::from_cycles(n, {cyc});
}

// Plain odometer over every assignment, judged by the verifier alone.
bool naive_colorable(const LayeredMultigraph& g, int colors) {
    ColorAssignment a(g.size());
    for (auto& c : a.color) c = 1;
    while (true) {
        if (verify_coloring(g, a, colors).ok()) return true;
        int i = 0;
        while (i < a.size() && a[i] == colors) a[i++] = 1;
        if (i == a.size()) return false;
        ++a[i];
    }
}

}  // namespace

TEST(BuildG1, HamiltonianCoverTwiceGivesTripleEdges) {
    const auto h = hamiltonian(5);
    const auto g = build_g1(h, RelaxedCover::from_cycle_cover(h));
    EXPECT_EQ(g.size(), 15);
    for (int u = 0; u < 5; ++u) EXPECT_EQ(g.multiplicity(u, (u + 1) % 5), 3);
}

TEST(BuildG1, DisjointEdgeSets) {
    const auto cmax = CycleCover::from_cycles(4, {{0, 1}, {2, 3}});
    const auto c1 = RelaxedCover::from_cycle_cover(CycleCover::from_cycles(4, {{0, 2, 1, 3}}));
    const auto g = build_g1(cmax, c1);
    EXPECT_EQ(g.multiplicity(0, 1), 1);
    EXPECT_EQ(g.multiplicity(0, 2), 2);
    EXPECT_EQ(g.multiplicity(2, 1), 2);
    EXPECT_EQ(g.size(), 12);
}

TEST(BuildG1, LoneHalvesContributeOneFullWeightCopy) {
    const auto cmax = CycleCover::from_cycles(4, {{0, 1}, {2, 3}});
    const RelaxedCover c({2, 0, 3, 1}, {1, 0, 3, 2});
    const auto g = build_g1(cmax, c);
    EXPECT_EQ(g.multiplicity(1, 0), 3);
    EXPECT_EQ(g.multiplicity(0, 1), 2);
    int halves = 0;
    for (const auto& e : g.copies()) halves += e.half ? 1 : 0;
    EXPECT_EQ(halves, 4);
    const auto inst = random_instance(4, 50, 3);
    EXPECT_EQ(HalfWeight::whole(g.total_weight(inst)),
              HalfWeight::whole(cycle_weight(inst, {0, 1}) + cycle_weight(inst, {2, 3})) + c.weight(inst) +
                  c.weight(inst));
}

TEST(BuildG1, Fig1Multiplicities) {
    using namespace fixtures;
    // C_max = triangle abc plus a 6-cycle; the relaxed cover of the figure.
    const auto cmax = CycleCover::from_cycles(9, {{A, B, C}, {D, E, F, G, H, I}});
    const auto c = fig1_tilde();
    const auto g = build_g1(cmax, c);
    EXPECT_EQ(g.multiplicity(A, B), 2);
    EXPECT_EQ(g.multiplicity(B, C), 2);
    EXPECT_EQ(g.multiplicity(C, A), 1);
    EXPECT_EQ(g.multiplicity(A, C), 2);
    EXPECT_EQ(g.multiplicity(E, F), 3);
    EXPECT_EQ(g.multiplicity(C, I), 2);
}

TEST(BuildG2, TwoCopiesOfEachCover) {
    const auto cmax = CycleCover::from_cycles(4, {{0, 1}, {2, 3}});
    const auto c1 = RelaxedCover::from_cycle_cover(CycleCover::from_cycles(4, {{0, 2, 1, 3}}));
    const auto c2 = RelaxedCover::from_cycle_cover(cmax);
    const auto g = build_g2(cmax, c1, c2);
    EXPECT_EQ(g.size(), 24);
    EXPECT_EQ(g.multiplicity(0, 1), 4);
    EXPECT_EQ(g.multiplicity(0, 2), 2);
}

TEST(VerifyColoring, EmptyGraphPasses) {
    EXPECT_TRUE(verify_coloring(LayeredMultigraph(3), ColorAssignment(0), 4).ok());
}

TEST(VerifyColoring, DetectsDegreeAndCycles) {
    LayeredMultigraph g(3);
    g.add({0, 2, Layer::CMax, 0, false});
    g.add({1, 2, Layer::CMax, 0, false});
    ColorAssignment a(2);
    a[0] = 1;
    a[1] = 1;
    const auto r = verify_coloring(g, a, 4);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.degree_violations, 1);
    EXPECT_FALSE(r.witnesses.empty());

    const auto h = hamiltonian(3);
    const auto tri = build_g1(h, RelaxedCover::from_cycle_cover(CycleCover::from_cycles(3, {{0, 2, 1}})));
    ColorAssignment b(tri.size());
    for (auto& c : b.color) c = 1;
    b[3] = b[4] = b[5] = b[6] = b[7] = b[8] = 0;
    const auto rb = verify_coloring(tri, b, 4);
    EXPECT_EQ(rb.monochromatic_cycles, 1);
    EXPECT_EQ(rb.uncolored, 6);
    EXPECT_FALSE(rb.ok());
    EXPECT_FALSE(rb.good());
}

TEST(VerifyColoring, DuplicateCopiesCaught) {
    LayeredMultigraph g(2);
    g.add({0, 1, Layer::C1, 0, false});
    g.add({0, 1, Layer::C1, 1, false});
    ColorAssignment a(2);
    a[0] = a[1] = 2;
    EXPECT_GT(verify_coloring(g, a, 4).duplicate_copies, 0);
}

TEST(ExhaustiveColor, HamiltonianTripleCopyFourVertices) {
    const auto h = hamiltonian(4);
    const auto g = build_g1(h, RelaxedCover::from_cycle_cover(h));
    const auto r = exhaustive_color(g, 4);
    ASSERT_TRUE(r.coloring.has_value());
    EXPECT_TRUE(verify_coloring(g, *r.coloring, 4).ok());
}

TEST(ExhaustiveColor, HamiltonianTripleCopyThreeVerticesImpossible) {
    const auto h = hamiltonian(3);
    const auto g = build_g1(h, RelaxedCover::from_cycle_cover(h));
    const auto r = exhaustive_color(g, 4);
    EXPECT_FALSE(r.coloring.has_value());
    EXPECT_FALSE(r.budget_exhausted);
    EXPECT_FALSE(naive_colorable(g, 4));
}

TEST(ExhaustiveColor, BudgetIsReported) {
    const auto h = hamiltonian(3);
    const auto g = build_g1(h, RelaxedCover::from_cycle_cover(h));
    const auto r = exhaustive_color(g, 4, 3);
    EXPECT_FALSE(r.coloring.has_value());
    EXPECT_TRUE(r.budget_exhausted);
}

TEST(ExhaustiveColor, AgreesWithNaiveEnumeration) {
    // Small random multigraphs, few enough copies for a full odometer.
    std::mt19937_64 rng(5);
    int feasible = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 2);
        LayeredMultigraph g(n);
        const int m = 5 + static_cast<int>(rng() % 3);
        for (int i = 0; i < m; ++i) {
            const int u = static_cast<int>(rng() % static_cast<unsigned>(n));
            int v = static_cast<int>(rng() % static_cast<unsigned>(n - 1));
            if (v >= u) ++v;
            g.add({u, v, Layer::C1, i, false});
        }
        const int colors = 2 + static_cast<int>(rng() % 2);
        const auto r = exhaustive_color(g, colors);
        EXPECT_EQ(r.coloring.has_value(), naive_colorable(g, colors)) << trial;
        if (r.coloring) {
            ++feasible;
            EXPECT_TRUE(verify_coloring(g, *r.coloring, colors).ok());
        }
    }
    EXPECT_GT(feasible, 0);
    EXPECT_LT(feasible, 60);
}

TEST(CompleteColoring, KeepsFixedCopies) {
    const auto h = hamiltonian(5);
    const auto g = build_g1(h, RelaxedCover::from_cycle_cover(h));
    ColorAssignment partial(g.size());
    partial[0] = 4;
    const auto r = complete_coloring(g, partial, 4);
    ASSERT_TRUE(r.coloring.has_value());
    EXPECT_EQ((*r.coloring)[0], 4);
    EXPECT_TRUE(verify_coloring(g, *r.coloring, 4).ok());
}

TEST(ClassWeights, SumToTotal) {
    const auto inst = random_instance(6, 30, 9);
    const auto cmax = max_cycle_cover(inst);
    const auto g = build_g1(cmax, RelaxedCover::from_cycle_cover(CycleCover::from_cycles(6, {{0, 2, 4, 1, 3, 5}})));
    const auto r = exhaustive_color(g, 4);
    ASSERT_TRUE(r.coloring.has_value());
    const auto w = class_weights(inst, g, *r.coloring, 4);
    Weight sum = 0;
    for (Weight x : w) sum += x;
    EXPECT_EQ(sum, g.total_weight(inst));
}
