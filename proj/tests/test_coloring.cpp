#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "maxatsp/coloring.hpp"
#include "maxatsp/tour_assembly.hpp"
#include "support/planted.hpp"

using namespace maxatsp;

namespace {

struct Case {
    Instance inst;
    CycleCover cmax;
    RelaxedCover c1;
};

// Random instances whose C_max has a hard cycle, with the filtered first cover.
std::vector<Case> hard_cases(int count, bool keep_problematic) {
    std::vector<Case> out;
    for (std::uint64_t seed = 0; static_cast<int>(out.size()) < count; ++seed) {
        const int n = 4 + static_cast<int>(seed % 6);
        auto inst = random_instance(n, seed % 2 ? 100 : 5, seed);
        auto cmax = max_cycle_cover(inst);
        if (!has_hard_cycle(inst, cmax)) continue;
        auto c1 = first_relaxed_cover(inst, cmax);
        if (!keep_problematic && !find_problematic_cycles(c1, cmax).empty()) continue;
        out.push_back({std::move(inst), std::move(cmax), std::move(c1)});
    }
    return out;
}

// Components of the whole edges of a cover, by plain union-find.
std::vector<int> component_labels(const RelaxedCover& c) {
    const int n = c.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    };
    for (int u = 0; u < n; ++u) {
        if (c.has_full(u, c.out(u))) parent[static_cast<std::size_t>(find(u))] = find(c.out(u));
    }
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) label[static_cast<std::size_t>(v)] = find(v);
    return label;
}

// Whether the external edges of color k, contracted to cover components, close a cycle.
bool contracted_cycle(const Case& k, const EdgeClassification& cls, const ColoringContext& ctx,
                      const ColorAssignment& a, int color) {
    const auto label = component_labels(k.c1);
    const int n = k.inst.size();
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    for (int x : cls.externals()) {
        if (ctx.ext_color(a, x) != color) continue;
        adj[static_cast<std::size_t>(label[static_cast<std::size_t>(x)])].insert(
            label[static_cast<std::size_t>(k.cmax.succ(x))]);
    }
    std::vector<int> state(static_cast<std::size_t>(n), 0);
    std::function<bool(int)> dfs = [&](int v) {
        state[static_cast<std::size_t>(v)] = 1;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (state[static_cast<std::size_t>(w)] == 1) return true;
            if (state[static_cast<std::size_t>(w)] == 0 && dfs(w)) return true;
        }
        state[static_cast<std::size_t>(v)] = 2;
        return false;
    };
    for (int v = 0; v < n; ++v) {
        if (state[static_cast<std::size_t>(v)] == 0 && dfs(v)) return true;
    }
    return false;
}

}  // namespace

TEST(Classify, HamiltonianCoverMakesEverythingInternal) {
    const auto cmax = CycleCover::from_cycles(4, {{0, 1}, {2, 3}});
    const auto c1 = RelaxedCover::from_cycle_cover(CycleCover::from_cycles(4, {{0, 1, 2, 3}}));
    const auto cls = classify_edges(cmax, c1);
    EXPECT_EQ(cls.component_count(), 1);
    for (int u = 0; u < 4; ++u) EXPECT_EQ(cls.role(u), EdgeRole::Internal) << u;
    EXPECT_TRUE(cls.externals().empty());
}

TEST(Classify, BridgingEdgesAreExternal) {
    const auto cmax = CycleCover::from_cycles(4, {{0, 1}, {2, 3}});
    const auto c1 = RelaxedCover::from_cycle_cover(CycleCover::from_cycles(4, {{0, 2}, {1, 3}}));
    const auto cls = classify_edges(cmax, c1);
    EXPECT_EQ(cls.component_count(), 2);
    EXPECT_EQ(cls.externals(), (std::vector<int>{0, 1, 2, 3}));
    // Cover edge (0,2): C_max edges out of 0 and into 2 touch it.
    EXPECT_EQ(cls.coincident(0), (std::vector<int>{0, 3}));
}

TEST(Classify, LoneHalfMakesBothDirectionsHalfy) {
    const auto cmax = CycleCover::from_cycles(4, {{0, 1}, {2, 3}});
    const RelaxedCover c({2, 0, 3, 1}, {1, 0, 3, 2});
    const auto cls = classify_edges(cmax, c);
    for (int u = 0; u < 4; ++u) EXPECT_EQ(cls.role(u), EdgeRole::Halfy) << u;
}

TEST(Classify, Antennas) {
    // (0,1) has only its tail half, entered at 1 from 2, which leaves C_max;
    // (2,3) has only its head half, and 2's tail half lands on 4, entered
    // from 3 rather than its C_max predecessor 5.
    const auto cmax = CycleCover::from_cycles(6, {{0, 1}, {2, 3}, {4, 5}});
    const RelaxedCover c({1, 0, 4, 5, 3, 2}, {1, 2, 5, 2, 3, 0});
    const auto cls = classify_edges(cmax, c);
    ASSERT_EQ(cls.antennas().size(), 2U);
    EXPECT_EQ(cls.antennas()[0].u, 0);
    EXPECT_EQ(cls.antennas()[0].edges, std::vector<int>{2});
    EXPECT_EQ(cls.antennas()[1].u, 2);
    EXPECT_EQ(cls.antennas()[1].edges, std::vector<int>{5});
}

TEST(Classify, QuasiexternalBetweenTwoExternals) {
    // C_max 6-cycle 0..5. With cover cycles {1,2,5} and {0,4,3} the edges
    // (1,2) and (3,4) stay inside while both their neighbours leave.
    const auto cmax = CycleCover::from_cycles(6, {{0, 1, 2, 3, 4, 5}});
    const auto c1 = RelaxedCover::from_cycle_cover(CycleCover::from_cycles(6, {{1, 2, 5}, {0, 4, 3}}));
    const auto cls = classify_edges(cmax, c1);
    EXPECT_TRUE(cls.external(0));
    EXPECT_EQ(cls.role(1), EdgeRole::Internal);
    EXPECT_TRUE(cls.external(2));
    EXPECT_TRUE(cls.quasiexternal(1));
    EXPECT_TRUE(cls.quasiexternal(3));

    // With {1,2,3} and {0,4,5} every internal edge has an internal neighbour.
    const auto c2 = RelaxedCover::from_cycle_cover(CycleCover::from_cycles(6, {{1, 2, 3}, {0, 4, 5}}));
    const auto cls2 = classify_edges(cmax, c2);
    for (int u = 0; u < 6; ++u) EXPECT_FALSE(cls2.quasiexternal(u)) << u;
}

TEST(Marking, WingedClauseRecomputedIndependently) {
    for (const auto& k : hard_cases(120, true)) {
        const auto cls = classify_edges(k.cmax, k.c1);
        const auto mk = mark_edges(cls);
        const auto label = component_labels(k.c1);
        auto ext = [&](int u) {
            return k.c1.half_count(u, k.cmax.succ(u)) != 1 &&
                   !(k.c1.half_count(k.cmax.succ(u), u) == 1 && k.cmax.succ(k.cmax.succ(u)) == u) &&
                   label[static_cast<std::size_t>(u)] != label[static_cast<std::size_t>(k.cmax.succ(u))];
        };
        // Per component: whole edges and how many have every touching external marked.
        std::map<int, std::pair<int, int>> tally;
        for (int a = 0; a < k.inst.size(); ++a) {
            const int b = k.c1.out(a);
            if (!k.c1.has_full(a, b)) continue;
            const int in_b = k.cmax.pred(b);
            const bool w = (!ext(a) || mk.marks[a]) && (!ext(in_b) || mk.marks[in_b]);
            auto& t = tally[label[static_cast<std::size_t>(a)]];
            ++t.first;
            t.second += w ? 1 : 0;
        }
        bool expect_ok = true;
        for (const auto& [c, t] : tally) expect_ok = expect_ok && t.second >= t.first - 1;
        if (mk.nice.ok()) { EXPECT_TRUE(expect_ok); }
        for (int u = 0; u < k.inst.size(); ++u) {
            EXPECT_EQ(cls.external(u), ext(u));
            if (mk.marks[u]) { EXPECT_TRUE(ext(u)) << "only external edges are marked"; }
        }
    }
}

TEST(Marking, NiceWheneverAnySubsetIsNice) {
    int checked = 0;
    for (const auto& k : hard_cases(200, true)) {
        const auto cls = classify_edges(k.cmax, k.c1);
        const auto xs = cls.externals();
        if (xs.size() > 12) continue;
        bool exists = false;
        for (std::uint32_t mask = 0; mask < (1U << xs.size()) && !exists; ++mask) {
            MarkSet m;
            m.marked.assign(static_cast<std::size_t>(k.inst.size()), 0);
            for (std::size_t i = 0; i < xs.size(); ++i) m.marked[static_cast<std::size_t>(xs[i])] = (mask >> i) & 1U;
            exists = check_nice(cls, m).ok();
        }
        const auto mk = mark_edges(cls);
        EXPECT_EQ(mk.nice.ok(), exists);
        ++checked;
    }
    EXPECT_GT(checked, 150);
}

TEST(Marking, SingleCycleIsVacuouslyNice) {
    const auto cmax = CycleCover::from_cycles(4, {{0, 1}, {2, 3}});
    const auto c1 = RelaxedCover::from_cycle_cover(CycleCover::from_cycles(4, {{0, 1, 2, 3}}));
    const auto cls = classify_edges(cmax, c1);
    const auto mk = mark_edges(cls);
    EXPECT_TRUE(mk.nice.ok());
    EXPECT_FALSE(mk.exhaustive);
}

TEST(Marking, TwoCyclesWithFourBridges) {
    const auto cmax = CycleCover::from_cycles(4, {{0, 1}, {2, 3}});
    const auto c1 = RelaxedCover::from_cycle_cover(CycleCover::from_cycles(4, {{0, 2}, {1, 3}}));
    const auto cls = classify_edges(cmax, c1);
    const auto mk = mark_edges(cls);
    EXPECT_TRUE(mk.nice.ok());
    // Every 2-cycle needs a winged edge, so at least one edge of each
    // coincident pair stays marked.
    int marked = 0;
    for (int x : cls.externals()) marked += mk.marks[x] ? 1 : 0;
    EXPECT_GE(marked, 2);
}

TEST(Phase1, MarkedExternalsGetThreeColorsWithoutContractedCycles) {
    int runs = 0;
    for (const auto& k : hard_cases(150, false)) {
        const auto g = build_g1(k.cmax, k.c1);
        const auto cls = classify_edges(k.cmax, k.c1);
        const auto mk = mark_edges(cls);
        ColoringContext ctx(cls, mk.marks, g, {});
        ColorAssignment a(g.size());
        phase1(ctx, a);
        for (int x : cls.externals()) {
            const int c = ctx.ext_color(a, x);
            if (mk.marks[x]) {
                EXPECT_GE(c, 1);
                EXPECT_LE(c, 4);
            } else {
                EXPECT_EQ(c, 0) << "unmarked edges wait for phase 3";
            }
        }
        for (int color = 1; color <= 3; ++color) EXPECT_FALSE(contracted_cycle(k, cls, ctx, a, color));
        const auto rep = verify_coloring(g, a, 4);
        EXPECT_EQ(rep.degree_violations, 0);
        EXPECT_EQ(rep.monochromatic_cycles, 0);
        ++runs;
    }
    EXPECT_EQ(runs, 150);
}

TEST(Phase2, NoBlockedComponentLeftSilently) {
    for (const auto& k : hard_cases(150, false)) {
        const auto g = build_g1(k.cmax, k.c1);
        const auto cls = classify_edges(k.cmax, k.c1);
        const auto mk = mark_edges(cls);
        ColoringContext ctx(cls, mk.marks, g, {});
        ColorAssignment a(g.size());
        phase1(ctx, a);
        phase2(ctx, a);
        if (!detail::blocked_components(ctx, a).empty()) { EXPECT_FALSE(ctx.anomalies.empty()); }
        const auto rep = verify_coloring(g, a, 4);
        EXPECT_TRUE(rep.good());
    }
}

TEST(ColorG1, EveryReturnedColoringVerifies) {
    int ok = 0;
    for (const auto& k : hard_cases(250, false)) {
        const auto out = color_g1(k.cmax, k.c1);
        if (!out.ok()) {
            EXPECT_EQ(out.route, ColoringRoute::Failed);
            continue;
        }
        ++ok;
        EXPECT_NE(out.route, ColoringRoute::Failed);
        const auto rep = verify_coloring(out.graph, out.colors, 4);
        EXPECT_TRUE(rep.ok());
        EXPECT_EQ(rep.monochromatic_cycles, 0);
        const auto w = class_weights(k.inst, out.graph, out.colors, 4);
        const Weight top = *std::max_element(w.begin() + 1, w.end());
        EXPECT_GE(4 * top, out.graph.total_weight(k.inst));
        EXPECT_EQ(out.graph.total_weight(k.inst),
                  k.cmax.weight(k.inst) + k.c1.weight(k.inst).doubled);  // 2·w(C1) in whole units
    }
    EXPECT_GE(ok, 245);
}

TEST(ColorG1, FailsOnlyWhenSearchFindsNothing) {
    int compared = 0;
    for (const auto& k : hard_cases(200, false)) {
        if (k.inst.size() > 6) continue;
        const auto out = color_g1(k.cmax, k.c1);
        const auto r = exhaustive_color(build_g1(k.cmax, k.c1), 4);
        ASSERT_FALSE(r.budget_exhausted);
        EXPECT_EQ(out.ok(), r.coloring.has_value());
        if (!out.ok()) { EXPECT_TRUE(out.proven_uncolorable); }
        ++compared;
    }
    EXPECT_GT(compared, 60);
}

TEST(ColorG1, SnapshotsAndDot) {
    const auto k = hard_cases(1, false).front();
    ColoringOptions opt;
    opt.snapshots = true;
    const auto out = color_g1(k.cmax, k.c1, opt);
    ASSERT_EQ(out.snapshots.size(), 3U);
    const auto dot = coloring_to_dot(out.graph, out.colors, "g1");
    EXPECT_EQ(dot.rfind("digraph g1 {", 0), 0U);
    EXPECT_EQ(static_cast<int>(std::count(dot.begin(), dot.end(), '>')), out.graph.size());
}

TEST(ColorG2, PlantedProblematicShapes) {
    int colored = 0, failed = 0;
    for (int s = 0; s < 4; ++s) {
        const auto shape = static_cast<planted::Shape>(s);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const int n = 4 + static_cast<int>(seed % 6);
            const auto inst = planted::make(shape, n, seed);
            const auto cmax = max_cycle_cover(inst);
            if (!has_hard_cycle(inst, cmax)) continue;
            const auto c1 = first_relaxed_cover(inst, cmax);
            if (find_problematic_cycles(c1, cmax).empty()) continue;
            const auto c2 = second_relaxed_cover(inst, cmax, c1);
            const auto out = color_g2(cmax, c1, c2);
            if (!out.ok()) {
                ++failed;
                continue;
            }
            ++colored;
            const auto rep = verify_coloring(out.graph, out.colors, out.palette);
            EXPECT_TRUE(rep.ok()) << planted::to_string(shape) << " " << seed;
            const auto w = class_weights(inst, out.graph, out.colors, out.palette);
            const Weight top = *std::max_element(w.begin() + 1, w.end());
            EXPECT_GE(out.palette * top, out.graph.total_weight(inst));
        }
    }
    EXPECT_GT(colored, 2 * failed);
}

TEST(ColorG2, UncolorableCounterexample) {
    const auto inst = random_instance(9, 100, 11);
    const auto cmax = max_cycle_cover(inst);
    const auto c1 = first_relaxed_cover(inst, cmax);
    const auto c2 = second_relaxed_cover(inst, cmax, c1);
    ASSERT_TRUE(verify_relaxed_constraints(inst, c2, cmax, &c1).ok());
    const auto g = build_g2(cmax, c1, c2);
    int inside = 0;
    for (const auto& e : g.copies()) {
        const bool a = e.from == 0 || e.from == 2 || e.from == 3;
        const bool b = e.to == 0 || e.to == 2 || e.to == 3;
        inside += a && b ? 1 : 0;
    }
    EXPECT_EQ(inside, 16);
    const auto r = exhaustive_color(g, 8);
    EXPECT_FALSE(r.coloring.has_value());
    EXPECT_FALSE(r.budget_exhausted);
    const auto out = color_g2(cmax, c1, c2);
    EXPECT_TRUE(out.ok());
    EXPECT_EQ(out.route, ColoringRoute::SecondCover);
}
