#pragma once

// Coloring G1 with four colors (and G2 with eight) so that each color class
// is a set of vertex-disjoint paths: edge classification, marking, the three
// coloring phases, and the exact-search fallbacks behind them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "maxatsp/cycle_cover.hpp"
#include "maxatsp/gadget.hpp"
#include "maxatsp/multigraph.hpp"
#include "maxatsp/relaxed_cover.hpp"

namespace maxatsp {

enum class EdgeRole { External, Internal, Halfy };

inline const char* to_string(EdgeRole r) {
    switch (r) {
        case EdgeRole::External: return "external";
        case EdgeRole::Internal: return "internal";
        case EdgeRole::Halfy: return "halfy";
    }
    return "?";
}

/// Antenna edges (by tail) of the C_max 2-cycle {u, v}.
struct AntennaGroup {
    int u = 0;
    int v = 0;
    std::vector<int> edges;
};

/// Roles of the C_max edges relative to the components of a relaxed cover.
/// A C_max edge is named by its tail u: the edge (u, succ u).
class EdgeClassification {
public:
    EdgeClassification() = default;

    EdgeClassification(const CycleCover& cmax, const RelaxedCover& cover)
        : cmax_(cmax), cover_(cover), components_(cover.components()), component_of_(cover.component_ids()) {
        const int n = cmax.size();
        role_.assign(static_cast<std::size_t>(n), EdgeRole::Internal);
        quasi_.assign(static_cast<std::size_t>(n), 0);
        std::vector<char> halfy(static_cast<std::size_t>(n), 0);
        for (int u = 0; u < n; ++u) {
            const int v = cmax.succ(u);
            if (cover.half_count(u, v) != 1) continue;
            halfy[static_cast<std::size_t>(u)] = 1;
            if (cmax.succ(v) == u) halfy[static_cast<std::size_t>(v)] = 1;
        }
        for (int u = 0; u < n; ++u) {
            if (halfy[static_cast<std::size_t>(u)]) {
                role_[static_cast<std::size_t>(u)] = EdgeRole::Halfy;
            } else if (component(u) != component(cmax.succ(u))) {
                role_[static_cast<std::size_t>(u)] = EdgeRole::External;
            }
        }
        for (int u = 0; u < n; ++u) {
            if (role(u) != EdgeRole::Internal) continue;
            quasi_[static_cast<std::size_t>(u)] =
                role(cmax.pred(u)) == EdgeRole::External && role(cmax.succ(u)) == EdgeRole::External;
        }
        find_antennas();
        comp_edges_.assign(components_.size(), {});
        for (int a = 0; a < n; ++a) {
            if (cover.has_full(a, cover.out(a))) comp_edges_[static_cast<std::size_t>(component(a))].push_back(a);
        }
    }

    [[nodiscard]] int size() const { return cmax_.size(); }
    [[nodiscard]] const CycleCover& cmax() const { return cmax_; }
    [[nodiscard]] const RelaxedCover& cover() const { return cover_; }
    [[nodiscard]] EdgeRole role(int u) const { return role_[static_cast<std::size_t>(u)]; }
    [[nodiscard]] bool external(int u) const { return role(u) == EdgeRole::External; }
    [[nodiscard]] bool quasiexternal(int u) const { return quasi_[static_cast<std::size_t>(u)] != 0; }
    [[nodiscard]] const std::vector<CoverComponent>& components() const { return components_; }
    [[nodiscard]] int component_count() const { return static_cast<int>(components_.size()); }
    [[nodiscard]] int component(int v) const { return component_of_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] bool is_cycle(int c) const {
        return components_[static_cast<std::size_t>(c)].kind == ComponentKind::Cycle;
    }
    [[nodiscard]] const std::vector<AntennaGroup>& antennas() const { return antennas_; }

    /// Whole cover edges of component c, by tail.
    [[nodiscard]] const std::vector<int>& edges_of(int c) const { return comp_edges_[static_cast<std::size_t>(c)]; }
    [[nodiscard]] int length(int c) const { return static_cast<int>(edges_of(c).size()); }

    /// External C_max edges sharing the tail or the head of the cover edge (a, out a).
    [[nodiscard]] std::vector<int> coincident(int a) const {
        std::vector<int> xs;
        if (external(a)) xs.push_back(a);
        const int in_b = cmax_.pred(cover_.out(a));
        if (external(in_b) && in_b != a) xs.push_back(in_b);
        return xs;
    }

    [[nodiscard]] std::vector<int> coincident_with(int c) const {
        std::set<int> xs;
        for (int a : edges_of(c)) {
            for (int x : coincident(a)) xs.insert(x);
        }
        return {xs.begin(), xs.end()};
    }

    /// True when the external edge x enters component c.
    [[nodiscard]] bool enters(int x, int c) const { return component(cmax_.succ(x)) == c; }

    [[nodiscard]] int other_side(int x, int c) const {
        return component(x) == c ? component(cmax_.succ(x)) : component(x);
    }

    /// External C_max edges, by tail.
    [[nodiscard]] std::vector<int> externals() const {
        std::vector<int> xs;
        for (int u = 0; u < size(); ++u) {
            if (external(u)) xs.push_back(u);
        }
        return xs;
    }

private:
    void find_antennas() {
        const int n = size();
        for (int u = 0; u < n; ++u) {
            const int v = cmax_.succ(u);
            if (cmax_.succ(v) != u || u > v) continue;
            AntennaGroup grp{u, v, {}};
            for (const auto& [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
                int antenna = -1;
                if (cover_.has_tail(x, y) && !cover_.has_head(x, y)) {
                    // The head half is missing: the alternating walk enters y
                    // along the cover's edge (z, y) and leaves z on C_max.
                    const int z = cover_.in(y);
                    if (z != x && cover_.out(z) != cmax_.succ(z)) antenna = z;
                } else if (cover_.has_head(x, y) && !cover_.has_tail(x, y)) {
                    const int z = cover_.out(x);
                    const int p = cmax_.pred(z);
                    if (z != y && cover_.in(z) != p) antenna = p;
                }
                if (antenna != -1 && std::find(grp.edges.begin(), grp.edges.end(), antenna) == grp.edges.end()) {
                    grp.edges.push_back(antenna);
                }
            }
            if (!grp.edges.empty()) antennas_.push_back(std::move(grp));
        }
    }

    CycleCover cmax_;
    RelaxedCover cover_;
    std::vector<CoverComponent> components_;
    std::vector<int> component_of_;
    std::vector<EdgeRole> role_;
    std::vector<char> quasi_;
    std::vector<AntennaGroup> antennas_;
    std::vector<std::vector<int>> comp_edges_;
};

inline EdgeClassification classify_edges(const CycleCover& cmax, const RelaxedCover& c1) {
    return EdgeClassification(cmax, c1);
}

// ---------------------------------------------------------------------------
// Marking

struct MarkSet {
    std::vector<char> marked;  // by C_max tail

    [[nodiscard]] bool operator[](int u) const { return marked[static_cast<std::size_t>(u)] != 0; }
};

/// A cover edge is winged when every external edge coincident with it is marked.
inline bool winged(const EdgeClassification& cls, const MarkSet& m, int a) {
    for (int x : cls.coincident(a)) {
        if (!m[x]) return false;
    }
    return true;
}

inline std::vector<int> tails_of(const EdgeClassification& cls, const MarkSet& m, int c) {
    const auto xs = cls.coincident_with(c);
    const bool all_marked = std::all_of(xs.begin(), xs.end(), [&](int x) { return m[x]; });
    std::vector<int> tails;
    for (int x : xs) {
        if (!m[x]) continue;
        bool tail = all_marked;
        for (int a : cls.edges_of(c)) {
            if (tail) break;
            const auto co = cls.coincident(a);
            tail = std::find(co.begin(), co.end(), x) != co.end() && !winged(cls, m, a);
        }
        if (tail) tails.push_back(x);
    }
    return tails;
}

inline std::vector<int> wings_of(const EdgeClassification& cls, const MarkSet& m, int c) {
    const auto tails = tails_of(cls, m, c);
    std::vector<int> wings;
    for (int x : cls.coincident_with(c)) {
        if (m[x] && std::find(tails.begin(), tails.end(), x) == tails.end()) wings.push_back(x);
    }
    return wings;
}

inline bool is_wing_of(const EdgeClassification& cls, const MarkSet& m, int x, int c) {
    const auto w = wings_of(cls, m, c);
    return std::find(w.begin(), w.end(), x) != w.end();
}

inline bool is_taily(const EdgeClassification& cls, const MarkSet& m, int c) {
    int marked = 0;
    for (int x : cls.coincident_with(c)) marked += m[x] ? 1 : 0;
    return cls.is_cycle(c) && marked == 2 * cls.length(c);
}

/// Taily, with an edge whose two tails are wings of two different cycles.
inline bool is_favourable(const EdgeClassification& cls, const MarkSet& m, int c) {
    if (!is_taily(cls, m, c)) return false;
    for (int a : cls.edges_of(c)) {
        const auto co = cls.coincident(a);
        if (co.size() != 2) continue;
        const int c1 = cls.other_side(co[0], c);
        const int c2 = cls.other_side(co[1], c);
        if (c1 != c2 && cls.is_cycle(c1) && cls.is_cycle(c2) && is_wing_of(cls, m, co[0], c1) &&
            is_wing_of(cls, m, co[1], c2)) {
            return true;
        }
    }
    return false;
}

struct NiceReport {
    std::vector<std::string> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

inline NiceReport check_nice(const EdgeClassification& cls, const MarkSet& m) {
    NiceReport r;
    std::vector<int> tail_count(static_cast<std::size_t>(cls.size()), 0);
    for (int c = 0; c < cls.component_count(); ++c) {
        int w = 0;
        for (int a : cls.edges_of(c)) w += winged(cls, m, a) ? 1 : 0;
        if (w < cls.length(c) - 1) {
            r.violations.push_back(std::string(cls.is_cycle(c) ? "cycle " : "path ") + std::to_string(c) +
                                   " has only " + std::to_string(w) + " winged edges");
        }
        if (!cls.is_cycle(c)) continue;
        const auto tails = tails_of(cls, m, c);
        for (int x : tails) ++tail_count[static_cast<std::size_t>(x)];
        if (cls.length(c) == 2 && tails.size() == 1) {
            bool shared = false;
            for (int x : wings_of(cls, m, c)) {
                const int other = cls.other_side(x, c);
                shared = shared || (cls.is_cycle(other) && is_wing_of(cls, m, x, other));
            }
            if (!shared) {
                r.violations.push_back("2-cycle " + std::to_string(c) + " has one tail and no shared wing");
            }
        }
    }
    for (int x = 0; x < cls.size(); ++x) {
        if (tail_count[static_cast<std::size_t>(x)] > 1) {
            r.violations.push_back("edge " + std::to_string(x) + "->" + std::to_string(cls.cmax().succ(x)) +
                                   " is a tail of two cycles");
        }
    }
    for (const auto& grp : cls.antennas()) {
        bool any_external = false;
        bool any_marked = false;
        for (int x : grp.edges) {
            any_external = any_external || cls.external(x);
            any_marked = any_marked || (cls.external(x) && m[x]);
        }
        if (any_external && !any_marked) {
            r.violations.push_back("no antenna of 2-cycle {" + std::to_string(grp.u) + "," + std::to_string(grp.v) +
                                   "} is marked");
        }
    }
    return r;
}

struct MarkResult {
    MarkSet marks;
    NiceReport nice;
    bool exhaustive = false;
};

inline constexpr int kMaxExhaustiveMarking = 20;

/// Greedy marking: start from every external edge marked, then for each cycle
/// (longest first) unmark one coincident external edge if both sides can
/// afford a non-winged edge. Falls back to a search over unmarked subsets.
inline MarkResult mark_edges(const EdgeClassification& cls) {
    const int n = cls.size();
    MarkResult r;
    r.marks.marked.assign(static_cast<std::size_t>(n), 0);
    const auto xs = cls.externals();
    for (int x : xs) r.marks.marked[static_cast<std::size_t>(x)] = 1;

    auto affordable = [&](int c) {
        int w = 0;
        for (int a : cls.edges_of(c)) w += winged(cls, r.marks, a) ? 1 : 0;
        return w >= cls.length(c) - 1;
    };
    auto last_antenna = [&](int x) {
        for (const auto& grp : cls.antennas()) {
            if (std::find(grp.edges.begin(), grp.edges.end(), x) == grp.edges.end()) continue;
            int marked = 0;
            for (int y : grp.edges) marked += cls.external(y) && r.marks[y] ? 1 : 0;
            if (marked <= 1) return true;
        }
        return false;
    };
    std::vector<int> order(static_cast<std::size_t>(cls.component_count()));
    for (int c = 0; c < cls.component_count(); ++c) order[static_cast<std::size_t>(c)] = c;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cls.length(a) > cls.length(b); });
    for (int c : order) {
        const auto co = cls.coincident_with(c);
        if (co.empty() || std::any_of(co.begin(), co.end(), [&](int x) { return !r.marks[x]; })) continue;
        for (int x : co) {
            if (last_antenna(x)) continue;
            r.marks.marked[static_cast<std::size_t>(x)] = 0;
            if (affordable(c) && affordable(cls.other_side(x, c))) break;
            r.marks.marked[static_cast<std::size_t>(x)] = 1;
        }
    }
    r.nice = check_nice(cls, r.marks);
    if (r.nice.ok() || static_cast<int>(xs.size()) > kMaxExhaustiveMarking) return r;

    // Subsets of unmarked external edges, fewest first.
    const int e = static_cast<int>(xs.size());
    for (int k = 0; k <= e; ++k) {
        std::vector<char> pick(static_cast<std::size_t>(e), 0);
        std::fill(pick.end() - k, pick.end(), 1);
        do {
            MarkSet t;
            t.marked.assign(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < e; ++i) t.marked[static_cast<std::size_t>(xs[static_cast<std::size_t>(i)])] = !pick[static_cast<std::size_t>(i)];
            auto nice = check_nice(cls, t);
            if (nice.ok()) {
                r.marks = std::move(t);
                r.nice = std::move(nice);
                r.exhaustive = true;
                return r;
            }
        } while (std::next_permutation(pick.begin(), pick.end()));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Coloring G1

/// Shared state of the three phases on one G1 multigraph.
struct ColoringContext {
    const EdgeClassification* cls = nullptr;
    const MarkSet* marks = nullptr;
    const LayeredMultigraph* graph = nullptr;
    std::vector<int> cmax_copy;                 // copy index of each C_max edge
    std::vector<std::vector<int>> local_copies;  // copies with both ends in a component
    std::vector<char> problematic;              // per component
    std::vector<std::string> anomalies;
    int blocked_repairs = 0;
    std::uint64_t local_budget = 200'000;

    ColoringContext(const EdgeClassification& c, const MarkSet& m, const LayeredMultigraph& g,
                    const std::vector<std::vector<int>>& problematic_cycles)
        : cls(&c), marks(&m), graph(&g) {
        cmax_copy.assign(static_cast<std::size_t>(c.size()), -1);
        local_copies.assign(static_cast<std::size_t>(c.component_count()), {});
        problematic.assign(static_cast<std::size_t>(c.component_count()), 0);
        for (int i = 0; i < g.size(); ++i) {
            const auto& e = g[i];
            if (e.layer == Layer::CMax) cmax_copy[static_cast<std::size_t>(e.from)] = i;
            if (c.component(e.from) == c.component(e.to)) {
                local_copies[static_cast<std::size_t>(c.component(e.from))].push_back(i);
            }
        }
        for (const auto& cyc : problematic_cycles) problematic[static_cast<std::size_t>(c.component(cyc[0]))] = 1;
    }

    [[nodiscard]] int ext_color(const ColorAssignment& a, int x) const {
        return a[cmax_copy[static_cast<std::size_t>(x)]];
    }
    void set_ext(ColorAssignment& a, int x, int k) const { a[cmax_copy[static_cast<std::size_t>(x)]] = k; }

    /// Copies the phases must leave alone: the insides of problematic cycles.
    [[nodiscard]] std::vector<char> active_mask() const {
        std::vector<char> act(static_cast<std::size_t>(graph->size()), 1);
        for (std::size_t c = 0; c < local_copies.size(); ++c) {
            if (!problematic[c]) continue;
            for (int i : local_copies[c]) act[static_cast<std::size_t>(i)] = 0;
        }
        return act;
    }
};

/// Whether the components joined by external edges of color k, plus the
/// candidate edge `extra`, contain a cycle.
inline bool shrunk_has_cycle(const ColoringContext& ctx, const ColorAssignment& a, int k, int extra = -1) {
    const auto& cls = *ctx.cls;
    const int m = cls.component_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
    for (int x : cls.externals()) {
        if (x == extra || ctx.ext_color(a, x) == k) {
            adj[static_cast<std::size_t>(cls.component(x))].push_back(cls.component(cls.cmax().succ(x)));
        }
    }
    std::vector<int> state(static_cast<std::size_t>(m), 0);
    std::vector<std::pair<int, std::size_t>> stack;
    for (int s = 0; s < m; ++s) {
        if (state[static_cast<std::size_t>(s)]) continue;
        stack.push_back({s, 0});
        state[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < adj[static_cast<std::size_t>(v)].size()) {
                const int w = adj[static_cast<std::size_t>(v)][i++];
                if (state[static_cast<std::size_t>(w)] == 1) return true;
                if (state[static_cast<std::size_t>(w)] == 0) {
                    state[static_cast<std::size_t>(w)] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                state[static_cast<std::size_t>(v)] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

/// Every color in 1..3 keeps the shrunken graph acyclic.
inline bool externals_safe(const ColoringContext& ctx, const ColorAssignment& a) {
    for (int k = 1; k <= 3; ++k) {
        if (shrunk_has_cycle(ctx, a, k)) return false;
    }
    return true;
}

namespace detail {

inline int pick_color(const ColoringContext& ctx, const ColorAssignment& a, int x, std::vector<int> prefs) {
    for (int k : prefs) {
        if (!shrunk_has_cycle(ctx, a, k, x)) return k;
    }
    return 0;
}

inline int colored_count(const ColoringContext& ctx, const ColorAssignment& a, const std::vector<int>& xs, int k) {
    int cnt = 0;
    for (int x : xs) cnt += ctx.ext_color(a, x) == k ? 1 : 0;
    return cnt;
}

/// Colors the uncolored external edges of c: those entering get `in_color`,
/// those leaving get one of `out_colors` (the less used first).
inline void color_around(ColoringContext& ctx, ColorAssignment& a, int c, int in_color,
                         const std::vector<int>& out_colors, bool marked_only, bool swap_dirs = false) {
    const auto& cls = *ctx.cls;
    const auto xs = cls.coincident_with(c);
    for (int x : xs) {
        if (ctx.ext_color(a, x) != 0 || (marked_only && !(*ctx.marks)[x])) continue;
        const bool in = cls.enters(x, c) != swap_dirs;
        std::vector<int> prefs;
        if (in) {
            prefs.push_back(in_color);
        } else {
            prefs = out_colors;
            std::stable_sort(prefs.begin(), prefs.end(), [&](int p, int q) {
                return colored_count(ctx, a, xs, p) < colored_count(ctx, a, xs, q);
            });
        }
        for (int k = 1; k <= 3; ++k) {
            if (std::find(prefs.begin(), prefs.end(), k) == prefs.end()) prefs.push_back(k);
        }
        const int k = pick_color(ctx, a, x, prefs);
        if (k == 0) {
            ctx.anomalies.push_back("phase 1: no safe color for edge " + std::to_string(x));
            continue;
        }
        ctx.set_ext(a, x, k);
    }
}

}  // namespace detail

/// Colors every marked external edge with a color of {1,2,3}.
inline void phase1(ColoringContext& ctx, ColorAssignment& a) {
    const auto& cls = *ctx.cls;
    const auto& m = *ctx.marks;
    const int comps = cls.component_count();
    auto has_uncolored = [&](int c, bool marked_only) {
        for (int x : cls.coincident_with(c)) {
            if (ctx.ext_color(a, x) == 0 && (!marked_only || m[x])) return true;
        }
        return false;
    };
    while (true) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int c = 0; c < comps; ++c) {
                if (!is_favourable(cls, m, c) || !has_uncolored(c, false)) continue;
                for (int e : cls.edges_of(c)) {
                    const auto co = cls.coincident(e);
                    if (co.size() != 2) continue;
                    const int k0 = ctx.ext_color(a, co[0]);
                    const int k1 = ctx.ext_color(a, co[1]);
                    if ((k0 == 0) == (k1 == 0)) continue;
                    const int done = k0 != 0 ? co[0] : co[1];
                    const int k = k0 != 0 ? k0 : k1;
                    if (k > 3) continue;
                    std::vector<int> rest;
                    for (int j = 1; j <= 3; ++j) {
                        if (j != k) rest.push_back(j);
                    }
                    detail::color_around(ctx, a, c, k, rest, false, !cls.enters(done, c));
                    progress = true;
                    break;
                }
            }
            for (int c = 0; c < comps; ++c) {
                if (!is_taily(cls, m, c) || is_favourable(cls, m, c) || !has_uncolored(c, false)) continue;
                int k = 0;
                for (int x : tails_of(cls, m, c)) {
                    const int kx = ctx.ext_color(a, x);
                    if (kx >= 1 && kx <= 3) k = kx;
                }
                if (k == 0) continue;
                const int k1 = k == 1 ? 2 : 1;
                const int k2 = 6 - k - k1;
                // Pick the orientation that leaves a tail of every color in {1,2,3}.
                ColorAssignment best = a;
                int best_colors = -1;
                for (const auto& [ki, ko] : {std::pair{k1, k2}, std::pair{k2, k1}}) {
                    ColorAssignment t = a;
                    detail::color_around(ctx, t, c, ki, {ko}, false);
                    std::set<int> seen;
                    for (int x : tails_of(cls, m, c)) seen.insert(ctx.ext_color(t, x));
                    const int have = static_cast<int>(seen.count(1) + seen.count(2) + seen.count(3));
                    if (have > best_colors) {
                        best_colors = have;
                        best = std::move(t);
                    }
                }
                a = std::move(best);
                progress = true;
            }
        }
        int next = -1;
        for (int c = 0; c < comps && next == -1; ++c) {
            if (has_uncolored(c, true)) next = c;
        }
        if (next == -1) break;
        detail::color_around(ctx, a, next, 1, {2, 3}, true);
        // Edges with no safe color in {1,2,3} fall back to 4.
        for (int x : cls.coincident_with(next)) {
            if (m[x] && ctx.ext_color(a, x) == 0) ctx.set_ext(a, x, 4);
        }
    }
}

namespace detail {

/// The partial coloring with every uncolored unmarked external edge at 4,
/// as far as the path property allows.
inline ColorAssignment with_provisional_fours(const ColoringContext& ctx, const ColorAssignment& a) {
    ColorAssignment t = a;
    ClassState st(ctx.graph->vertex_count(), 4);
    if (!st.load(*ctx.graph, t)) return t;
    for (int x : ctx.cls->externals()) {
        if ((*ctx.marks)[x] || ctx.ext_color(t, x) != 0) continue;
        const auto& e = (*ctx.graph)[ctx.cmax_copy[static_cast<std::size_t>(x)]];
        if (st.can_add(e.from, e.to, 4)) {
            st.add(e.from, e.to, 4);
            ctx.set_ext(t, x, 4);
        }
    }
    return t;
}

inline std::optional<ColorAssignment> complete_component(const ColoringContext& ctx, const ColorAssignment& a,
                                                         int c) {
    std::vector<char> act(static_cast<std::size_t>(ctx.graph->size()), 0);
    for (int i : ctx.local_copies[static_cast<std::size_t>(c)]) act[static_cast<std::size_t>(i)] = 1;
    auto r = complete_coloring(*ctx.graph, a, 4, ctx.local_budget, &act);
    return r.coloring;
}

}  // namespace detail

/// No coloring of the copies inside c completes the current partial coloring.
inline bool is_blocked(const ColoringContext& ctx, const ColorAssignment& a, int c) {
    return !detail::complete_component(ctx, detail::with_provisional_fours(ctx, a), c).has_value();
}

namespace detail {

inline std::vector<int> blocked_components(const ColoringContext& ctx, const ColorAssignment& a) {
    std::vector<int> out;
    for (int c = 0; c < ctx.cls->component_count(); ++c) {
        if (!ctx.problematic[static_cast<std::size_t>(c)] && is_blocked(ctx, a, c)) out.push_back(c);
    }
    return out;
}

/// Tries every recoloring of the given external edges over `palette`,
/// keeping colors 1..3 safe; accepts the first that unblocks all of
/// `watch` without blocking anything that was unblocked.
inline bool recolor_search(const ColoringContext& ctx, ColorAssignment& a, const std::vector<int>& edges,
                           const std::vector<int>& palette, const std::vector<int>& watch,
                           const std::vector<int>& before) {
    if (edges.empty() || edges.size() > 6) return false;
    std::vector<std::size_t> digit(edges.size(), 0);
    while (true) {
        ColorAssignment t = a;
        for (std::size_t i = 0; i < edges.size(); ++i) ctx.set_ext(t, edges[i], palette[digit[i]]);
        if (externals_safe(ctx, t)) {
            bool fine = std::none_of(watch.begin(), watch.end(), [&](int c) { return is_blocked(ctx, t, c); });
            if (fine) {
                const auto after = blocked_components(ctx, t);
                fine = std::all_of(after.begin(), after.end(), [&](int c) {
                    return std::find(before.begin(), before.end(), c) != before.end();
                });
            }
            if (fine) {
                a = std::move(t);
                return true;
            }
        }
        std::size_t i = 0;
        while (i < digit.size() && ++digit[i] == palette.size()) digit[i++] = 0;
        if (i == digit.size()) return false;
    }
}

}  // namespace detail

/// Recolors tails (and, for 2-cycles, wings) until no non-problematic
/// component is blocked.
inline void phase2(ColoringContext& ctx, ColorAssignment& a) {
    const auto& cls = *ctx.cls;
    const auto& m = *ctx.marks;
    const int limit = 4 * cls.component_count() + 4;
    for (int round = 0; round < limit; ++round) {
        const auto blocked = detail::blocked_components(ctx, a);
        if (blocked.empty()) return;
        const int c = blocked.front();
        bool fixed = false;
        const auto tails = tails_of(cls, m, c);
        if (!is_taily(cls, m, c)) {
            // Move a tail to a color of {1,2,3} absent around c.
            for (int t : tails) {
                for (int k = 1; k <= 3 && !fixed; ++k) {
                    bool absent = true;
                    for (int x : cls.coincident_with(c)) absent = absent && ctx.ext_color(a, x) != k;
                    if (!absent || shrunk_has_cycle(ctx, a, k, t)) continue;
                    ColorAssignment trial = a;
                    ctx.set_ext(trial, t, k);
                    if (is_blocked(ctx, trial, c)) continue;
                    const int other = cls.other_side(t, c);
                    if (!ctx.problematic[static_cast<std::size_t>(other)] && is_blocked(ctx, trial, other)) {
                        if (cls.length(other) == 2) {
                            auto edges = cls.coincident_with(other);
                            edges.erase(std::remove(edges.begin(), edges.end(), t), edges.end());
                            if (!detail::recolor_search(ctx, trial, edges, {1, 2, 3}, {c, other}, blocked)) continue;
                        }
                        // Otherwise the loop moves on to `other` next round.
                    }
                    a = std::move(trial);
                    fixed = true;
                }
                if (fixed) break;
            }
        } else {
            for (int t : tails) {
                ColorAssignment trial = a;
                ctx.set_ext(trial, t, 4);
                const int other = cls.other_side(t, c);
                if (!is_blocked(ctx, trial, c) &&
                    (ctx.problematic[static_cast<std::size_t>(other)] || !is_blocked(ctx, trial, other))) {
                    a = std::move(trial);
                    fixed = true;
                    break;
                }
            }
            if (!fixed && cls.length(c) == 2) {
                fixed = detail::recolor_search(ctx, a, tails, {1, 2, 3, 4}, {c}, blocked);
            }
        }
        if (!fixed) {
            std::vector<int> marked;
            for (int x : cls.coincident_with(c)) {
                if (m[x]) marked.push_back(x);
            }
            fixed = detail::recolor_search(ctx, a, marked, {1, 2, 3, 4}, {c}, blocked);
        }
        if (!fixed) {
            ctx.anomalies.push_back("phase 2: component " + std::to_string(c) + " stays blocked");
            return;
        }
        ++ctx.blocked_repairs;
    }
    ctx.anomalies.push_back("phase 2: repair limit reached");
}

/// Unmarked external edges get color 4; then each component's inside and
/// finally the remaining crossing copies are completed.
inline bool phase3(ColoringContext& ctx, ColorAssignment& a, std::uint64_t budget = kDefaultColoringBudget) {
    const auto& cls = *ctx.cls;
    a = detail::with_provisional_fours(ctx, a);
    for (int c = 0; c < cls.component_count(); ++c) {
        if (ctx.problematic[static_cast<std::size_t>(c)]) continue;
        if (auto done = detail::complete_component(ctx, a, c)) {
            a = std::move(*done);
        } else {
            ctx.anomalies.push_back("phase 3: component " + std::to_string(c) + " cannot be completed");
        }
    }
    const auto act = ctx.active_mask();
    auto r = complete_coloring(*ctx.graph, a, 4, budget, &act);
    if (!r.coloring) return false;
    a = std::move(*r.coloring);
    return true;
}

// ---------------------------------------------------------------------------
// Results and drivers

enum class ColoringRoute { Constructive, Completion, Exhaustive, Borrowed, SecondCover, Failed };

inline const char* to_string(ColoringRoute r) {
    switch (r) {
        case ColoringRoute::Constructive: return "constructive";
        case ColoringRoute::Completion: return "completion";
        case ColoringRoute::Exhaustive: return "exhaustive";
        case ColoringRoute::Borrowed: return "borrowed";
        case ColoringRoute::SecondCover: return "second-cover";
        case ColoringRoute::Failed: return "failed";
    }
    return "?";
}

struct ColoringOptions {
    bool leave_problematic = false;
    bool snapshots = false;
    std::uint64_t budget = kDefaultColoringBudget;
};

struct ColoringOutcome {
    LayeredMultigraph graph;
    ColorAssignment colors;
    int palette = 4;
    ColoringRoute route = ColoringRoute::Failed;
    ColoringReport report;
    MarkSet marks;
    NiceReport nice;
    bool exhaustive_marking = false;
    int blocked_repairs = 0;
    int left_uncolored = 0;  // inside problematic cycles, by design
    bool proven_uncolorable = false;  // exhaustive search completed without a coloring
    std::vector<std::string> anomalies;
    std::vector<std::string> snapshots;

    /// Good, and complete apart from copies deliberately left uncolored.
    [[nodiscard]] bool ok() const { return report.good() && report.uncolored == left_uncolored; }
};

inline std::string coloring_to_dot(const LayeredMultigraph& g, const ColorAssignment& a, const std::string& name) {
    static const std::array<const char*, 9> names = {"gray",   "red",  "blue",   "forestgreen", "orange",
                                                     "purple", "cyan", "brown", "magenta"};
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (int v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
    for (int i = 0; i < g.size(); ++i) {
        const auto& e = g[i];
        const int k = a[i];
        out << "  " << e.from << " -> " << e.to << " [label=\"" << to_string(e.layer) << "#" << e.copy << ":" << k
            << "\", color=" << names[static_cast<std::size_t>(k >= 0 && k <= 8 ? k : 0)]
            << (e.half ? ", style=dashed" : "") << (k == 0 ? ", style=dotted" : "") << "];\n";
    }
    out << "}\n";
    return out.str();
}

/// Four-colors G1 = C_max + 2 C1. Constructive phases first; when their
/// result fails verification, the external colors are kept and the rest is
/// searched; then an unconstrained search; otherwise the outcome is Failed.
inline ColoringOutcome color_g1(const CycleCover& cmax, const RelaxedCover& c1, const ColoringOptions& opt = {},
                                Layer layer = Layer::C1) {
    ColoringOutcome out;
    out.graph = build_g1(cmax, c1, layer);
    out.palette = 4;
    const auto cls = classify_edges(cmax, c1);
    auto mark = mark_edges(cls);
    out.marks = mark.marks;
    out.nice = mark.nice;
    out.exhaustive_marking = mark.exhaustive;
    const auto problematic =
        opt.leave_problematic ? find_problematic_cycles(c1, cmax) : std::vector<std::vector<int>>{};
    ColoringContext ctx(cls, out.marks, out.graph, problematic);
    const auto act = ctx.active_mask();
    out.left_uncolored = static_cast<int>(std::count(act.begin(), act.end(), 0));

    auto finish = [&](ColorAssignment a, ColoringRoute route) {
        out.colors = std::move(a);
        out.route = route;
        out.report = verify_coloring(out.graph, out.colors, 4);
        out.anomalies = ctx.anomalies;
        out.blocked_repairs = ctx.blocked_repairs;
        return out.ok();
    };

    ColorAssignment a(out.graph.size());
    phase1(ctx, a);
    if (opt.snapshots) out.snapshots.push_back(coloring_to_dot(out.graph, a, "phase1"));
    phase2(ctx, a);
    if (opt.snapshots) out.snapshots.push_back(coloring_to_dot(out.graph, a, "phase2"));
    const ColorAssignment externals = a;
    const bool built = phase3(ctx, a, opt.budget);
    if (opt.snapshots) out.snapshots.push_back(coloring_to_dot(out.graph, a, "phase3"));
    if (built && finish(a, ColoringRoute::Constructive)) return out;

    if (auto r = complete_coloring(out.graph, externals, 4, opt.budget, &act); r.coloring) {
        ctx.anomalies.push_back("constructive completion failed; interior searched");
        if (finish(*r.coloring, ColoringRoute::Completion)) return out;
    }
    if (auto r = complete_coloring(out.graph, ColorAssignment(out.graph.size()), 4, opt.budget, &act); r.coloring) {
        ctx.anomalies.push_back("external colors abandoned; full search");
        if (finish(*r.coloring, ColoringRoute::Exhaustive)) return out;
    } else if (r.budget_exhausted) {
        ctx.anomalies.push_back("search budget exhausted");
    } else {
        out.proven_uncolorable = true;
    }
    finish(a, ColoringRoute::Failed);
    return out;
}

/// Eight-colors G2 = 2 C_max + 2 C1 + 2 C2: G1 with {1..4} and G2' with
/// {5..8}, each leaving its problematic cycles uncolored, then the gaps are
/// filled by borrowing any of the eight colors. When that fails, C_max + 2 C2
/// alone is four-colored (same bound, since C2 also weighs at least OPT),
/// and only then is G2 searched exhaustively.
inline ColoringOutcome color_g2(const CycleCover& cmax, const RelaxedCover& c1, const RelaxedCover& c2,
                                const ColoringOptions& opt = {}) {
    ColoringOptions sub = opt;
    sub.leave_problematic = true;
    auto first = color_g1(cmax, c1, sub, Layer::C1);
    auto second = color_g1(cmax, c2, sub, Layer::C2);

    ColoringOutcome out;
    out.graph = build_g2(cmax, c1, c2);
    out.palette = 8;
    out.marks = first.marks;
    out.nice = first.nice;
    out.blocked_repairs = first.blocked_repairs + second.blocked_repairs;
    for (const auto& s : first.anomalies) out.anomalies.push_back("G1: " + s);
    for (const auto& s : second.anomalies) out.anomalies.push_back("G2': " + s);
    if (opt.snapshots) {
        out.snapshots = first.snapshots;
        out.snapshots.insert(out.snapshots.end(), second.snapshots.begin(), second.snapshots.end());
    }

    ColorAssignment merged(out.graph.size());
    auto transfer = [&](const ColoringOutcome& part, int cmax_copy, int offset) {
        if (!part.report.good()) return;
        for (int i = 0; i < part.graph.size(); ++i) {
            const auto& e = part.graph[i];
            if (part.colors[i] == 0) continue;
            const int j = out.graph.find(e.from, e.to, e.layer, e.layer == Layer::CMax ? cmax_copy : e.copy);
            if (j >= 0) merged[j] = part.colors[i] + offset;
        }
    };
    transfer(first, 0, 0);
    transfer(second, 1, 4);

    auto finish = [&](ColorAssignment a, ColoringRoute route) {
        out.colors = std::move(a);
        out.route = route;
        out.report = verify_coloring(out.graph, out.colors, 8);
        return out.ok();
    };
    if (auto r = complete_coloring(out.graph, merged, 8, opt.budget); r.coloring) {
        if (finish(*r.coloring, ColoringRoute::Borrowed)) return out;
    }
    out.anomalies.push_back("borrowing failed");
    ColoringOptions whole = opt;
    whole.leave_problematic = false;
    if (auto alt = color_g1(cmax, c2, whole, Layer::C2); alt.ok()) {
        alt.route = ColoringRoute::SecondCover;
        alt.anomalies.insert(alt.anomalies.begin(), out.anomalies.begin(), out.anomalies.end());
        return alt;
    }
    out.anomalies.push_back("C_max + 2 C2 not four-colorable");
    const auto r = exhaustive_color(out.graph, 8, opt.budget);
    if (r.coloring && finish(*r.coloring, ColoringRoute::Exhaustive)) return out;
    out.anomalies.push_back(r.budget_exhausted ? "G2 search budget exhausted" : "G2 has no good coloring");
    const bool g2_proven = !r.budget_exhausted;
    out.proven_uncolorable = g2_proven;
    finish(merged, ColoringRoute::Failed);
    return out;

}

}  // namespace maxatsp
