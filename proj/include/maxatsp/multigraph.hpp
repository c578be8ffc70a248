#pragma once

// Layered multigraphs G1 = C_max + 2 C1 and G2 = 2 C_max + 2 C1 + 2 C2, edge
// colorings of them, the coloring verifier and a budgeted exact colorer.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxatsp/cycle_cover.hpp"
#include "maxatsp/instance.hpp"
#include "maxatsp/relaxed_cover.hpp"

namespace maxatsp {

enum class Layer { CMax, C1, C2 };

inline const char* to_string(Layer l) {
    switch (l) {
        case Layer::CMax: return "cmax";
        case Layer::C1: return "c1";
        case Layer::C2: return "c2";
    }
    return "?";
}

/// One copy of the directed edge (from, to). `half` marks the single copy a
/// cover contributes when it holds only one half of the edge.
struct EdgeCopy {
    int from = 0;
    int to = 0;
    Layer layer = Layer::CMax;
    int copy = 0;
    bool half = false;
};

class LayeredMultigraph {
public:
    LayeredMultigraph() = default;
    explicit LayeredMultigraph(int n) : n_(n) {}

    [[nodiscard]] int vertex_count() const { return n_; }
    [[nodiscard]] int size() const { return static_cast<int>(copies_.size()); }
    [[nodiscard]] const std::vector<EdgeCopy>& copies() const { return copies_; }
    [[nodiscard]] const EdgeCopy& operator[](int i) const { return copies_[static_cast<std::size_t>(i)]; }

    int add(EdgeCopy e) {
        copies_.push_back(e);
        return size() - 1;
    }

    [[nodiscard]] int multiplicity(int u, int v) const {
        return static_cast<int>(std::count_if(copies_.begin(), copies_.end(),
                                              [&](const EdgeCopy& e) { return e.from == u && e.to == v; }));
    }

    /// Index of the given copy, or -1.
    [[nodiscard]] int find(int u, int v, Layer layer, int copy) const {
        for (int i = 0; i < size(); ++i) {
            const auto& e = copies_[static_cast<std::size_t>(i)];
            if (e.from == u && e.to == v && e.layer == layer && e.copy == copy) return i;
        }
        return -1;
    }

    /// Every copy carries the full weight of its edge: two copies of a lone
    /// half-edge at half weight collapse into one copy at full weight.
    [[nodiscard]] Weight total_weight(const Instance& inst) const {
        Weight w = 0;
        for (const auto& e : copies_) w += inst.weight(e.from, e.to);
        return w;
    }

private:
    int n_ = 0;
    std::vector<EdgeCopy> copies_;
};

namespace detail {

inline void add_cover_copies(LayeredMultigraph& g, const RelaxedCover& c, Layer layer, int copies) {
    const int n = c.size();
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            const int halves = c.half_count(u, v);
            if (halves == 0) continue;
            const int k = halves == 2 ? copies : copies / 2;
            for (int i = 0; i < k; ++i) g.add({u, v, layer, i, halves == 1});
        }
    }
}

inline void add_cmax_copies(LayeredMultigraph& g, const CycleCover& cmax, int copies) {
    for (int i = 0; i < copies; ++i) {
        for (int u = 0; u < cmax.size(); ++u) g.add({u, cmax.succ(u), Layer::CMax, i, false});
    }
}

}  // namespace detail

/// One copy of C_max and two of C1 (one copy for an edge C1 holds half of).
/// `layer` tags the cover's copies, so the same builder yields G2' from C2.
inline LayeredMultigraph build_g1(const CycleCover& cmax, const RelaxedCover& c1, Layer layer = Layer::C1) {
    LayeredMultigraph g(cmax.size());
    detail::add_cmax_copies(g, cmax, 1);
    detail::add_cover_copies(g, c1, layer, 2);
    return g;
}

/// Two copies each of C_max, C1 and C2.
inline LayeredMultigraph build_g2(const CycleCover& cmax, const RelaxedCover& c1, const RelaxedCover& c2) {
    LayeredMultigraph g(cmax.size());
    detail::add_cmax_copies(g, cmax, 2);
    detail::add_cover_copies(g, c1, Layer::C1, 2);
    detail::add_cover_copies(g, c2, Layer::C2, 2);
    return g;
}

/// Color per edge copy; 0 is uncolored.
struct ColorAssignment {
    std::vector<int> color;

    ColorAssignment() = default;
    explicit ColorAssignment(int copies) : color(static_cast<std::size_t>(copies), 0) {}

    [[nodiscard]] int size() const { return static_cast<int>(color.size()); }
    [[nodiscard]] int operator[](int i) const { return color[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return color[static_cast<std::size_t>(i)]; }
    [[nodiscard]] int uncolored() const {
        return static_cast<int>(std::count(color.begin(), color.end(), 0));
    }
    [[nodiscard]] bool complete() const { return uncolored() == 0; }
};

struct ColoringReport {
    int uncolored = 0;
    int degree_violations = 0;
    int monochromatic_cycles = 0;
    int duplicate_copies = 0;  // two copies of one edge sharing a color
    int out_of_palette = 0;
    std::vector<std::string> witnesses;

    /// Good partial coloring: every class is a set of vertex-disjoint paths.
    [[nodiscard]] bool good() const {
        return degree_violations == 0 && monochromatic_cycles == 0 && duplicate_copies == 0 &&
               out_of_palette == 0;
    }
    [[nodiscard]] bool ok() const { return good() && uncolored == 0; }
};

inline ColoringReport verify_coloring(const LayeredMultigraph& g, const ColorAssignment& a, int colors) {
    ColoringReport r;
    const int n = g.vertex_count();
    if (a.size() != g.size()) {
        r.out_of_palette = 1;
        r.witnesses.push_back("assignment size " + std::to_string(a.size()) + " != " + std::to_string(g.size()));
        return r;
    }
    const auto idx = [n](int k, int v) { return static_cast<std::size_t>((k - 1) * n + v); };
    std::vector<int> succ(static_cast<std::size_t>(colors * n), -1);
    std::vector<int> pred(static_cast<std::size_t>(colors * n), -1);
    for (int i = 0; i < g.size(); ++i) {
        const auto& e = g[i];
        const int k = a[i];
        if (k == 0) {
            ++r.uncolored;
            continue;
        }
        if (k < 0 || k > colors) {
            ++r.out_of_palette;
            r.witnesses.push_back("copy " + std::to_string(i) + " has color " + std::to_string(k));
            continue;
        }
        for (int j = 0; j < i; ++j) {
            if (a[j] == k && g[j].from == e.from && g[j].to == e.to) {
                ++r.duplicate_copies;
                r.witnesses.push_back("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                                      " has two copies colored " + std::to_string(k));
            }
        }
        auto& s = succ[idx(k, e.from)];
        auto& p = pred[idx(k, e.to)];
        if (s != -1) {
            ++r.degree_violations;
            r.witnesses.push_back("color " + std::to_string(k) + ": two edges leave " + std::to_string(e.from));
        } else {
            s = e.to;
        }
        if (p != -1) {
            ++r.degree_violations;
            r.witnesses.push_back("color " + std::to_string(k) + ": two edges enter " + std::to_string(e.to));
        } else {
            p = e.from;
        }
    }
    // With out-degree at most one, a class has a cycle iff some walk revisits.
    for (int k = 1; k <= colors; ++k) {
        std::vector<int> state(static_cast<std::size_t>(n), 0);
        for (int v = 0; v < n; ++v) {
            if (state[static_cast<std::size_t>(v)]) continue;
            std::vector<int> walk;
            int x = v;
            while (x != -1 && state[static_cast<std::size_t>(x)] == 0) {
                state[static_cast<std::size_t>(x)] = 1;
                walk.push_back(x);
                x = succ[idx(k, x)];
            }
            if (x != -1 && state[static_cast<std::size_t>(x)] == 1) {
                ++r.monochromatic_cycles;
                std::string w = "color " + std::to_string(k) + " cycle:";
                auto it = std::find(walk.begin(), walk.end(), x);
                for (; it != walk.end(); ++it) w += " " + std::to_string(*it);
                r.witnesses.push_back(w);
            }
            for (int y : walk) state[static_cast<std::size_t>(y)] = 2;
        }
    }
    return r;
}

/// Weight of each color class 1..colors (index 0 unused).
inline std::vector<Weight> class_weights(const Instance& inst, const LayeredMultigraph& g,
                                         const ColorAssignment& a, int colors) {
    std::vector<Weight> w(static_cast<std::size_t>(colors + 1), 0);
    for (int i = 0; i < g.size(); ++i) {
        if (a[i] > 0 && a[i] <= colors) w[static_cast<std::size_t>(a[i])] += inst.weight(g[i].from, g[i].to);
    }
    return w;
}

/// Incrementally maintained color classes: per-color successor and
/// predecessor arrays, rejecting any assignment that breaks the path property.
class ClassState {
public:
    ClassState(int n, int colors)
        : n_(n), colors_(colors), succ_(static_cast<std::size_t>(n * colors), -1),
          pred_(static_cast<std::size_t>(n * colors), -1) {}

    [[nodiscard]] int colors() const { return colors_; }

    [[nodiscard]] bool can_add(int u, int v, int k) const {
        if (succ_[idx(k, u)] != -1 || pred_[idx(k, v)] != -1) return false;
        for (int x = v; x != -1; x = succ_[idx(k, x)]) {
            if (x == u) return false;
        }
        return true;
    }
    void add(int u, int v, int k) {
        succ_[idx(k, u)] = v;
        pred_[idx(k, v)] = u;
    }
    void remove(int u, int v, int k) {
        succ_[idx(k, u)] = -1;
        pred_[idx(k, v)] = -1;
    }
    [[nodiscard]] int succ(int u, int k) const { return succ_[idx(k, u)]; }
    [[nodiscard]] int pred(int v, int k) const { return pred_[idx(k, v)]; }

    /// Loads an existing good partial coloring; returns false if it is not good.
    bool load(const LayeredMultigraph& g, const ColorAssignment& a) {
        for (int i = 0; i < g.size(); ++i) {
            if (a[i] == 0) continue;
            if (a[i] > colors_ || !can_add(g[i].from, g[i].to, a[i])) return false;
            add(g[i].from, g[i].to, a[i]);
        }
        return true;
    }

private:
    [[nodiscard]] std::size_t idx(int k, int v) const { return static_cast<std::size_t>((k - 1) * n_ + v); }
    int n_;
    int colors_;
    std::vector<int> succ_;
    std::vector<int> pred_;
};

struct ExhaustiveResult {
    std::optional<ColorAssignment> coloring;
    bool budget_exhausted = false;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultColoringBudget = 10'000'000;

namespace detail {

class Backtracker {
public:
    Backtracker(const LayeredMultigraph& g, ColorAssignment start, int colors, std::uint64_t budget,
                std::vector<int> palette, const std::vector<char>* active = nullptr)
        : g_(g), a_(std::move(start)), state_(g.vertex_count(), colors), budget_(budget),
          palette_(std::move(palette)) {
        used_.assign(static_cast<std::size_t>(colors + 1), 0);
        for (int i = 0; i < g.size(); ++i) {
            if (a_[i] != 0) {
                ++used_[static_cast<std::size_t>(a_[i])];
            } else if (active == nullptr || (*active)[static_cast<std::size_t>(i)]) {
                order_.push_back(i);
            }
        }
        // Copies of one edge stay adjacent; edges ordered by a walk so that
        // cycles close early in the search.
        std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
            const auto& ex = g_[x];
            const auto& ey = g_[y];
            return std::pair(ex.from, ex.to) < std::pair(ey.from, ey.to);
        });
        order_ = walk_order(order_);
    }

    ExhaustiveResult run() {
        ExhaustiveResult r;
        if (!state_.load(g_, a_)) return r;
        if (search(0)) r.coloring = a_;
        r.budget_exhausted = exhausted_;
        r.nodes = nodes_;
        return r;
    }

private:
    std::vector<int> walk_order(const std::vector<int>& sorted) const {
        if (sorted.empty()) return sorted;
        std::vector<int> out;
        std::vector<char> taken(sorted.size(), 0);
        std::size_t remaining = sorted.size();
        int at = g_[sorted[0]].from;
        while (remaining > 0) {
            std::size_t pick = sorted.size();
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                if (!taken[i] && g_[sorted[i]].from == at) {
                    pick = i;
                    break;
                }
            }
            if (pick == sorted.size()) {
                for (std::size_t i = 0; i < sorted.size(); ++i) {
                    if (!taken[i]) {
                        pick = i;
                        break;
                    }
                }
            }
            // Take the whole bundle of copies of that edge.
            const auto& e = g_[sorted[pick]];
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                if (!taken[i] && g_[sorted[i]].from == e.from && g_[sorted[i]].to == e.to) {
                    taken[i] = 1;
                    --remaining;
                    out.push_back(sorted[i]);
                }
            }
            at = e.to;
        }
        return out;
    }

    bool search(std::size_t pos) {
        if (pos == order_.size()) return true;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return false;
        }
        const int i = order_[pos];
        const auto& e = g_[i];
        // Copies of the same edge are interchangeable: force increasing colors.
        int floor = 0;
        if (pos > 0) {
            const auto& prev = g_[order_[pos - 1]];
            if (prev.from == e.from && prev.to == e.to) floor = a_[order_[pos - 1]];
        }
        bool tried_fresh = false;
        for (int k : palette_) {
            if (k <= floor) continue;
            // Colors nobody has used yet are interchangeable.
            const bool fresh = used_[static_cast<std::size_t>(k)] == 0;
            if (fresh && tried_fresh) continue;
            if (!state_.can_add(e.from, e.to, k)) continue;
            if (fresh) tried_fresh = true;
            state_.add(e.from, e.to, k);
            a_[i] = k;
            ++used_[static_cast<std::size_t>(k)];
            if (search(pos + 1)) return true;
            --used_[static_cast<std::size_t>(k)];
            a_[i] = 0;
            state_.remove(e.from, e.to, k);
            if (exhausted_) return false;
        }
        return false;
    }

    const LayeredMultigraph& g_;
    ColorAssignment a_;
    ClassState state_;
    std::uint64_t budget_;
    std::vector<int> palette_;
    std::vector<int> order_;
    std::vector<int> used_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

inline std::vector<int> full_palette(int colors) {
    std::vector<int> p(static_cast<std::size_t>(colors));
    for (int k = 1; k <= colors; ++k) p[static_cast<std::size_t>(k - 1)] = k;
    return p;
}

}  // namespace detail

/// Exact search for a good coloring with colors 1..k.
inline ExhaustiveResult exhaustive_color(const LayeredMultigraph& g, int colors,
                                         std::uint64_t budget = kDefaultColoringBudget) {
    return detail::Backtracker(g, ColorAssignment(g.size()), colors, budget, detail::full_palette(colors)).run();
}

/// Extends a good partial coloring without touching its colored copies.
/// With `active`, only the flagged uncolored copies are assigned.
inline ExhaustiveResult complete_coloring(const LayeredMultigraph& g, const ColorAssignment& partial, int colors,
                                          std::uint64_t budget = kDefaultColoringBudget,
                                          const std::vector<char>* active = nullptr) {
    return detail::Backtracker(g, partial, colors, budget, detail::full_palette(colors), active).run();
}

}  // namespace maxatsp
