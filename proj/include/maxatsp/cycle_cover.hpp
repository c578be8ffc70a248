#pragma once

// Maximum-weight cycle covers, cycle decomposition, hard-cycle detection and
// the drop-the-lightest-edge path extraction.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxatsp/instance.hpp"
#include "maxatsp/matching.hpp"

namespace maxatsp {

/// Directed edge (u, v) of the complete graph.
struct Arc {
    int from = 0;
    int to = 0;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Vertex-disjoint directed cycles covering every vertex, stored as a
/// successor permutation without fixed points.
class CycleCover {
public:
    CycleCover() = default;

    explicit CycleCover(std::vector<int> succ) : succ_(std::move(succ)) {
        const int n = static_cast<int>(succ_.size());
        std::vector<char> hit(succ_.size(), 0);
        for (int v = 0; v < n; ++v) {
            const int s = succ_[static_cast<std::size_t>(v)];
            if (s < 0 || s >= n) throw std::invalid_argument("successor out of range");
            if (s == v) throw std::invalid_argument("cycle cover has a 1-cycle");
            if (hit[static_cast<std::size_t>(s)]) {
                throw std::invalid_argument("successor map is not a permutation");
            }
            hit[static_cast<std::size_t>(s)] = 1;
        }
        pred_.assign(succ_.size(), -1);
        for (int v = 0; v < n; ++v) pred_[static_cast<std::size_t>(succ_[static_cast<std::size_t>(v)])] = v;
    }

    /// Builds a cover from explicit cycles (each a cyclic vertex sequence).
    static CycleCover from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
        std::vector<int> succ(static_cast<std::size_t>(n), -1);
        for (const auto& c : cycles) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                const int v = c[i];
                if (v < 0 || v >= n || succ[static_cast<std::size_t>(v)] != -1) {
                    throw std::invalid_argument("cycles do not partition the vertices");
                }
                succ[static_cast<std::size_t>(v)] = c[(i + 1) % c.size()];
            }
        }
        return CycleCover(std::move(succ));
    }

    [[nodiscard]] int size() const { return static_cast<int>(succ_.size()); }
    [[nodiscard]] int succ(int v) const { return succ_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] int pred(int v) const { return pred_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] const std::vector<int>& successors() const { return succ_; }
    [[nodiscard]] bool contains(int u, int v) const { return succ(u) == v; }

    /// Cycles in canonical form: each starts at its smallest vertex; cycles
    /// ordered by that vertex.
    [[nodiscard]] std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(succ_.size(), 0);
        for (int v = 0; v < size(); ++v) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            std::vector<int> cyc;
            int x = v;
            while (!seen[static_cast<std::size_t>(x)]) {
                seen[static_cast<std::size_t>(x)] = 1;
                cyc.push_back(x);
                x = succ(x);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    /// Cycle index per vertex, consistent with cycles().
    [[nodiscard]] std::vector<int> cycle_ids() const {
        std::vector<int> id(succ_.size(), -1);
        int next = 0;
        for (const auto& c : cycles()) {
            for (int v : c) id[static_cast<std::size_t>(v)] = next;
            ++next;
        }
        return id;
    }

    [[nodiscard]] Weight weight(const Instance& inst) const {
        Weight w = 0;
        for (int v = 0; v < size(); ++v) w += inst.weight(v, succ(v));
        return w;
    }

    friend bool operator==(const CycleCover&, const CycleCover&) = default;

private:
    std::vector<int> succ_;
    std::vector<int> pred_;
};

/// Maximum-weight cycle cover via the assignment problem with the diagonal
/// forbidden.
inline CycleCover max_cycle_cover(const Instance& inst) {
    return CycleCover(max_weight_assignment(inst.weights(), inst.size(), true));
}

inline Weight cycle_weight(const Instance& inst, const std::vector<int>& cycle) {
    Weight w = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        w += inst.weight(cycle[i], cycle[(i + 1) % cycle.size()]);
    }
    return w;
}

/// True iff every edge of the cycle weighs strictly more than a quarter of
/// the cycle. Only 2-cycles and triangles can qualify.
inline bool is_hard(const Instance& inst, const std::vector<int>& cycle) {
    if (cycle.size() < 2) return false;
    const Weight total = cycle_weight(inst, cycle);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Weight e = inst.weight(cycle[i], cycle[(i + 1) % cycle.size()]);
        if (4 * e <= total) return false;
    }
    return true;
}

inline bool has_hard_cycle(const Instance& inst, const CycleCover& c) {
    const auto cyc = c.cycles();
    return std::any_of(cyc.begin(), cyc.end(),
                       [&](const std::vector<int>& x) { return is_hard(inst, x); });
}

/// A directed path as a vertex sequence (a single vertex is a valid path).
using VertexPath = std::vector<int>;

/// Lightest edge of a cycle: minimum weight, then lexicographically smallest
/// (source, target).
inline Arc lightest_edge(const Instance& inst, const std::vector<int>& cycle) {
    Arc best{cycle[0], cycle[1 % cycle.size()]};
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Arc a{cycle[i], cycle[(i + 1) % cycle.size()]};
        const Weight wa = inst.weight(a.from, a.to);
        const Weight wb = inst.weight(best.from, best.to);
        if (wa < wb || (wa == wb && a < best)) best = a;
    }
    return best;
}

/// Removes the lightest edge of every cycle, returning one path per cycle.
inline std::vector<VertexPath> drop_lightest_and_collect_paths(const Instance& inst,
                                                               const CycleCover& c) {
    std::vector<VertexPath> paths;
    for (const auto& cyc : c.cycles()) {
        const Arc drop = lightest_edge(inst, cyc);
        VertexPath p;
        p.reserve(cyc.size());
        int v = drop.to;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            p.push_back(v);
            v = c.succ(v);
        }
        paths.push_back(std::move(p));
    }
    return paths;
}

inline Weight path_weight(const Instance& inst, const VertexPath& p) {
    Weight w = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) w += inst.weight(p[i], p[i + 1]);
    return w;
}

}  // namespace maxatsp
