#pragma once

// Alternating cycles and h-cycles of C_max ⊕ C for a relaxed cover C, worked
// out on half-edges: every edge (u, v) is split at a midpoint x_uv into a tail
// half (u, x_uv) and a head half (x_uv, v).
//
// At an original vertex the two differing out-halves (one per cover) are
// consecutive, and so are the two differing in-halves. At a midpoint both
// halves of the edge continue into each other; a midpoint touched by a single
// differing half ends an h-cycle.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "maxatsp/cycle_cover.hpp"
#include "maxatsp/gadget.hpp"
#include "maxatsp/instance.hpp"
#include "maxatsp/relaxed_cover.hpp"

namespace maxatsp {

enum class Portion { Full, Tail, Head };

/// A whole edge or one of its halves inside an alternating structure.
struct Step {
    int from = 0;
    int to = 0;
    Portion portion = Portion::Full;
    bool in_cover = false;  // belongs to the relaxed cover rather than C_max

    friend bool operator==(const Step&, const Step&) = default;
};

enum class StructureKind { Cycle, HCycle };

struct AlternatingStructure {
    StructureKind kind = StructureKind::Cycle;
    std::vector<Step> steps;
};

namespace detail {

// Half-edge item of the symmetric difference.
struct DiffItem {
    Arc edge;
    HalfSide side;
    bool in_cover;
};

inline HalfWeight step_weight(const Instance& inst, const Step& s) {
    const Weight w = inst.weight(s.from, s.to);
    return s.portion == Portion::Full ? HalfWeight::whole(w) : HalfWeight::half(w);
}

/// Whether every half of the step lies in `c`; nullopt when only some do.
inline std::optional<bool> step_membership(const RelaxedCover& c, const Step& s) {
    const bool tail = c.has_tail(s.from, s.to);
    const bool head = c.has_head(s.from, s.to);
    switch (s.portion) {
        case Portion::Tail: return tail;
        case Portion::Head: return head;
        case Portion::Full:
            if (tail != head) return std::nullopt;
            return tail;
    }
    return std::nullopt;
}

}  // namespace detail

/// Alternating cycles and h-cycles of cmax ⊕ c. Every differing half-edge
/// lies in exactly one structure. Cycles come first, each started at its
/// smallest step, then h-cycles.
inline std::vector<AlternatingStructure> decompose(const RelaxedCover& c, const CycleCover& cmax) {
    const int n = c.size();
    if (cmax.size() != n) throw std::invalid_argument("cover sizes differ");
    std::vector<detail::DiffItem> items;
    // Index items by their endpoints: out-side of u, in-side of v, midpoint (u,v).
    std::vector<std::vector<int>> at_out(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> at_in(static_cast<std::size_t>(n));
    std::map<Arc, std::vector<int>> at_mid;
    auto add = [&](Arc e, HalfSide side, bool in_cover) {
        const int id = static_cast<int>(items.size());
        items.push_back({e, side, in_cover});
        if (side == HalfSide::Tail) {
            at_out[static_cast<std::size_t>(e.from)].push_back(id);
        } else {
            at_in[static_cast<std::size_t>(e.to)].push_back(id);
        }
        at_mid[e].push_back(id);
    };
    for (int u = 0; u < n; ++u) {
        if (c.out(u) != cmax.succ(u)) {
            add({u, cmax.succ(u)}, HalfSide::Tail, false);
            add({u, c.out(u)}, HalfSide::Tail, true);
        }
    }
    for (int v = 0; v < n; ++v) {
        if (c.in(v) != cmax.pred(v)) {
            add({cmax.pred(v), v}, HalfSide::Head, false);
            add({c.in(v), v}, HalfSide::Head, true);
        }
    }

    // Each item has a vertex end and a midpoint end.
    auto vertex_partner = [&](int id) {
        const auto& it = items[static_cast<std::size_t>(id)];
        const auto& bucket = it.side == HalfSide::Tail ? at_out[static_cast<std::size_t>(it.edge.from)]
                                                       : at_in[static_cast<std::size_t>(it.edge.to)];
        return bucket[0] == id ? bucket[1] : bucket[0];
    };
    auto mid_partner = [&](int id) {
        const auto& bucket = at_mid.at(items[static_cast<std::size_t>(id)].edge);
        if (bucket.size() == 1) return -1;
        return bucket[0] == id ? bucket[1] : bucket[0];
    };

    std::vector<char> used(items.size(), 0);
    std::vector<AlternatingStructure> cycles;
    std::vector<AlternatingStructure> hcycles;

    // Walks from `start`, leaving it through its vertex end first.
    auto walk = [&](int start) {
        std::vector<int> seq;
        int cur = start;
        bool via_vertex = true;
        while (cur != -1 && !used[static_cast<std::size_t>(cur)]) {
            used[static_cast<std::size_t>(cur)] = 1;
            seq.push_back(cur);
            cur = via_vertex ? vertex_partner(cur) : mid_partner(cur);
            via_vertex = !via_vertex;
        }
        return seq;
    };

    auto to_steps = [&](const std::vector<int>& seq, bool closed) {
        // Merge the two halves of an edge met consecutively at their midpoint.
        // A closed walk leaves seq[0] through its vertex end, so its midpoint
        // partner is the last item; rotating by one keeps that pair together.
        std::vector<Step> steps;
        std::vector<int> rot = seq;
        if (closed && !rot.empty()) std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        std::size_t i = 0;
        const std::size_t stop = rot.size();
        while (i < stop) {
            const auto& a = items[static_cast<std::size_t>(rot[i])];
            if (i + 1 < stop) {
                const auto& b = items[static_cast<std::size_t>(rot[i + 1])];
                if (a.edge == b.edge && a.side != b.side) {
                    steps.push_back({a.edge.from, a.edge.to, Portion::Full, a.in_cover});
                    i += 2;
                    continue;
                }
            }
            steps.push_back({a.edge.from, a.edge.to,
                             a.side == HalfSide::Tail ? Portion::Tail : Portion::Head, a.in_cover});
            ++i;
        }
        return steps;
    };

    // h-cycles: start at an item whose midpoint end is open.
    for (std::size_t id = 0; id < items.size(); ++id) {
        if (used[id] || mid_partner(static_cast<int>(id)) != -1) continue;
        const auto seq = walk(static_cast<int>(id));
        hcycles.push_back({StructureKind::HCycle, to_steps(seq, false)});
    }
    for (std::size_t id = 0; id < items.size(); ++id) {
        if (used[id]) continue;
        const auto seq = walk(static_cast<int>(id));
        auto steps = to_steps(seq, true);
        auto less = [](const Step& x, const Step& y) {
            return std::tie(x.from, x.to, x.portion) < std::tie(y.from, y.to, y.portion);
        };
        const auto it = std::min_element(steps.begin(), steps.end(), less);
        std::rotate(steps.begin(), it, steps.end());
        cycles.push_back({StructureKind::Cycle, std::move(steps)});
    }
    std::sort(cycles.begin(), cycles.end(), [](const auto& x, const auto& y) {
        return std::tie(x.steps[0].from, x.steps[0].to) < std::tie(y.steps[0].from, y.steps[0].to);
    });
    cycles.insert(cycles.end(), hcycles.begin(), hcycles.end());
    return cycles;
}

/// Σ w over the structure's parts outside `c` minus Σ w over parts in `c`;
/// halves count w/2.
inline HalfWeight alternating_weight(const Instance& inst, const AlternatingStructure& a,
                                     const RelaxedCover& c) {
    HalfWeight total;
    for (const auto& s : a.steps) {
        const auto member = detail::step_membership(c, s);
        if (!member) throw std::invalid_argument("structure splits an edge of the cover");
        if (*member) {
            total -= detail::step_weight(inst, s);
        } else {
            total += detail::step_weight(inst, s);
        }
    }
    return total;
}

inline HalfWeight alternating_weight(const Instance& inst, const AlternatingStructure& a,
                                     const CycleCover& c) {
    return alternating_weight(inst, a, RelaxedCover::from_cycle_cover(c));
}

/// c ⊕ a. Membership of each part is read off `c`, so applying twice
/// restores the original. Throws std::invalid_argument when `a` does not
/// alternate with respect to `c` or the result is not a relaxed cover.
inline RelaxedCover apply(const RelaxedCover& c, const AlternatingStructure& a) {
    std::vector<int> out = c.outs();
    std::vector<int> in = c.ins();
    std::vector<std::pair<Arc, HalfSide>> removed, added;
    std::optional<bool> prev;
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        const auto& s = a.steps[i];
        const auto member = detail::step_membership(c, s);
        if (!member) throw std::invalid_argument("structure splits an edge of the cover");
        if (prev && *prev == *member) throw std::invalid_argument("structure does not alternate");
        prev = member;
        auto& bucket = *member ? removed : added;
        if (s.portion != Portion::Head) bucket.push_back({{s.from, s.to}, HalfSide::Tail});
        if (s.portion != Portion::Tail) bucket.push_back({{s.from, s.to}, HalfSide::Head});
    }
    if (a.kind == StructureKind::Cycle && a.steps.size() % 2 != 0) {
        throw std::invalid_argument("alternating cycle has odd length");
    }
    for (const auto& [e, side] : removed) {
        auto& slot = side == HalfSide::Tail ? out[static_cast<std::size_t>(e.from)]
                                            : in[static_cast<std::size_t>(e.to)];
        slot = -1;
    }
    for (const auto& [e, side] : added) {
        auto& slot = side == HalfSide::Tail ? out[static_cast<std::size_t>(e.from)]
                                            : in[static_cast<std::size_t>(e.to)];
        if (slot != -1) throw std::invalid_argument("structure adds a second half-edge at a vertex");
        slot = side == HalfSide::Tail ? e.to : e.from;
    }
    for (std::size_t v = 0; v < out.size(); ++v) {
        if (out[v] == -1 || in[v] == -1) {
            throw std::invalid_argument("structure leaves a vertex without a half-edge");
        }
    }
    return RelaxedCover(std::move(out), std::move(in));
}

/// An alternating cycle is necessary when undoing it in `c` would break the
/// relaxed-cover constraints (with `c1` when filtering a second cover).
/// h-cycles are never necessary; the filter leaves them alone.
inline bool is_necessary(const Instance& inst, const AlternatingStructure& a, const RelaxedCover& c,
                         const CycleCover& cmax, const RelaxedCover* c1 = nullptr) {
    if (a.kind == StructureKind::HCycle) return false;
    return !verify_relaxed_constraints(inst, apply(c, a), cmax, c1).ok();
}

struct FilterResult {
    RelaxedCover cover;
    int rounds = 0;
    int applied = 0;       // alternating cycles undone in total
    bool batched = true;   // every round could apply its cycles at once
};

/// Undoes every non-necessary alternating cycle of cmax ⊕ c, repeating until
/// none is left. Cycles of one round are edge-disjoint and applied together
/// when the result still satisfies the constraints; otherwise they are tried
/// one at a time.
inline FilterResult necessity_filter(const Instance& inst, const RelaxedCover& c,
                                     const CycleCover& cmax, const RelaxedCover* c1 = nullptr) {
    FilterResult r{c, 0, 0, true};
    for (;;) {
        std::vector<AlternatingStructure> todo;
        for (const auto& a : decompose(r.cover, cmax)) {
            if (a.kind != StructureKind::Cycle) continue;
            if (alternating_weight(inst, a, r.cover) < HalfWeight{}) continue;
            if (!is_necessary(inst, a, r.cover, cmax, c1)) todo.push_back(a);
        }
        if (todo.empty()) return r;
        ++r.rounds;
        RelaxedCover next = r.cover;
        for (const auto& a : todo) next = apply(next, a);
        if (verify_relaxed_constraints(inst, next, cmax, c1).ok()) {
            r.cover = std::move(next);
            r.applied += static_cast<int>(todo.size());
            continue;
        }
        r.batched = false;
        for (const auto& a : todo) {
            auto cand = apply(r.cover, a);
            if (verify_relaxed_constraints(inst, cand, cmax, c1).ok()) {
                r.cover = std::move(cand);
                ++r.applied;
            }
        }
    }
}

}  // namespace maxatsp
