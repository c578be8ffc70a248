#pragma once

// Matching graphs whose perfect matchings are relaxed cycle covers.
//
// Every vertex v gets v_in and v_out; every ordered pair (u, v) gets e1_uv and
// e2_uv joined by a zero edge, with u_out--e1_uv and v_in--e2_uv carrying the
// two half-edges. Matching u_out with e1_uv selects the tail half of (u, v);
// matching v_in with e2_uv selects its head half. Gadget vertices attached to
// e1/e2 vertices must be matched too, which removes half-edges from every
// perfect matching and so encodes the forbidden structures.
//
// Graph weights are in half-units: each half-edge of (u, v) weighs w(u, v),
// so a matching's weight equals HalfWeight::doubled of the decoded cover.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "maxatsp/cycle_cover.hpp"
#include "maxatsp/instance.hpp"
#include "maxatsp/matching.hpp"
#include "maxatsp/relaxed_cover.hpp"

namespace maxatsp {

enum class GadgetKind { TwoCycle, Triangle, FourCycle };

inline const char* to_string(GadgetKind k) {
    switch (k) {
        case GadgetKind::TwoCycle: return "two-cycle";
        case GadgetKind::Triangle: return "triangle";
        case GadgetKind::FourCycle: return "four-cycle";
    }
    return "?";
}

/// One a/b vertex pair and what it is wired to.
struct Gadget {
    GadgetKind kind = GadgetKind::TwoCycle;
    std::vector<int> cycle;  // original vertices, oriented (p, q, r[, s])
    int a = -1;              // graph vertex ids
    int b = -1;
    std::vector<int> a_adj;
    std::vector<int> b_adj;
};

enum class NodeKind { In, Out, EdgeTail, EdgeHead, GadgetA, GadgetB };

struct NodeTag {
    NodeKind kind = NodeKind::In;
    int u = -1;  // vertex (In/Out), edge tail (Edge*), gadget index (Gadget*)
    int v = -1;  // edge head for Edge*
};

/// Structures of the cover pair that the relaxed-cover constraints talk
/// about. Shared by the graph builder and the verifier.
struct ConstraintStructures {
    std::vector<std::array<int, 2>> pairs;      // unordered, u < v
    std::vector<std::array<int, 3>> triangles;  // oriented t = (p,q),(q,r),(r,p)
    std::vector<std::array<int, 4>> four_cycles;
};

namespace detail {

inline std::vector<std::vector<int>> cycles_of_length(const std::vector<std::vector<int>>& cs,
                                                      std::size_t len) {
    std::vector<std::vector<int>> out;
    for (const auto& c : cs) {
        if (c.size() == len) out.push_back(c);
    }
    return out;
}

inline std::vector<int> sorted_copy(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

inline bool shares_edge_with(const CycleCover& cover, int u, int v) {
    return cover.contains(u, v) || cover.contains(v, u);
}

/// Canonical rotation: smallest vertex first.
template <std::size_t N>
std::array<int, N> canonical_rotation(const std::vector<int>& c) {
    std::array<int, N> out{};
    const auto it = std::min_element(c.begin(), c.end());
    const auto start = static_cast<std::size_t>(it - c.begin());
    for (std::size_t i = 0; i < N; ++i) out[i] = c[(start + i) % N];
    return out;
}

}  // namespace detail

/// Pairs, triangles and 4-cycles constrained for a cover improving `cmax`
/// (and `c1` when given). Without `c1` only the 2-cycles of `cmax` are
/// constrained.
/// A structure spanning every vertex is left out: a tour may run along it.
inline ConstraintStructures constraint_structures(const CycleCover& cmax,
                                                  const RelaxedCover* c1) {
    ConstraintStructures s;
    const std::size_t n = static_cast<std::size_t>(cmax.size());
    auto spanning = [n](const auto& c) { return c.size() == n; };
    const auto max_cycles = cmax.cycles();
    std::set<std::array<int, 2>> pairs;
    for (const auto& c : detail::cycles_of_length(max_cycles, 2)) {
        if (spanning(c)) continue;
        pairs.insert({std::min(c[0], c[1]), std::max(c[0], c[1])});
    }
    if (c1 == nullptr) {
        s.pairs.assign(pairs.begin(), pairs.end());
        return s;
    }
    const auto c1_cycles = c1->cycles();
    const auto max_two = detail::cycles_of_length(max_cycles, 2);
    const auto c1_two = detail::cycles_of_length(c1_cycles, 2);
    for (const auto& c : c1_two) {
        if (!spanning(c) && detail::shares_edge_with(cmax, c[0], c[1])) {
            pairs.insert({std::min(c[0], c[1]), std::max(c[0], c[1])});
        }
    }
    auto has_pair_in = [](const std::vector<std::vector<int>>& twos, int x, int y) {
        for (const auto& c : twos) {
            if ((c[0] == x && c[1] == y) || (c[0] == y && c[1] == x)) return true;
        }
        return false;
    };
    auto touches_two_cycle = [&](const std::vector<std::vector<int>>& twos,
                                 const std::vector<int>& tri) {
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                if (has_pair_in(twos, tri[i], tri[j])) return true;
            }
        }
        return false;
    };

    // Keyed by vertex set; the orientation comes from cmax's triangle when
    // there is one, otherwise from c1's.
    std::map<std::vector<int>, std::array<int, 3>> tris;
    const auto max_tri = detail::cycles_of_length(max_cycles, 3);
    const auto c1_tri = detail::cycles_of_length(c1_cycles, 3);
    for (const auto& t : max_tri) {
        const auto key = detail::sorted_copy(t);
        bool qualifies = touches_two_cycle(c1_two, t);
        for (const auto& u : c1_tri) {
            if (detail::sorted_copy(u) == key) qualifies = true;
        }
        if (qualifies) tris[key] = detail::canonical_rotation<3>(t);
    }
    for (const auto& t : c1_tri) {
        const auto key = detail::sorted_copy(t);
        if (tris.count(key)) continue;
        if (touches_two_cycle(max_two, t)) tris[key] = detail::canonical_rotation<3>(t);
    }
    for (const auto& [key, t] : tris) {
        if (key.size() != n) s.triangles.push_back(t);
    }

    auto shared_two_cycles = [](const std::vector<std::vector<int>>& twos,
                                const std::vector<int>& four) {
        int count = 0;
        for (const auto& c : twos) {
            for (std::size_t i = 0; i < 4; ++i) {
                const int x = four[i];
                const int y = four[(i + 1) % 4];
                if ((c[0] == x && c[1] == y) || (c[0] == y && c[1] == x)) {
                    ++count;
                    break;
                }
            }
        }
        return count;
    };
    std::set<std::array<int, 4>> fours;
    for (const auto& c : detail::cycles_of_length(c1_cycles, 4)) {
        if (!spanning(c) && shared_two_cycles(max_two, c) >= 2) fours.insert(detail::canonical_rotation<4>(c));
    }
    for (const auto& c : detail::cycles_of_length(max_cycles, 4)) {
        if (!spanning(c) && shared_two_cycles(c1_two, c) >= 2) fours.insert(detail::canonical_rotation<4>(c));
    }
    s.four_cycles.assign(fours.begin(), fours.end());
    for (const auto& t : s.triangles) {
        for (std::size_t i = 0; i < 3; ++i) {
            const int x = t[i];
            const int y = t[(i + 1) % 3];
            pairs.insert({std::min(x, y), std::max(x, y)});
        }
    }
    for (const auto& c : s.four_cycles) {
        for (std::size_t i = 0; i < 4; ++i) {
            const int x = c[i];
            const int y = c[(i + 1) % 4];
            pairs.insert({std::min(x, y), std::max(x, y)});
        }
    }
    s.pairs.assign(pairs.begin(), pairs.end());
    return s;
}

/// Rotation (p, q, r) of a triangle with 2 w(p,r) <= w(p,q) + w(q,r),
/// smallest p among valid rotations. Returns false in `valid` if none exists.
inline std::array<int, 3> orient_triangle(const Instance& inst, const std::array<int, 3>& t,
                                          bool* valid = nullptr) {
    std::optional<std::array<int, 3>> best;
    std::array<int, 3> fallback = t;
    Weight fallback_excess = 0;
    bool have_fallback = false;
    for (std::size_t s = 0; s < 3; ++s) {
        const std::array<int, 3> r{t[s], t[(s + 1) % 3], t[(s + 2) % 3]};
        const Weight excess = 2 * inst.weight(r[0], r[2]) - inst.weight(r[0], r[1]) -
                              inst.weight(r[1], r[2]);
        if (excess <= 0) {
            if (!best || r[0] < (*best)[0]) best = r;
        }
        if (!have_fallback || excess < fallback_excess ||
            (excess == fallback_excess && r[0] < fallback[0])) {
            fallback = r;
            fallback_excess = excess;
            have_fallback = true;
        }
    }
    if (valid) *valid = best.has_value();
    return best ? *best : fallback;
}

class GadgetGraph {
public:
    explicit GadgetGraph(const Instance& inst) : n_(inst.size()) {
        const int base = 2 * n_ + 2 * n_ * (n_ - 1);
        graph_ = UndirectedWeightedGraph(base);
        tags_.resize(static_cast<std::size_t>(base));
        for (int v = 0; v < n_; ++v) {
            tags_[static_cast<std::size_t>(in_vertex(v))] = {NodeKind::In, v, -1};
            tags_[static_cast<std::size_t>(out_vertex(v))] = {NodeKind::Out, v, -1};
        }
        for (int u = 0; u < n_; ++u) {
            for (int v = 0; v < n_; ++v) {
                if (u == v) continue;
                const Weight w = inst.weight(u, v);
                tags_[static_cast<std::size_t>(e1(u, v))] = {NodeKind::EdgeTail, u, v};
                tags_[static_cast<std::size_t>(e2(u, v))] = {NodeKind::EdgeHead, u, v};
                add_edge(out_vertex(u), e1(u, v), w, HalfEdge{{u, v}, HalfSide::Tail});
                add_edge(in_vertex(v), e2(u, v), w, HalfEdge{{u, v}, HalfSide::Head});
                add_edge(e1(u, v), e2(u, v), 0, std::nullopt);
            }
        }
    }

    [[nodiscard]] int original_size() const { return n_; }
    [[nodiscard]] int in_vertex(int v) const { return v; }
    [[nodiscard]] int out_vertex(int v) const { return n_ + v; }
    [[nodiscard]] int e1(int u, int v) const { return 2 * n_ + 2 * pair_index(u, v); }
    [[nodiscard]] int e2(int u, int v) const { return 2 * n_ + 2 * pair_index(u, v) + 1; }

    [[nodiscard]] const UndirectedWeightedGraph& graph() const { return graph_; }
    [[nodiscard]] const std::vector<NodeTag>& tags() const { return tags_; }
    [[nodiscard]] const std::vector<Gadget>& gadgets() const { return gadgets_; }
    [[nodiscard]] const std::optional<HalfEdge>& decode(int edge_id) const {
        return decode_[static_cast<std::size_t>(edge_id)];
    }
    [[nodiscard]] const std::vector<std::string>& audit_log() const { return audit_; }
    void note(std::string line) { audit_.push_back(std::move(line)); }

    [[nodiscard]] int count_gadgets(GadgetKind k) const {
        return static_cast<int>(std::count_if(gadgets_.begin(), gadgets_.end(),
                                              [k](const Gadget& g) { return g.kind == k; }));
    }

    /// Adds an a/b vertex pair with zero-weight edges to the given e-vertices.
    void add_gadget(GadgetKind kind, std::vector<int> cycle, std::vector<int> a_adj,
                    std::vector<int> b_adj) {
        Gadget g{kind, std::move(cycle), -1, -1, std::move(a_adj), std::move(b_adj)};
        const int idx = static_cast<int>(gadgets_.size());
        g.a = graph_.add_vertex();
        tags_.push_back({NodeKind::GadgetA, idx, -1});
        g.b = graph_.add_vertex();
        tags_.push_back({NodeKind::GadgetB, idx, -1});
        for (int x : g.a_adj) add_edge(g.a, x, 0, std::nullopt);
        for (int x : g.b_adj) add_edge(g.b, x, 0, std::nullopt);
        gadgets_.push_back(std::move(g));
    }

    /// 2-cycle gadget on {u, v}: a sees e1_uv and e2_vu, b sees e1_vu and e2_uv.
    void add_pair_gadget(int u, int v) {
        if (u > v) std::swap(u, v);
        if (!pair_gadgets_.insert({u, v}).second) return;
        add_gadget(GadgetKind::TwoCycle, {u, v}, {e1(u, v), e2(v, u)}, {e1(v, u), e2(u, v)});
    }

    [[nodiscard]] bool has_pair_gadget(int u, int v) const {
        return pair_gadgets_.count({std::min(u, v), std::max(u, v)}) > 0;
    }

    [[nodiscard]] std::string to_dot() const {
        std::ostringstream os;
        os << "graph gadget {\n";
        for (std::size_t i = 0; i < tags_.size(); ++i) {
            const auto& t = tags_[i];
            os << "  n" << i << " [label=\"";
            switch (t.kind) {
                case NodeKind::In: os << t.u << "_in"; break;
                case NodeKind::Out: os << t.u << "_out"; break;
                case NodeKind::EdgeTail: os << "e1_" << t.u << "_" << t.v; break;
                case NodeKind::EdgeHead: os << "e2_" << t.u << "_" << t.v; break;
                case NodeKind::GadgetA: os << "a" << t.u; break;
                case NodeKind::GadgetB: os << "b" << t.u; break;
            }
            os << "\"];\n";
        }
        for (const auto& e : graph_.edges()) {
            os << "  n" << e.u << " -- n" << e.v << " [label=\"" << e.weight << "\"];\n";
        }
        os << "}\n";
        return os.str();
    }

private:
    [[nodiscard]] int pair_index(int u, int v) const { return u * (n_ - 1) + (v < u ? v : v - 1); }

    void add_edge(int x, int y, Weight w, std::optional<HalfEdge> h) {
        graph_.add_edge(x, y, w);
        decode_.push_back(h);
    }

    int n_ = 0;
    UndirectedWeightedGraph graph_;
    std::vector<NodeTag> tags_;
    std::vector<std::optional<HalfEdge>> decode_;
    std::vector<Gadget> gadgets_;
    std::set<std::pair<int, int>> pair_gadgets_;
    std::vector<std::string> audit_;
};

/// Graph whose perfect matchings are the relaxed covers improving `cmax`.
inline GadgetGraph build_g1_graph(const Instance& inst, const CycleCover& cmax) {
    GadgetGraph g(inst);
    for (const auto& p : constraint_structures(cmax, nullptr).pairs) g.add_pair_gadget(p[0], p[1]);
    return g;
}

/// Extension of the first graph whose perfect matchings are the relaxed
/// covers improving both `cmax` and `c1`.
inline GadgetGraph build_g2_graph(const Instance& inst, const CycleCover& cmax,
                                  const RelaxedCover& c1) {
    GadgetGraph g(inst);
    const auto s = constraint_structures(cmax, &c1);
    for (const auto& p : s.pairs) g.add_pair_gadget(p[0], p[1]);
    for (const auto& t : s.triangles) {
        bool valid = true;
        const auto o = orient_triangle(inst, t, &valid);
        if (!valid) {
            g.note("triangle {" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                   std::to_string(t[2]) + "} has no rotation with 2w(p,r) <= w(p,q)+w(q,r)");
        }
        const int p = o[0], q = o[1], r = o[2];
        g.add_gadget(GadgetKind::Triangle, {p, q, r}, {g.e2(p, q), g.e1(r, q), g.e1(r, p)},
                     {g.e1(p, q), g.e2(r, q), g.e2(r, p)});
    }
    for (const auto& c : s.four_cycles) {
        std::vector<int> a_adj, b_adj;
        for (std::size_t i = 0; i < 4; ++i) {
            a_adj.push_back(g.e1(c[i], c[(i + 1) % 4]));
            b_adj.push_back(g.e2(c[i], c[(i + 1) % 4]));
        }
        g.add_gadget(GadgetKind::FourCycle, {c[0], c[1], c[2], c[3]}, std::move(a_adj),
                     std::move(b_adj));
    }
    return g;
}

/// Decodes a perfect matching into the half-edges it selects.
inline RelaxedCover extract_relaxed_cover(const GadgetGraph& g, const Matching& m) {
    const int n = g.original_size();
    std::vector<int> out(static_cast<std::size_t>(n), -1);
    std::vector<int> in(static_cast<std::size_t>(n), -1);
    for (int id : m.edge_ids) {
        const auto& h = g.decode(id);
        if (!h) continue;
        auto& slot = h->side == HalfSide::Tail ? out[static_cast<std::size_t>(h->edge.from)]
                                               : in[static_cast<std::size_t>(h->edge.to)];
        const int value = h->side == HalfSide::Tail ? h->edge.to : h->edge.from;
        if (slot != -1) throw std::logic_error("matching selects two half-edges at one vertex side");
        slot = value;
    }
    return RelaxedCover(std::move(out), std::move(in));
}

/// Perfect matching of `g` that decodes to `cover`, if one exists.
inline std::optional<Matching> embed_cover(const GadgetGraph& g, const RelaxedCover& cover) {
    const int n = g.original_size();
    const int total = g.graph().vertex_count();
    std::vector<int> mate(static_cast<std::size_t>(total), -1);
    auto pin = [&](int x, int y) {
        mate[static_cast<std::size_t>(x)] = y;
        mate[static_cast<std::size_t>(y)] = x;
    };
    for (int u = 0; u < n; ++u) pin(g.out_vertex(u), g.e1(u, cover.out(u)));
    for (int v = 0; v < n; ++v) pin(g.in_vertex(v), g.e2(cover.in(v), v));

    std::vector<int> local(static_cast<std::size_t>(total), -1);
    std::vector<int> global;
    for (int x = 0; x < total; ++x) {
        if (mate[static_cast<std::size_t>(x)] == -1) {
            local[static_cast<std::size_t>(x)] = static_cast<int>(global.size());
            global.push_back(x);
        }
    }
    UndirectedWeightedGraph rest(static_cast<int>(global.size()));
    for (const auto& e : g.graph().edges()) {
        const int a = local[static_cast<std::size_t>(e.u)];
        const int b = local[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) rest.add_edge(a, b, 0);
    }
    const Matching sub = max_weight_max_cardinality_matching(rest);
    if (!sub.is_perfect()) return std::nullopt;
    for (std::size_t i = 0; i < global.size(); ++i) {
        mate[static_cast<std::size_t>(global[i])] = global[static_cast<std::size_t>(sub.mate[i])];
    }
    return detail::matching_from_mates(g.graph(), mate);
}

/// Outcome of one constraint family, with human-readable witnesses.
struct ConditionResult {
    bool checked = false;
    bool pass = true;
    std::vector<std::string> witnesses;
};

struct RelaxedCheckReport {
    std::array<ConditionResult, 4> conditions;  // (i) degree, (ii) pairs, (iii) triangles, (iv) 4-cycles

    [[nodiscard]] bool ok() const {
        return std::all_of(conditions.begin(), conditions.end(),
                           [](const ConditionResult& c) { return c.pass; });
    }
};

namespace detail {

inline std::string arc_str(int u, int v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

inline int halves_on(const RelaxedCover& c, const std::vector<Arc>& edges) {
    int k = 0;
    for (const auto& e : edges) k += c.half_count(e.from, e.to);
    return k;
}

}  // namespace detail

/// Structural check of a relaxed cover against the constraints for a cover
/// improving `cmax` (and `c1` when given). Never throws.
inline RelaxedCheckReport verify_relaxed_constraints(const Instance& inst, const RelaxedCover& c,
                                                     const CycleCover& cmax,
                                                     const RelaxedCover* c1) {
    RelaxedCheckReport rep;
    auto fail = [](ConditionResult& r, std::string w) {
        r.pass = false;
        r.witnesses.push_back(std::move(w));
    };

    auto& deg = rep.conditions[0];
    deg.checked = true;
    const int n = c.size();
    if (n != inst.size() || cmax.size() != n) {
        fail(deg, "size mismatch");
        return rep;
    }
    for (int v = 0; v < n; ++v) {
        if (c.out(v) == v || c.in(v) == v) fail(deg, "vertex " + std::to_string(v) + " has a loop half");
    }

    const auto s = constraint_structures(cmax, c1);
    auto& pairs = rep.conditions[1];
    pairs.checked = true;
    for (const auto& p : s.pairs) {
        const int u = p[0], v = p[1];
        const int k = c.half_count(u, v) + c.half_count(v, u);
        if (k > 2) {
            fail(pairs, "pair {" + std::to_string(u) + "," + std::to_string(v) + "} holds " +
                            std::to_string(k) + " half-edges");
        }
        if (c.half_count(u, v) == 1 && c.half_count(v, u) == 1) {
            const int at_uv = c.has_tail(u, v) ? u : v;
            const int at_vu = c.has_tail(v, u) ? v : u;
            if (at_uv == at_vu) {
                fail(pairs, "pair {" + std::to_string(u) + "," + std::to_string(v) +
                                "} has both single halves at vertex " + std::to_string(at_uv));
            }
        }
    }

    auto& tris = rep.conditions[2];
    tris.checked = c1 != nullptr;
    for (const auto& t : s.triangles) {
        const int p = t[0], q = t[1], r = t[2];
        const std::vector<Arc> all{{p, q}, {q, r}, {r, p}, {q, p}, {r, q}, {p, r}};
        const int k = detail::halves_on(c, all);
        if (k > 4 || k % 2 != 0) {
            fail(tris, "triangle " + detail::arc_str(p, q) + detail::arc_str(q, r) +
                           detail::arc_str(r, p) + " holds " + std::to_string(k) + " half-edges");
        }
        const Weight wt = inst.weight(p, q) + inst.weight(q, r) + inst.weight(r, p);
        const std::array<std::array<int, 3>, 3> rev{{{q, p, r}, {r, q, p}, {p, r, q}}};
        for (const auto& [v1, v2, v3] : rev) {
            if (2 * inst.weight(v1, v2) > wt - inst.weight(v2, v1) && c.has_full(v1, v2) &&
                c.has_tail(v3, v2) && c.has_head(v1, v3)) {
                fail(tris, "forbidden half-edge set around " + detail::arc_str(v1, v2) +
                               " via vertex " + std::to_string(v3));
            }
        }
    }

    auto& fours = rep.conditions[3];
    fours.checked = c1 != nullptr;
    for (const auto& q : s.four_cycles) {
        std::vector<Arc> all;
        for (std::size_t i = 0; i < 4; ++i) {
            all.push_back({q[i], q[(i + 1) % 4]});
            all.push_back({q[(i + 1) % 4], q[i]});
        }
        const int k = detail::halves_on(c, all);
        if (k > 6 || k % 2 != 0) {
            fail(fours, "4-cycle starting at " + std::to_string(q[0]) + " holds " +
                            std::to_string(k) + " half-edges");
        }
    }
    return rep;
}

/// Integral cycles of `c` that block a four-colouring: 2-cycles sharing an
/// edge with `cmax`, triangles on the vertex set of a `cmax` triangle or
/// spanning a `cmax` 2-cycle, and 4-cycles sharing edges with two `cmax`
/// 2-cycles.
inline std::vector<std::vector<int>> find_problematic_cycles(const RelaxedCover& c,
                                                             const CycleCover& cmax) {
    std::vector<std::vector<int>> out;
    const auto max_cycles = cmax.cycles();
    const auto max_two = detail::cycles_of_length(max_cycles, 2);
    const auto max_tri = detail::cycles_of_length(max_cycles, 3);
    auto is_max_pair = [&](int x, int y) {
        for (const auto& m : max_two) {
            if ((m[0] == x && m[1] == y) || (m[0] == y && m[1] == x)) return true;
        }
        return false;
    };
    for (const auto& cyc : c.cycles()) {
        if (cyc.size() == 2) {
            if (detail::shares_edge_with(cmax, cyc[0], cyc[1])) out.push_back(cyc);
        } else if (cyc.size() == 3) {
            bool bad = false;
            const auto key = detail::sorted_copy(cyc);
            for (const auto& t : max_tri) bad = bad || detail::sorted_copy(t) == key;
            for (std::size_t i = 0; i < 3; ++i) {
                bad = bad || is_max_pair(cyc[i], cyc[(i + 1) % 3]);
            }
            if (bad) out.push_back(cyc);
        } else if (cyc.size() == 4) {
            int shared = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                if (is_max_pair(cyc[i], cyc[(i + 1) % 4])) ++shared;
            }
            if (shared >= 2) out.push_back(cyc);
        }
    }
    return out;
}

}  // namespace maxatsp
