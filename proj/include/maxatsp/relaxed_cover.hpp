#pragma once

// Relaxed cycle covers: every vertex owns exactly one outgoing half-edge
// (the tail half of some edge) and one incoming half-edge (a head half).
// An edge is fully present when both of its halves are.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxatsp/cycle_cover.hpp"
#include "maxatsp/instance.hpp"

namespace maxatsp {

enum class HalfSide { Tail, Head };

/// Tail half (u, x_uv) or head half (x_uv, v) of the edge (u, v).
struct HalfEdge {
    Arc edge;
    HalfSide side = HalfSide::Tail;

    /// The original vertex this half touches.
    [[nodiscard]] int vertex() const { return side == HalfSide::Tail ? edge.from : edge.to; }
    friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

enum class ComponentKind { Cycle, Path };

/// Maximal run of fully present edges. A path component starts at a vertex
/// whose incoming half is dangling and ends at one whose outgoing half is.
struct CoverComponent {
    ComponentKind kind = ComponentKind::Cycle;
    std::vector<int> vertices;  // in traversal order

    /// Number of fully present edges.
    [[nodiscard]] int edge_count() const {
        const int k = static_cast<int>(vertices.size());
        return kind == ComponentKind::Cycle ? k : k - 1;
    }
};

class RelaxedCover {
public:
    RelaxedCover() = default;

    /// `out[u]` is the head of u's tail half; `in[v]` is the tail of v's head half.
    RelaxedCover(std::vector<int> out, std::vector<int> in) : out_(std::move(out)), in_(std::move(in)) {
        if (out_.size() != in_.size()) throw std::invalid_argument("out/in size mismatch");
        const int n = size();
        for (int v = 0; v < n; ++v) {
            const int o = out_[static_cast<std::size_t>(v)];
            const int i = in_[static_cast<std::size_t>(v)];
            if (o < 0 || o >= n || i < 0 || i >= n || o == v || i == v) {
                throw std::invalid_argument("invalid half-edge at vertex " + std::to_string(v));
            }
        }
    }

    static RelaxedCover from_cycle_cover(const CycleCover& c) {
        std::vector<int> out(static_cast<std::size_t>(c.size()));
        std::vector<int> in(static_cast<std::size_t>(c.size()));
        for (int v = 0; v < c.size(); ++v) {
            out[static_cast<std::size_t>(v)] = c.succ(v);
            in[static_cast<std::size_t>(v)] = c.pred(v);
        }
        return RelaxedCover(std::move(out), std::move(in));
    }

    [[nodiscard]] int size() const { return static_cast<int>(out_.size()); }
    [[nodiscard]] int out(int u) const { return out_[static_cast<std::size_t>(u)]; }
    [[nodiscard]] int in(int v) const { return in_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] const std::vector<int>& outs() const { return out_; }
    [[nodiscard]] const std::vector<int>& ins() const { return in_; }

    [[nodiscard]] bool has_tail(int u, int v) const { return out(u) == v; }
    [[nodiscard]] bool has_head(int u, int v) const { return in(v) == u; }
    [[nodiscard]] bool has_half(const HalfEdge& h) const {
        return h.side == HalfSide::Tail ? has_tail(h.edge.from, h.edge.to)
                                        : has_head(h.edge.from, h.edge.to);
    }
    [[nodiscard]] bool has_full(int u, int v) const { return has_tail(u, v) && has_head(u, v); }
    [[nodiscard]] int half_count(int u, int v) const {
        return static_cast<int>(has_tail(u, v)) + static_cast<int>(has_head(u, v));
    }

    [[nodiscard]] bool is_integral() const {
        for (int u = 0; u < size(); ++u) {
            if (in(out(u)) != u) return false;
        }
        return true;
    }

    [[nodiscard]] CycleCover to_cycle_cover() const {
        if (!is_integral()) throw std::logic_error("relaxed cover is not integral");
        return CycleCover(out_);
    }

    /// All present half-edges, tails first, ordered by vertex.
    [[nodiscard]] std::vector<HalfEdge> half_edges() const {
        std::vector<HalfEdge> hs;
        hs.reserve(2 * out_.size());
        for (int u = 0; u < size(); ++u) hs.push_back({{u, out(u)}, HalfSide::Tail});
        for (int v = 0; v < size(); ++v) hs.push_back({{in(v), v}, HalfSide::Head});
        return hs;
    }

    /// Each half-edge weighs w/2.
    [[nodiscard]] HalfWeight weight(const Instance& inst) const {
        HalfWeight w;
        for (int u = 0; u < size(); ++u) w += HalfWeight::half(inst.weight(u, out(u)));
        for (int v = 0; v < size(); ++v) w += HalfWeight::half(inst.weight(in(v), v));
        return w;
    }

    /// Decomposition of the fully present edges into cycles and paths.
    [[nodiscard]] std::vector<CoverComponent> components() const {
        const int n = size();
        std::vector<CoverComponent> comps;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        auto full_out = [&](int u) { return has_head(u, out(u)) ? out(u) : -1; };
        auto full_in = [&](int v) { return has_tail(in(v), v) ? in(v) : -1; };
        // Paths first, walked from their start vertex.
        for (int v = 0; v < n; ++v) {
            if (seen[static_cast<std::size_t>(v)] || full_in(v) != -1) continue;
            CoverComponent c{ComponentKind::Path, {}};
            for (int x = v; x != -1; x = full_out(x)) {
                seen[static_cast<std::size_t>(x)] = 1;
                c.vertices.push_back(x);
            }
            comps.push_back(std::move(c));
        }
        for (int v = 0; v < n; ++v) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            CoverComponent c{ComponentKind::Cycle, {}};
            for (int x = v; !seen[static_cast<std::size_t>(x)]; x = full_out(x)) {
                seen[static_cast<std::size_t>(x)] = 1;
                c.vertices.push_back(x);
            }
            comps.push_back(std::move(c));
        }
        return comps;
    }

    /// Component index per vertex, consistent with components().
    [[nodiscard]] std::vector<int> component_ids() const {
        std::vector<int> id(out_.size(), -1);
        int k = 0;
        for (const auto& c : components()) {
            for (int v : c.vertices) id[static_cast<std::size_t>(v)] = k;
            ++k;
        }
        return id;
    }

    /// Integral cycles only (components of kind Cycle), canonical rotation.
    [[nodiscard]] std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        for (auto& c : components()) {
            if (c.kind != ComponentKind::Cycle) continue;
            auto it = std::min_element(c.vertices.begin(), c.vertices.end());
            std::rotate(c.vertices.begin(), it, c.vertices.end());
            out.push_back(std::move(c.vertices));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const RelaxedCover&, const RelaxedCover&) = default;

private:
    std::vector<int> out_;
    std::vector<int> in_;
};

}  // namespace maxatsp
