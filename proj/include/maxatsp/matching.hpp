#pragma once

// Exact matching primitives: a Hungarian-method assignment solver and a
// weighted blossom algorithm for maximum-weight perfect matching in general
// graphs. Both use integer arithmetic only.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxatsp/instance.hpp"

namespace maxatsp {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    Weight weight = 0;
};

/// Simple undirected graph: no self-loops, at most one edge per unordered pair.
class UndirectedWeightedGraph {
public:
    UndirectedWeightedGraph() = default;
    explicit UndirectedWeightedGraph(int vertices) : n_(vertices) {}

    int add_vertex() { return n_++; }

    /// Returns the edge index.
    int add_edge(int u, int v, Weight w) {
        if (u == v) throw std::invalid_argument("self-loop in undirected graph");
        if (u < 0 || v < 0 || u >= n_ || v >= n_) {
            throw std::out_of_range("edge endpoint out of range");
        }
        edges_.push_back({u, v, w});
        return static_cast<int>(edges_.size()) - 1;
    }

    [[nodiscard]] int vertex_count() const { return n_; }
    [[nodiscard]] const std::vector<WeightedEdge>& edges() const { return edges_; }

    /// Throws if two edges join the same unordered pair.
    void check_simple() const {
        std::vector<std::pair<int, int>> keys;
        keys.reserve(edges_.size());
        for (const auto& e : edges_) keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
            throw std::invalid_argument("parallel edges in undirected graph");
        }
    }

private:
    int n_ = 0;
    std::vector<WeightedEdge> edges_;
};

struct Matching {
    std::vector<int> edge_ids;  // indices into the graph's edge list, ascending
    std::vector<int> mate;      // mate[v] or -1
    Weight weight = 0;

    [[nodiscard]] bool is_perfect() const {
        return std::all_of(mate.begin(), mate.end(), [](int m) { return m >= 0; });
    }
};

class NoPerfectMatching : public std::runtime_error {
public:
    explicit NoPerfectMatching(const std::string& what) : std::runtime_error(what) {}
};

class InfeasibleAssignment : public std::runtime_error {
public:
    explicit InfeasibleAssignment(const std::string& what) : std::runtime_error(what) {}
};

/// Permutation sigma maximizing sum costs[v][sigma[v]], optionally with
/// sigma[v] != v. `costs` is row-major n*n. O(n^3) Hungarian method.
inline std::vector<int> max_weight_assignment(const std::vector<Weight>& costs, int n,
                                              bool forbid_diagonal) {
    if (n < 1 || costs.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("assignment matrix has wrong shape");
    }
    if (forbid_diagonal && n < 2) {
        throw InfeasibleAssignment("no derangement of a single element");
    }
    Weight span = 0;
    for (Weight c : costs) span = std::max(span, c < 0 ? -c : c);
    // Any assignment using a forbidden cell costs more than every admissible one.
    const Weight forbidden = (span + 1) * (static_cast<Weight>(n) + 1) * 2;
    const Weight inf = std::numeric_limits<Weight>::max() / 4;

    auto cost = [&](int i, int j) -> Weight {  // 1-based, minimization form
        if (forbid_diagonal && i == j) return forbidden;
        return -costs[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) +
                      static_cast<std::size_t>(j - 1)];
    };

    const auto sz = static_cast<std::size_t>(n) + 1;
    std::vector<Weight> pu(sz, 0), pv(sz, 0);
    std::vector<int> p(sz, 0), way(sz, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<Weight> minv(sz, inf);
        std::vector<char> used(sz, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            Weight delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                if (used[ju]) continue;
                const Weight cur = cost(i0, j) - pu[static_cast<std::size_t>(i0)] - pv[ju];
                if (cur < minv[ju]) {
                    minv[ju] = cur;
                    way[ju] = j0;
                }
                if (minv[ju] < delta) {
                    delta = minv[ju];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                if (used[ju]) {
                    pu[static_cast<std::size_t>(p[ju])] += delta;
                    pv[ju] -= delta;
                } else {
                    minv[ju] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> sigma(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j) {
        sigma[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    }
    if (forbid_diagonal) {
        for (int v = 0; v < n; ++v) {
            if (sigma[static_cast<std::size_t>(v)] == v) {
                throw InfeasibleAssignment("assignment kept a fixed point");
            }
        }
    }
    return sigma;
}

namespace detail {

// Weighted blossom algorithm (Edmonds; Galil's O(n^3) formulation with
// primal-dual bookkeeping of blossoms). Vertices 0..n-1, blossoms n..2n-1.
// Endpoint p of edge k is endpoint[p], with p = 2k or 2k+1.
class BlossomMatcher {
public:
    BlossomMatcher(int n, const std::vector<WeightedEdge>& edges, bool max_cardinality)
        : n_(n), maxcard_(max_cardinality) {
        const std::size_t m = edges.size();
        eu_.resize(m);
        ev_.resize(m);
        ew_.resize(m);
        Weight maxw = 0;
        for (std::size_t k = 0; k < m; ++k) {
            eu_[k] = edges[k].u;
            ev_[k] = edges[k].v;
            ew_[k] = 2 * edges[k].weight;  // doubled: every dual update stays integral
            maxw = std::max(maxw, ew_[k]);
        }
        endpoint_.resize(2 * m);
        for (std::size_t k = 0; k < m; ++k) {
            endpoint_[2 * k] = eu_[k];
            endpoint_[2 * k + 1] = ev_[k];
        }
        neighbend_.assign(static_cast<std::size_t>(n), {});
        for (std::size_t k = 0; k < m; ++k) {
            neighbend_[static_cast<std::size_t>(eu_[k])].push_back(static_cast<int>(2 * k + 1));
            neighbend_[static_cast<std::size_t>(ev_[k])].push_back(static_cast<int>(2 * k));
        }
        const auto n2 = static_cast<std::size_t>(2 * n);
        mate_.assign(static_cast<std::size_t>(n), -1);
        label_.assign(n2, 0);
        labelend_.assign(n2, -1);
        inblossom_.resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) inblossom_[static_cast<std::size_t>(v)] = v;
        blossomparent_.assign(n2, -1);
        blossomchilds_.assign(n2, {});
        blossombase_.assign(n2, -1);
        for (int v = 0; v < n; ++v) blossombase_[static_cast<std::size_t>(v)] = v;
        blossomendps_.assign(n2, {});
        bestedge_.assign(n2, -1);
        blossombestedges_.assign(n2, {});
        has_bestedges_.assign(n2, 0);
        for (int b = 2 * n - 1; b >= n; --b) unused_.push_back(b);
        dualvar_.assign(n2, 0);
        for (int v = 0; v < n; ++v) dualvar_[static_cast<std::size_t>(v)] = maxw;
        allowedge_.assign(m, 0);
    }

    std::vector<int> run() {
        const auto n2 = static_cast<std::size_t>(2 * n_);
        for (int stage = 0; stage < n_; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (std::size_t b = static_cast<std::size_t>(n_); b < n2; ++b) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = 0;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < n_; ++v) {
                if (mate_[uz(v)] == -1 && label_[uz(inblossom_[uz(v)])] == 0) {
                    assign_label(v, 1, -1);
                }
            }
            bool augmented = false;
            for (;;) {
                while (!queue_.empty() && !augmented) {
                    const int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[uz(v)]) {
                        const int k = p / 2;
                        const int w = endpoint_[uz(p)];
                        if (inblossom_[uz(v)] == inblossom_[uz(w)]) continue;
                        Weight kslack = 0;
                        if (!allowedge_[uz(k)]) {
                            kslack = slack(k);
                            if (kslack <= 0) allowedge_[uz(k)] = 1;
                        }
                        if (allowedge_[uz(k)]) {
                            if (label_[uz(inblossom_[uz(w)])] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[uz(inblossom_[uz(w)])] == 1) {
                                const int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[uz(w)] == 0) {
                                label_[uz(w)] = 2;
                                labelend_[uz(w)] = p ^ 1;
                            }
                        } else if (label_[uz(inblossom_[uz(w)])] == 1) {
                            const int b = inblossom_[uz(v)];
                            if (bestedge_[uz(b)] == -1 || kslack < slack(bestedge_[uz(b)])) {
                                bestedge_[uz(b)] = k;
                            }
                        } else if (label_[uz(w)] == 0) {
                            if (bestedge_[uz(w)] == -1 || kslack < slack(bestedge_[uz(w)])) {
                                bestedge_[uz(w)] = k;
                            }
                        }
                    }
                }
                if (augmented) break;

                int deltatype = -1;
                Weight delta = 0;
                int deltaedge = -1;
                int deltablossom = -1;
                if (!maxcard_) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
                }
                for (int v = 0; v < n_; ++v) {
                    if (label_[uz(inblossom_[uz(v)])] == 0 && bestedge_[uz(v)] != -1) {
                        const Weight d = slack(bestedge_[uz(v)]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[uz(v)];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; ++b) {
                    if (blossomparent_[uz(b)] == -1 && label_[uz(b)] == 1 &&
                        bestedge_[uz(b)] != -1) {
                        const Weight d = slack(bestedge_[uz(b)]) / 2;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[uz(b)];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[uz(b)] >= 0 && blossomparent_[uz(b)] == -1 &&
                        label_[uz(b)] == 2 && (deltatype == -1 || dualvar_[uz(b)] < delta)) {
                        delta = dualvar_[uz(b)];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    // No further progress possible; maximum cardinality reached.
                    deltatype = 1;
                    delta = std::max<Weight>(
                        0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
                }
                for (int v = 0; v < n_; ++v) {
                    const int lb = label_[uz(inblossom_[uz(v)])];
                    if (lb == 1) {
                        dualvar_[uz(v)] -= delta;
                    } else if (lb == 2) {
                        dualvar_[uz(v)] += delta;
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[uz(b)] >= 0 && blossomparent_[uz(b)] == -1) {
                        if (label_[uz(b)] == 1) {
                            dualvar_[uz(b)] += delta;
                        } else if (label_[uz(b)] == 2) {
                            dualvar_[uz(b)] -= delta;
                        }
                    }
                }
                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[uz(deltaedge)] = 1;
                    int i = eu_[uz(deltaedge)];
                    int j = ev_[uz(deltaedge)];
                    if (label_[uz(inblossom_[uz(i)])] == 0) std::swap(i, j);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[uz(deltaedge)] = 1;
                    queue_.push_back(eu_[uz(deltaedge)]);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;
            for (int b = n_; b < 2 * n_; ++b) {
                if (blossomparent_[uz(b)] == -1 && blossombase_[uz(b)] >= 0 &&
                    label_[uz(b)] == 1 && dualvar_[uz(b)] == 0) {
                    expand_blossom(b, true);
                }
            }
        }
        std::vector<int> result(uz(n_), -1);
        for (int v = 0; v < n_; ++v) {
            if (mate_[uz(v)] >= 0) result[uz(v)] = endpoint_[uz(mate_[uz(v)])];
        }
        return result;
    }

private:
    static std::size_t uz(int x) { return static_cast<std::size_t>(x); }

    [[nodiscard]] Weight slack(int k) const {
        return dualvar_[uz(eu_[uz(k)])] + dualvar_[uz(ev_[uz(k)])] - 2 * ew_[uz(k)];
    }

    void blossom_leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[uz(b)]) blossom_leaves(t, out);
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        blossom_leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        const int b = inblossom_[uz(w)];
        label_[uz(w)] = label_[uz(b)] = t;
        labelend_[uz(w)] = labelend_[uz(b)] = p;
        bestedge_[uz(w)] = bestedge_[uz(b)] = -1;
        if (t == 1) {
            blossom_leaves(b, queue_);
        } else if (t == 2) {
            const int base = blossombase_[uz(b)];
            const int mb = mate_[uz(base)];
            assign_label(endpoint_[uz(mb)], 1, mb ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[uz(v)];
            if (label_[uz(b)] & 4) {
                base = blossombase_[uz(b)];
                break;
            }
            path.push_back(b);
            label_[uz(b)] = 5;
            if (labelend_[uz(b)] == -1) {
                v = -1;
            } else {
                v = endpoint_[uz(labelend_[uz(b)])];
                b = inblossom_[uz(v)];
                v = endpoint_[uz(labelend_[uz(b)])];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[uz(b)] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = eu_[uz(k)];
        int w = ev_[uz(k)];
        const int bb = inblossom_[uz(base)];
        int bv = inblossom_[uz(v)];
        int bw = inblossom_[uz(w)];
        const int b = unused_.back();
        unused_.pop_back();
        blossombase_[uz(b)] = base;
        blossomparent_[uz(b)] = -1;
        blossomparent_[uz(bb)] = b;
        std::vector<int> path;
        std::vector<int> endps;
        while (bv != bb) {
            blossomparent_[uz(bv)] = b;
            path.push_back(bv);
            endps.push_back(labelend_[uz(bv)]);
            v = endpoint_[uz(labelend_[uz(bv)])];
            bv = inblossom_[uz(v)];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[uz(bw)] = b;
            path.push_back(bw);
            endps.push_back(labelend_[uz(bw)] ^ 1);
            w = endpoint_[uz(labelend_[uz(bw)])];
            bw = inblossom_[uz(w)];
        }
        blossomchilds_[uz(b)] = path;
        blossomendps_[uz(b)] = endps;
        label_[uz(b)] = 1;
        labelend_[uz(b)] = labelend_[uz(bb)];
        dualvar_[uz(b)] = 0;
        for (int leaf : leaves(b)) {
            if (label_[uz(inblossom_[uz(leaf)])] == 2) queue_.push_back(leaf);
            inblossom_[uz(leaf)] = b;
        }
        std::vector<int> bestedgeto(uz(2 * n_), -1);
        for (int child : path) {
            std::vector<int> nblist;
            if (!has_bestedges_[uz(child)]) {
                for (int leaf : leaves(child)) {
                    for (int p : neighbend_[uz(leaf)]) nblist.push_back(p / 2);
                }
            } else {
                nblist = blossombestedges_[uz(child)];
            }
            for (int kk : nblist) {
                int i = eu_[uz(kk)];
                int j = ev_[uz(kk)];
                if (inblossom_[uz(j)] == b) std::swap(i, j);
                const int bj = inblossom_[uz(j)];
                if (bj != b && label_[uz(bj)] == 1 &&
                    (bestedgeto[uz(bj)] == -1 || slack(kk) < slack(bestedgeto[uz(bj)]))) {
                    bestedgeto[uz(bj)] = kk;
                }
            }
            blossombestedges_[uz(child)].clear();
            has_bestedges_[uz(child)] = 0;
            bestedge_[uz(child)] = -1;
        }
        std::vector<int> best;
        for (int kk : bestedgeto) {
            if (kk != -1) best.push_back(kk);
        }
        blossombestedges_[uz(b)] = best;
        has_bestedges_[uz(b)] = 1;
        bestedge_[uz(b)] = -1;
        for (int kk : best) {
            if (bestedge_[uz(b)] == -1 || slack(kk) < slack(bestedge_[uz(b)])) {
                bestedge_[uz(b)] = kk;
            }
        }
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[uz(b)]) {
            blossomparent_[uz(s)] = -1;
            if (s < n_) {
                inblossom_[uz(s)] = s;
            } else if (endstage && dualvar_[uz(s)] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int leaf : leaves(s)) inblossom_[uz(leaf)] = s;
            }
        }
        if (!endstage && label_[uz(b)] == 2) {
            const auto& childs = blossomchilds_[uz(b)];
            const auto& endps = blossomendps_[uz(b)];
            const int len = static_cast<int>(childs.size());
            auto at = [len](const std::vector<int>& vec, int idx) {
                return vec[uz(((idx % len) + len) % len)];
            };
            const int entrychild = inblossom_[uz(endpoint_[uz(labelend_[uz(b)] ^ 1)])];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) -
                                     childs.begin());
            int jstep = 0;
            int endptrick = 0;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[uz(b)];
            while (j != 0) {
                label_[uz(endpoint_[uz(p ^ 1)])] = 0;
                label_[uz(endpoint_[uz(at(endps, j - endptrick) ^ endptrick ^ 1)])] = 0;
                assign_label(endpoint_[uz(p ^ 1)], 2, p);
                allowedge_[uz(at(endps, j - endptrick) / 2)] = 1;
                j += jstep;
                p = at(endps, j - endptrick) ^ endptrick;
                allowedge_[uz(p / 2)] = 1;
                j += jstep;
            }
            int bv = at(childs, j);
            label_[uz(endpoint_[uz(p ^ 1)])] = label_[uz(bv)] = 2;
            labelend_[uz(endpoint_[uz(p ^ 1)])] = labelend_[uz(bv)] = p;
            bestedge_[uz(bv)] = -1;
            j += jstep;
            while (at(childs, j) != entrychild) {
                bv = at(childs, j);
                if (label_[uz(bv)] == 1) {
                    j += jstep;
                    continue;
                }
                int reached = -1;
                for (int leaf : leaves(bv)) {
                    if (label_[uz(leaf)] != 0) {
                        reached = leaf;
                        break;
                    }
                }
                if (reached != -1) {
                    label_[uz(reached)] = 0;
                    label_[uz(endpoint_[uz(mate_[uz(blossombase_[uz(bv)])])])] = 0;
                    assign_label(reached, 2, labelend_[uz(reached)]);
                }
                j += jstep;
            }
        }
        label_[uz(b)] = labelend_[uz(b)] = -1;
        blossomchilds_[uz(b)].clear();
        blossomendps_[uz(b)].clear();
        blossombase_[uz(b)] = -1;
        blossombestedges_[uz(b)].clear();
        has_bestedges_[uz(b)] = 0;
        bestedge_[uz(b)] = -1;
        unused_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[uz(t)] != b) t = blossomparent_[uz(t)];
        if (t >= n_) augment_blossom(t, v);
        auto& childs = blossomchilds_[uz(b)];
        auto& endps = blossomendps_[uz(b)];
        const int len = static_cast<int>(childs.size());
        auto at = [len](const std::vector<int>& vec, int idx) {
            return vec[uz(((idx % len) + len) % len)];
        };
        const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep = 0;
        int endptrick = 0;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = at(childs, j);
            const int p = at(endps, j - endptrick) ^ endptrick;
            if (t >= n_) augment_blossom(t, endpoint_[uz(p)]);
            j += jstep;
            t = at(childs, j);
            if (t >= n_) augment_blossom(t, endpoint_[uz(p ^ 1)]);
            mate_[uz(endpoint_[uz(p)])] = p ^ 1;
            mate_[uz(endpoint_[uz(p ^ 1)])] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[uz(b)] = blossombase_[uz(childs[0])];
    }

    void augment_matching(int k) {
        const int v = eu_[uz(k)];
        const int w = ev_[uz(k)];
        const std::pair<int, int> sides[2] = {{v, 2 * k + 1}, {w, 2 * k}};
        for (auto [s, p] : sides) {
            for (;;) {
                const int bs = inblossom_[uz(s)];
                if (bs >= n_) augment_blossom(bs, s);
                mate_[uz(s)] = p;
                if (labelend_[uz(bs)] == -1) break;
                const int t = endpoint_[uz(labelend_[uz(bs)])];
                const int bt = inblossom_[uz(t)];
                s = endpoint_[uz(labelend_[uz(bt)])];
                const int j = endpoint_[uz(labelend_[uz(bt)] ^ 1)];
                if (bt >= n_) augment_blossom(bt, j);
                mate_[uz(j)] = labelend_[uz(bt)];
                p = labelend_[uz(bt)] ^ 1;
            }
        }
    }

    int n_;
    bool maxcard_;
    std::vector<int> eu_, ev_;
    std::vector<Weight> ew_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<char> has_bestedges_;
    std::vector<int> unused_;
    std::vector<Weight> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

inline Matching matching_from_mates(const UndirectedWeightedGraph& g, const std::vector<int>& mate) {
    Matching m;
    m.mate = mate;
    const auto& edges = g.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        if (mate[static_cast<std::size_t>(e.u)] == e.v && mate[static_cast<std::size_t>(e.v)] == e.u) {
            // Simple graph: exactly one edge per matched pair.
            m.edge_ids.push_back(static_cast<int>(k));
            m.weight += e.weight;
        }
    }
    return m;
}

}  // namespace detail

/// Maximum-weight matching among maximum-cardinality matchings.
inline Matching max_weight_max_cardinality_matching(const UndirectedWeightedGraph& g) {
    g.check_simple();
    if (g.vertex_count() == 0) return Matching{};
    detail::BlossomMatcher bm(g.vertex_count(), g.edges(), true);
    return detail::matching_from_mates(g, bm.run());
}

/// Maximum-weight perfect matching; throws NoPerfectMatching when none exists.
inline Matching max_weight_perfect_matching(const UndirectedWeightedGraph& g) {
    if (g.vertex_count() % 2 != 0) {
        throw NoPerfectMatching("odd vertex count " + std::to_string(g.vertex_count()));
    }
    Matching m = max_weight_max_cardinality_matching(g);
    if (!m.is_perfect()) {
        const auto unmatched = std::count(m.mate.begin(), m.mate.end(), -1);
        throw NoPerfectMatching("graph has no perfect matching (" + std::to_string(unmatched) +
                                " vertices left exposed)");
    }
    return m;
}

}  // namespace maxatsp
