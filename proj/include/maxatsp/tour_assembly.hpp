#pragma once

// Heaviest color class to tour, and the full solve pipeline.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxatsp/alternating.hpp"
#include "maxatsp/coloring.hpp"
#include "maxatsp/cycle_cover.hpp"
#include "maxatsp/gadget.hpp"
#include "maxatsp/matching.hpp"
#include "maxatsp/multigraph.hpp"
#include "maxatsp/oracle.hpp"

namespace maxatsp {

/// Vertex-disjoint directed paths; singletons allowed.
struct PathSet {
    std::vector<VertexPath> paths;
    Weight weight = 0;
};

/// Paths formed by the copies of color k, every vertex included.
inline PathSet class_paths(const Instance& inst, const LayeredMultigraph& g, const ColorAssignment& a, int k) {
    const int n = g.vertex_count();
    std::vector<int> succ(static_cast<std::size_t>(n), -1);
    std::vector<int> pred(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < g.size(); ++i) {
        if (a[i] != k) continue;
        const auto& e = g[i];
        if (succ[static_cast<std::size_t>(e.from)] != -1 || pred[static_cast<std::size_t>(e.to)] != -1) {
            throw std::invalid_argument("color class " + std::to_string(k) + " is not a set of disjoint paths");
        }
        succ[static_cast<std::size_t>(e.from)] = e.to;
        pred[static_cast<std::size_t>(e.to)] = e.from;
    }
    PathSet p;
    int covered = 0;
    for (int v = 0; v < n; ++v) {
        if (pred[static_cast<std::size_t>(v)] != -1) continue;
        VertexPath path{v};
        for (int u = succ[static_cast<std::size_t>(v)]; u != -1; u = succ[static_cast<std::size_t>(u)]) {
            path.push_back(u);
        }
        covered += static_cast<int>(path.size());
        p.weight += path_weight(inst, path);
        p.paths.push_back(std::move(path));
    }
    if (covered != n) throw std::invalid_argument("color class " + std::to_string(k) + " contains a cycle");
    return p;
}

/// The heaviest class of a good coloring; ties go to the lowest color.
inline PathSet best_class(const Instance& inst, const LayeredMultigraph& g, const ColorAssignment& a, int colors,
                          int* chosen = nullptr) {
    PathSet best;
    int best_k = 0;
    for (int k = 1; k <= colors; ++k) {
        auto p = class_paths(inst, g, a, k);
        if (best_k == 0 || p.weight > best.weight) {
            best = std::move(p);
            best_k = k;
        }
    }
    if (chosen) *chosen = best_k;
    return best;
}

/// Joins the paths greedily: the heaviest end-to-start connection first,
/// ties by smaller end vertex then smaller start vertex; then closes the cycle.
inline Tour patch_to_tour(const Instance& inst, const PathSet& p) {
    const int n = inst.size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<VertexPath> paths;
    for (const auto& path : p.paths) {
        for (int v : path) {
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
                throw std::invalid_argument("path set is not vertex-disjoint");
            }
            seen[static_cast<std::size_t>(v)] = 1;
        }
        if (!path.empty()) paths.push_back(path);
    }
    for (int v = 0; v < n; ++v) {
        if (!seen[static_cast<std::size_t>(v)]) paths.push_back({v});
    }
    while (paths.size() > 1) {
        std::size_t bi = 0, bj = 1;
        Weight bw = -1;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            for (std::size_t j = 0; j < paths.size(); ++j) {
                if (i == j) continue;
                const int end = paths[i].back();
                const int start = paths[j].front();
                const Weight w = inst.weight(end, start);
                const int bend = paths[bi].back();
                const int bstart = paths[bj].front();
                if (w > bw || (w == bw && (end < bend || (end == bend && start < bstart)))) {
                    bw = w;
                    bi = i;
                    bj = j;
                }
            }
        }
        paths[bi].insert(paths[bi].end(), paths[bj].begin(), paths[bj].end());
        paths.erase(paths.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return Tour{paths.empty() ? VertexPath{} : paths.front()};
}

// ---------------------------------------------------------------------------
// Covers

inline RelaxedCover first_relaxed_cover(const Instance& inst, const CycleCover& cmax) {
    const auto g = build_g1_graph(inst, cmax);
    return necessity_filter(inst, extract_relaxed_cover(g, max_weight_perfect_matching(g.graph())), cmax).cover;
}

inline RelaxedCover second_relaxed_cover(const Instance& inst, const CycleCover& cmax, const RelaxedCover& c1) {
    const auto g = build_g2_graph(inst, cmax, c1);
    return necessity_filter(inst, extract_relaxed_cover(g, max_weight_perfect_matching(g.graph())), cmax, &c1)
        .cover;
}

/// A whole cycle of the cover through every vertex, if there is one.
inline std::optional<Tour> hamiltonian_cycle_of(const RelaxedCover& c) {
    for (const auto& comp : c.components()) {
        if (comp.kind == ComponentKind::Cycle && static_cast<int>(comp.vertices.size()) == c.size()) {
            return Tour{comp.vertices};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Solve

enum class Branch { Exact, DropLightest, FirstCover, SecondCover };

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::Exact: return "exact";
        case Branch::DropLightest: return "drop-lightest";
        case Branch::FirstCover: return "g1";
        case Branch::SecondCover: return "g2";
    }
    return "?";
}

struct SolveOptions {
    int exact_threshold = 3;   // n at or below is solved exactly
    bool verify = false;       // compute OPT with Held-Karp
    int verify_limit = 13;
    bool dot = false;
    std::uint64_t budget = kDefaultColoringBudget;
};

struct Candidate {
    std::string name;
    Tour tour;
    Weight weight = 0;
    bool certifying = false;
};

struct SolveReport {
    Branch branch = Branch::Exact;
    Weight w_cmax = 0;
    std::optional<HalfWeight> w_c1;
    std::optional<HalfWeight> w_c2;
    bool c1_valid = true;
    bool c2_valid = true;
    int problematic = 0;
    std::string route;            // coloring route, empty when no coloring ran
    int palette = 0;
    std::vector<Weight> class_weights;  // colors 1..palette
    int chosen_class = 0;
    bool coloring_ok = false;
    bool proven_uncolorable = false;
    std::vector<Candidate> candidates;
    Tour tour;
    Weight tour_weight = 0;
    std::optional<Weight> opt;
    bool certified = false;
    std::string certificate;      // which argument backs the ¾ bound
    HalfWeight upper_bound;       // least proven upper bound on OPT
    bool bound_holds = false;     // 4 w(tour) >= 3 upper_bound
    std::vector<std::string> anomalies;
    std::vector<std::string> dot;
    std::string fallback_instance;

    [[nodiscard]] double ratio() const {
        if (!opt) return 0.0;
        if (*opt == 0) return 1.0;
        return static_cast<double>(tour_weight) / static_cast<double>(*opt);
    }
    /// Exact check of w(tour) >= ¾ OPT; requires opt.
    [[nodiscard]] bool meets_three_quarters() const { return opt && 4 * tour_weight >= 3 * *opt; }
};

namespace detail {

inline void add_candidate(SolveReport& r, const Instance& inst, std::string name, Tour t, bool certifying) {
    const Weight w = tour_weight(inst, t);
    r.candidates.push_back({std::move(name), std::move(t), w, certifying});
}

inline void take_coloring(SolveReport& r, const Instance& inst, const ColoringOutcome& o, const SolveOptions& opt) {
    r.route = to_string(o.route);
    r.palette = o.palette;
    r.coloring_ok = o.ok() && o.report.uncolored == 0;
    r.proven_uncolorable = r.proven_uncolorable || o.proven_uncolorable;
    for (const auto& s : o.anomalies) r.anomalies.push_back(s);
    if (opt.dot) {
        r.dot = o.snapshots;
        r.dot.push_back(coloring_to_dot(o.graph, o.colors, "final"));
    }
    if (!r.coloring_ok) return;
    const auto w = class_weights(inst, o.graph, o.colors, o.palette);
    r.class_weights.assign(w.begin() + 1, w.end());
    const auto p = best_class(inst, o.graph, o.colors, o.palette, &r.chosen_class);
    add_candidate(r, inst, "best-class", patch_to_tour(inst, p), true);
}

inline void run_second_cover(SolveReport& r, const Instance& inst, const CycleCover& cmax, const RelaxedCover& c1,
                             const SolveOptions& opt) {
    const auto c2 = second_relaxed_cover(inst, cmax, c1);
    r.w_c2 = c2.weight(inst);
    r.c2_valid = verify_relaxed_constraints(inst, c2, cmax, &c1).ok();
    if (auto h = hamiltonian_cycle_of(c2)) add_candidate(r, inst, "second-cover-cycle", *h, true);
    ColoringOptions co;
    co.snapshots = opt.dot;
    co.budget = opt.budget;
    take_coloring(r, inst, color_g2(cmax, c1, c2, co), opt);
}

}  // namespace detail

inline SolveReport solve(const Instance& inst, const SolveOptions& opt = {}) {
    const int n = inst.size();
    SolveReport r;
    if (n <= opt.exact_threshold) {
        r.branch = Branch::Exact;
        detail::add_candidate(r, inst, "exact", held_karp_max(inst).certificate, true);
    } else {
        const auto cmax = max_cycle_cover(inst);
        r.w_cmax = cmax.weight(inst);
        r.upper_bound = HalfWeight::whole(r.w_cmax);
        PathSet kept;
        kept.paths = drop_lightest_and_collect_paths(inst, cmax);
        for (const auto& p : kept.paths) kept.weight += path_weight(inst, p);
        const bool hard = has_hard_cycle(inst, cmax);
        detail::add_candidate(r, inst, "drop-lightest", patch_to_tour(inst, kept), !hard);
        if (!hard) {
            r.branch = Branch::DropLightest;
        } else {
            const auto c1 = first_relaxed_cover(inst, cmax);
            r.w_c1 = c1.weight(inst);
            r.c1_valid = verify_relaxed_constraints(inst, c1, cmax, nullptr).ok();
            if (auto h = hamiltonian_cycle_of(c1)) detail::add_candidate(r, inst, "first-cover-cycle", *h, true);
            r.problematic = static_cast<int>(find_problematic_cycles(c1, cmax).size());
            if (r.problematic == 0) {
                r.branch = Branch::FirstCover;
                ColoringOptions co;
                co.snapshots = opt.dot;
                co.budget = opt.budget;
                detail::take_coloring(r, inst, color_g1(cmax, c1, co), opt);
                if (!r.coloring_ok) {
                    r.anomalies.push_back("G1 coloring failed; second cover tried");
                    r.branch = Branch::SecondCover;
                    detail::run_second_cover(r, inst, cmax, c1, opt);
                }
            } else {
                r.branch = Branch::SecondCover;
                detail::run_second_cover(r, inst, cmax, c1, opt);
            }
            // Every cover here weighs at least OPT.
            r.upper_bound = std::min(r.upper_bound, *r.w_c1);
            if (r.w_c2) r.upper_bound = std::min(r.upper_bound, *r.w_c2);
        }
    }

    const Candidate* best = &r.candidates.front();
    for (const auto& c : r.candidates) {
        if (c.weight > best->weight) best = &c;
    }
    r.tour = best->tour;
    r.tour_weight = best->weight;
    // The algorithm's own argument is named in preference to a cover cycle.
    for (const char* name : {"exact", "drop-lightest", "best-class", "first-cover-cycle", "second-cover-cycle"}) {
        for (const auto& c : r.candidates) {
            if (c.certifying && c.name == name && r.certificate.empty()) r.certificate = c.name;
        }
    }
    r.certified = !r.certificate.empty();
    r.bound_holds = r.branch == Branch::Exact || 4 * HalfWeight::whole(r.tour_weight).doubled >= 3 * r.upper_bound.doubled;
    if (!r.certified) {
        r.anomalies.push_back("non-certified fallback: best of " + std::to_string(r.candidates.size()) +
                              " candidate tours");
        r.fallback_instance = render_instance(inst);
    }
    if (opt.verify && n <= opt.verify_limit) r.opt = held_karp_max(inst).value;
    return r;
}

// ---------------------------------------------------------------------------
// JSON

inline constexpr int kReportSchema = 1;

namespace detail {

inline nlohmann::json json_weight(Weight w, int decimals) {
    if (decimals == 0) return w;
    return std::stod(format_weight(w, decimals));
}

inline nlohmann::json json_weight(HalfWeight w, int decimals) {
    if (decimals == 0 && w.is_whole()) return w.doubled / 2;
    return std::stod(format_weight(w, decimals));
}

}  // namespace detail

inline nlohmann::json to_json(const SolveReport& r, const Instance& inst) {
    using nlohmann::json;
    const int d = inst.decimals();
    json j;
    j["schema"] = kReportSchema;
    j["n"] = inst.size();
    j["branch"] = to_string(r.branch);
    j["w_cmax"] = detail::json_weight(r.w_cmax, d);
    j["w_c1"] = r.w_c1 ? detail::json_weight(*r.w_c1, d) : json(nullptr);
    j["w_c2"] = r.w_c2 ? detail::json_weight(*r.w_c2, d) : json(nullptr);
    j["c1_valid"] = r.c1_valid;
    j["c2_valid"] = r.c2_valid;
    j["problematic_cycles"] = r.problematic;
    j["coloring_route"] = r.route.empty() ? json(nullptr) : json(r.route);
    j["coloring_ok"] = r.coloring_ok;
    json cw = json::array();
    for (Weight w : r.class_weights) cw.push_back(detail::json_weight(w, d));
    j["class_weights"] = cw;
    j["chosen_class"] = r.chosen_class;
    json cands = json::array();
    for (const auto& c : r.candidates) {
        cands.push_back({{"name", c.name}, {"weight", detail::json_weight(c.weight, d)}, {"certifying", c.certifying}});
    }
    j["candidates"] = cands;
    j["tour"] = r.tour.order;
    j["tour_weight"] = detail::json_weight(r.tour_weight, d);
    j["opt"] = r.opt ? detail::json_weight(*r.opt, d) : json(nullptr);
    j["ratio"] = r.opt ? json(r.ratio()) : json(nullptr);
    j["certified"] = r.certified;
    j["certificate"] = r.certificate.empty() ? json(nullptr) : json(r.certificate);
    j["upper_bound"] = detail::json_weight(r.upper_bound, d);
    j["bound_holds"] = r.bound_holds;
    j["proven_uncolorable"] = r.proven_uncolorable;
    j["anomalies"] = r.anomalies;
    if (!r.fallback_instance.empty()) j["fallback_instance"] = r.fallback_instance;
    return j;
}

}  // namespace maxatsp
