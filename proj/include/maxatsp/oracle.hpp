#pragma once

// Exact exponential-time references. Nothing here calls the solver code they
// are used to check.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxatsp/instance.hpp"
#include "maxatsp/matching.hpp"

namespace maxatsp {

/// Optimum value plus one certificate attaining it.
template <typename Certificate>
struct OracleResult {
    Weight value = 0;
    Certificate certificate{};
};

class OracleTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Maximum-weight Hamiltonian cycle by dynamic programming over subsets.
inline OracleResult<Tour> held_karp_max(const Instance& inst) {
    const int n = inst.size();
    if (n > 16) throw OracleTooLarge("held_karp_max supports at most 16 vertices");
    constexpr Weight none = std::numeric_limits<Weight>::min();
    const std::size_t masks = std::size_t{1} << n;
    std::vector<Weight> best(masks * static_cast<std::size_t>(n), none);
    std::vector<std::int8_t> parent(masks * static_cast<std::size_t>(n), -1);
    auto at = [n](std::size_t mask, int v) { return mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(v); };
    best[at(1, 0)] = 0;
    for (std::size_t mask = 1; mask < masks; mask += 2) {
        for (int v = 0; v < n; ++v) {
            const Weight cur = best[at(mask, v)];
            if (cur == none) continue;
            for (int x = 1; x < n; ++x) {
                if (mask & (std::size_t{1} << x)) continue;
                const std::size_t next = mask | (std::size_t{1} << x);
                const Weight cand = cur + inst.weight(v, x);
                if (cand > best[at(next, x)]) {
                    best[at(next, x)] = cand;
                    parent[at(next, x)] = static_cast<std::int8_t>(v);
                }
            }
        }
    }
    const std::size_t full = masks - 1;
    OracleResult<Tour> r{none, {}};
    int last = -1;
    for (int v = 1; v < n; ++v) {
        const Weight cand = best[at(full, v)] + inst.weight(v, 0);
        if (cand > r.value) {
            r.value = cand;
            last = v;
        }
    }
    std::vector<int> order;
    std::size_t mask = full;
    for (int v = last; v != 0;) {
        order.push_back(v);
        const int p = parent[at(mask, v)];
        mask &= ~(std::size_t{1} << v);
        v = p;
    }
    order.push_back(0);
    std::reverse(order.begin(), order.end());
    r.certificate.order = std::move(order);
    return r;
}

/// Maximum-weight derangement by scanning every permutation.
inline OracleResult<std::vector<int>> brute_cycle_cover(const Instance& inst) {
    const int n = inst.size();
    if (n > 8) throw OracleTooLarge("brute_cycle_cover supports at most 8 vertices");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    OracleResult<std::vector<int>> r{std::numeric_limits<Weight>::min(), {}};
    do {
        bool ok = true;
        Weight w = 0;
        for (int v = 0; v < n && ok; ++v) {
            const int s = perm[static_cast<std::size_t>(v)];
            ok = s != v;
            w += ok ? inst.weight(v, s) : 0;
        }
        if (ok && w > r.value) {
            r.value = w;
            r.certificate = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return r;
}

namespace detail {

inline void brute_match(const std::vector<std::vector<std::optional<Weight>>>& adj,
                        std::vector<int>& mate, Weight acc, OracleResult<std::vector<int>>& best,
                        bool& found) {
    const int n = static_cast<int>(adj.size());
    int u = 0;
    while (u < n && mate[static_cast<std::size_t>(u)] != -1) ++u;
    if (u == n) {
        if (!found || acc > best.value) {
            best.value = acc;
            best.certificate = mate;
            found = true;
        }
        return;
    }
    for (int v = u + 1; v < n; ++v) {
        const auto& w = adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
        if (!w || mate[static_cast<std::size_t>(v)] != -1) continue;
        mate[static_cast<std::size_t>(u)] = v;
        mate[static_cast<std::size_t>(v)] = u;
        brute_match(adj, mate, acc + *w, best, found);
        mate[static_cast<std::size_t>(u)] = -1;
        mate[static_cast<std::size_t>(v)] = -1;
    }
}

}  // namespace detail

/// Maximum-weight perfect matching by pairing the lowest unmatched vertex in
/// every possible way. Returns nullopt when no perfect matching exists. The
/// certificate is the mate array.
inline std::optional<OracleResult<std::vector<int>>> brute_perfect_matching(
    const UndirectedWeightedGraph& g) {
    const int n = g.vertex_count();
    if (n > 14) throw OracleTooLarge("brute_perfect_matching supports at most 14 vertices");
    std::vector<std::vector<std::optional<Weight>>> adj(
        static_cast<std::size_t>(n), std::vector<std::optional<Weight>>(static_cast<std::size_t>(n)));
    for (const auto& e : g.edges()) {
        auto& a = adj[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)];
        if (!a || e.weight > *a) a = e.weight;
        adj[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = a;
    }
    std::vector<int> mate(static_cast<std::size_t>(n), -1);
    OracleResult<std::vector<int>> best;
    bool found = false;
    detail::brute_match(adj, mate, 0, best, found);
    if (!found) return std::nullopt;
    return best;
}

namespace detail {

inline std::size_t naive_overlap(const std::string& s, const std::string& t) {
    const std::size_t cap = std::min(s.size(), t.size()) - 1;
    for (std::size_t k = cap; k > 0; --k) {
        if (s.compare(s.size() - k, k, t, 0, k) == 0) return k;
    }
    return 0;
}

}  // namespace detail

/// Shortest common superstring by trying every order of the strings and
/// merging with maximal overlaps. Strings contained in others are removed
/// first. The value is the length.
inline OracleResult<std::string> brute_superstring(const std::vector<std::string>& input) {
    std::vector<std::string> ss;
    for (std::size_t i = 0; i < input.size(); ++i) {
        bool contained = false;
        for (std::size_t j = 0; j < input.size() && !contained; ++j) {
            if (i == j) continue;
            if (input[j].find(input[i]) != std::string::npos &&
                (input[j] != input[i] || j < i)) {
                contained = true;
            }
        }
        if (!contained && !input[i].empty()) ss.push_back(input[i]);
    }
    if (ss.size() > 8) throw OracleTooLarge("brute_superstring supports at most 8 strings");
    OracleResult<std::string> r;
    if (ss.empty()) return r;
    std::vector<std::size_t> perm(ss.size());
    std::iota(perm.begin(), perm.end(), 0);
    bool first = true;
    do {
        std::string merged = ss[perm[0]];
        for (std::size_t i = 1; i < perm.size(); ++i) {
            const auto k = detail::naive_overlap(ss[perm[i - 1]], ss[perm[i]]);
            merged += ss[perm[i]].substr(k);
        }
        if (first || merged.size() < r.certificate.size() ||
            (merged.size() == r.certificate.size() && merged < r.certificate)) {
            r.certificate = merged;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    r.value = static_cast<Weight>(r.certificate.size());
    return r;
}

}  // namespace maxatsp
