#pragma once

#include <random>
#include <vector>

#include "maxatsp/instance.hpp"
#include "maxatsp/matching.hpp"
#include "maxatsp/relaxed_cover.hpp"

namespace fixtures {

using maxatsp::Instance;
using maxatsp::Weight;

// Vertices a..i are 0..8.
enum Fig1 { A, B, C, D, E, F, G, H, I };

/// Nine vertices; only (a,b), (b,c), (c,a), (a,c) are positive.
inline Instance fig1(Weight w_ac = 1) {
    std::vector<std::vector<Weight>> rows(9, std::vector<Weight>(9, 0));
    rows[A][B] = 1;
    rows[B][C] = 1;
    rows[C][A] = 1;
    rows[A][C] = w_ac;
    return Instance::from_rows(rows);
}

// Two 4-cycles a,c,i,d and e,f,g,h plus the halves (x_ab, b) and (b, x_bc).
inline maxatsp::RelaxedCover fig1_tilde() {
    std::vector<int> out(9), in(9);
    auto full = [&](int u, int v) {
        out[static_cast<std::size_t>(u)] = v;
        in[static_cast<std::size_t>(v)] = u;
    };
    full(A, C);
    full(C, I);
    full(I, D);
    full(D, A);
    full(E, F);
    full(F, G);
    full(G, H);
    full(H, E);
    in[B] = A;
    out[B] = C;
    return maxatsp::RelaxedCover(out, in);
}

inline Instance uniform(int n, Weight w) {
    std::vector<std::vector<Weight>> rows(static_cast<std::size_t>(n),
                                          std::vector<Weight>(static_cast<std::size_t>(n), w));
    for (int v = 0; v < n; ++v) rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 0;
    return Instance::from_rows(rows);
}

/// Random simple graph on `n` vertices with edge probability `density`,
/// plus a planted perfect matching when `force_perfect` and n is even.
inline maxatsp::UndirectedWeightedGraph random_graph(int n, double density, Weight max_w,
                                                     std::uint64_t seed, bool force_perfect) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<Weight> wdist(0, max_w);
    std::vector<std::vector<char>> has(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    maxatsp::UndirectedWeightedGraph g(n);
    if (force_perfect && n % 2 == 0) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < n; i += 2) {
            const int u = perm[static_cast<std::size_t>(i)];
            const int v = perm[static_cast<std::size_t>(i) + 1];
            has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
            has[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
            g.add_edge(u, v, wdist(rng));
        }
    }
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) continue;
            if (coin(rng) < density) g.add_edge(u, v, wdist(rng));
        }
    }
    return g;
}

}  // namespace fixtures
