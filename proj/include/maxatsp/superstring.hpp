#pragma once

// Shortest common superstring through the overlap graph: strings are
// vertices, overlaps are weights, and a heavy tour opened at its lightest
// edge gives the merge order.

#include <algorithm>
#include <cstdint>
#include <ratio>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxatsp/instance.hpp"
#include "maxatsp/tour_assembly.hpp"

namespace maxatsp {

/// Longest proper suffix of s that is a prefix of t, below min(|s|, |t|).
inline std::size_t overlap(const std::string& s, const std::string& t) {
    if (s.empty() || t.empty()) return 0;
    // Prefix function of t, then run s through the automaton.
    std::vector<std::size_t> pi(t.size(), 0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        std::size_t k = pi[i - 1];
        while (k > 0 && t[i] != t[k]) k = pi[k - 1];
        if (t[i] == t[k]) ++k;
        pi[i] = k;
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        while (k > 0 && (k == t.size() || s[i] != t[k])) k = pi[k - 1];
        if (s[i] == t[k]) ++k;
    }
    const std::size_t cap = std::min(s.size(), t.size()) - 1;
    while (k > cap) k = pi[k - 1];
    return k;
}

/// Drops empty strings, duplicates, and strings contained in others.
/// Survivors keep their input order.
inline std::vector<std::string> substring_free(const std::vector<std::string>& input) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (input[i].empty()) continue;
        bool contained = false;
        for (std::size_t j = 0; j < input.size() && !contained; ++j) {
            if (i == j) continue;
            const bool inside = input[j].size() > input[i].size()
                                    ? input[j].find(input[i]) != std::string::npos
                                    : input[j] == input[i] && j < i;
            contained = inside;
        }
        if (!contained) out.push_back(input[i]);
    }
    return out;
}

inline Instance build_overlap_instance(const std::vector<std::string>& ss) {
    const int n = static_cast<int>(ss.size());
    std::vector<std::vector<Weight>> w(static_cast<std::size_t>(n), std::vector<Weight>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    static_cast<Weight>(overlap(ss[static_cast<std::size_t>(i)], ss[static_cast<std::size_t>(j)]));
            }
        }
    }
    return Instance::from_rows(w);
}

struct SuperstringResult {
    std::string text;
    std::vector<std::string> strings;  // after preprocessing
    std::size_t total_length = 0;      // Σ|s_i| after preprocessing
    Weight tour_compression = 0;
    Weight dropped_overlap = 0;        // overlap of the edge the tour was opened at
    std::vector<int> order;            // merge order, indices into `strings`
};

/// Opens the tour at its minimum-overlap edge and merges along the
/// resulting path. Ties go to the closing edge, then the earliest in tour order.
inline SuperstringResult superstring_from_tour(const std::vector<std::string>& ss, const Tour& t) {
    SuperstringResult r;
    r.strings = ss;
    for (const auto& s : ss) r.total_length += s.size();
    const std::size_t n = t.order.size();
    if (n == 0) return r;
    std::size_t cut = 0;
    std::size_t best = std::string::npos;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = (j + n - 1) % n;
        const auto o = overlap(ss[static_cast<std::size_t>(t.order[i])], ss[static_cast<std::size_t>(t.order[(i + 1) % n])]);
        r.tour_compression += n > 1 ? static_cast<Weight>(o) : 0;
        if (o < best) {
            best = o;
            cut = i;
        }
    }
    r.dropped_overlap = n > 1 ? static_cast<Weight>(best) : 0;
    for (std::size_t i = 0; i < n; ++i) r.order.push_back(t.order[(cut + 1 + i) % n]);
    r.text = ss[static_cast<std::size_t>(r.order[0])];
    for (std::size_t i = 1; i < n; ++i) {
        const auto& prev = ss[static_cast<std::size_t>(r.order[i - 1])];
        const auto& next = ss[static_cast<std::size_t>(r.order[i])];
        r.text += next.substr(overlap(prev, next));
    }
    return r;
}

/// Full pipeline: preprocess, solve the overlap instance, open the tour.
inline SuperstringResult shortest_superstring(const std::vector<std::string>& input, const SolveOptions& opt = {}) {
    const auto ss = substring_free(input);
    if (ss.size() < 2) {
        Tour t;
        if (!ss.empty()) t.order = {0};
        return superstring_from_tour(ss, t);
    }
    const auto report = solve(build_overlap_instance(ss), opt);
    return superstring_from_tour(ss, report.tour);
}

/// 2 + 11(1 - α)/(9 - 2α), exact.
template <typename Alpha>
using SuperstringFactor = std::ratio_add<
    std::ratio<2>, std::ratio_divide<std::ratio_multiply<std::ratio<11>, std::ratio_subtract<std::ratio<1>, Alpha>>,
                                     std::ratio_subtract<std::ratio<9>, std::ratio_multiply<std::ratio<2>, Alpha>>>>;

using ThreeQuarterFactor = SuperstringFactor<std::ratio<3, 4>>;

inline nlohmann::json superstring_stats(const SuperstringResult& r) {
    return {{"schema", kReportSchema},
            {"strings", r.strings.size()},
            {"total_length", r.total_length},
            {"length", r.text.size()},
            {"tour_compression", r.tour_compression},
            {"dropped_overlap", r.dropped_overlap},
            {"compression", static_cast<Weight>(r.total_length) - static_cast<Weight>(r.text.size())},
            {"order", r.order},
            {"factor_num", ThreeQuarterFactor::num},
            {"factor_den", ThreeQuarterFactor::den}};
}

}  // namespace maxatsp
