#pragma once

// Subcommand bodies behind the maxatsp executable. Argument parsing lives
// in tools/; everything here takes a filled RunConfig and writes to streams.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "maxatsp/oracle.hpp"
#include "maxatsp/superstring.hpp"
#include "maxatsp/tour_assembly.hpp"

namespace maxatsp::cli {

enum class Command { Solve, Gen, Bench, Superstring, Verify };

enum ExitCode : int { kOk = 0, kUsage = 1, kNotCertified = 2 };

struct RunConfig {
    Command command = Command::Solve;
    std::string input;
    std::string output;
    int n = 10;
    Weight max_w = 100;
    std::uint64_t seed = 1;
    int seeds = 100;
    std::optional<bool> verify;  // unset: on for n <= 13 where it applies
    std::string dot;
    int threads = 1;
};

inline constexpr int kVerifyLimit = 13;

namespace detail {

inline std::string read_file(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

/// Writes to the file when `path` is set, else to `fallback`.
inline void emit(const std::string& path, std::ostream& fallback, const std::string& text) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur)) {
        if (!cur.empty() && cur.back() == '\r') cur.pop_back();
        if (!cur.empty()) lines.push_back(cur);
    }
    return lines;
}

inline int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto inst = load_instance(read_file(cfg.input));
    SolveOptions opt;
    opt.verify = cfg.verify.value_or(false);
    opt.dot = !cfg.dot.empty();
    const auto r = solve(inst, opt);
    if (opt.verify && inst.size() > kVerifyLimit) err << "verify skipped: n > " << kVerifyLimit << "\n";
    emit(cfg.output, out, to_json(r, inst).dump(2) + "\n");
    if (opt.dot) {
        std::string all;
        for (const auto& d : r.dot) all += d;
        if (all.empty()) all = "digraph none {\n}\n";
        emit(cfg.dot, out, all);
    }
    if (!r.certified) {
        err << "non-certified fallback; instance:\n" << r.fallback_instance;
        return kNotCertified;
    }
    return kOk;
}

inline int run_gen(const RunConfig& cfg, std::ostream& out) {
    emit(cfg.output, out, render_instance(random_instance(cfg.n, cfg.max_w, cfg.seed)));
    return kOk;
}

struct BenchRow {
    std::uint64_t seed = 0;
    SolveReport report;
    double millis = 0;
};

inline int run_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const bool verify = cfg.verify.value_or(cfg.n <= kVerifyLimit);
    std::vector<BenchRow> rows(static_cast<std::size_t>(std::max(cfg.seeds, 0)));
    auto work = [&](std::size_t first, std::size_t step) {
        for (std::size_t i = first; i < rows.size(); i += step) {
            const std::uint64_t seed = cfg.seed + i;
            const auto inst = random_instance(cfg.n, cfg.max_w, seed);
            SolveOptions opt;
            opt.verify = verify;
            const auto t0 = std::chrono::steady_clock::now();
            rows[i].report = solve(inst, opt);
            rows[i].millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            rows[i].seed = seed;
        }
    };
    const auto threads = static_cast<std::size_t>(std::max(cfg.threads, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work, t, threads);
    work(0, threads);
    for (auto& th : pool) th.join();

    std::ostringstream csv;
    csv << "# maxatsp bench schema " << kReportSchema << "\n";
    csv << "seed,n,branch,ratio,certified,millis\n";
    int noncertified = 0;
    int below = 0;
    for (const auto& row : rows) {
        const auto& r = row.report;
        csv << row.seed << ',' << cfg.n << ',' << to_string(r.branch) << ',';
        if (r.opt) csv << std::setprecision(6) << std::fixed << r.ratio();
        csv << ',' << (r.certified ? "true" : "false") << ',' << std::setprecision(3) << std::fixed << row.millis
            << '\n';
        noncertified += r.certified ? 0 : 1;
        below += r.opt && !r.meets_three_quarters() ? 1 : 0;
    }
    emit(cfg.output, out, csv.str());
    if (noncertified) err << noncertified << " non-certified run(s)\n";
    if (below) err << below << " run(s) below 3/4 of the optimum\n";
    return noncertified || below ? kNotCertified : kOk;
}

inline int run_superstring(const RunConfig& cfg, std::ostream& out) {
    const auto strings = split_lines(read_file(cfg.input));
    const auto r = shortest_superstring(strings);
    auto stats = superstring_stats(r);
    const bool verify = cfg.verify.value_or(false);
    bool valid = true;
    for (const auto& s : strings) valid = valid && r.text.find(s) != std::string::npos;
    stats["valid"] = valid;
    if (verify && r.strings.size() <= 8) {
        const auto brute = brute_superstring(strings);
        stats["optimum_length"] = brute.certificate.size();
        stats["ratio"] = brute.certificate.empty()
                             ? 1.0
                             : static_cast<double>(r.text.size()) / static_cast<double>(brute.certificate.size());
    }
    emit(cfg.output, out, r.text + "\n" + stats.dump() + "\n");
    return valid ? kOk : kNotCertified;
}

/// Oracle cross-checks over `seeds` random instances of size `n` (capped so
/// every oracle stays exact).
inline int run_verify(const RunConfig& cfg, std::ostream& out) {
    const int n = std::min(cfg.n, 8);
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["n"] = n;
    int runs = 0;
    int cover_vs_brute = 0, cover_bound = 0, relaxed = 0, relaxed_bound = 0, ratio = 0, assignment = 0;
    for (int i = 0; i < cfg.seeds; ++i) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
        const auto inst = random_instance(n, cfg.max_w, seed);
        const auto opt = held_karp_max(inst).value;
        const auto cmax = max_cycle_cover(inst);
        cover_vs_brute += cmax.weight(inst) == brute_cycle_cover(inst).value ? 0 : 1;
        cover_bound += cmax.weight(inst) >= opt ? 0 : 1;
        const auto sigma = max_weight_assignment(inst.weights(), n, true);
        Weight assigned = 0;
        for (int v = 0; v < n; ++v) assigned += inst.weight(v, sigma[static_cast<std::size_t>(v)]);
        assignment += assigned == brute_cycle_cover(inst).value ? 0 : 1;
        const auto r = solve(inst, SolveOptions{.verify = true});
        if (r.w_c1) {
            relaxed += r.c1_valid && r.c2_valid ? 0 : 1;
            relaxed_bound += *r.w_c1 >= HalfWeight::whole(opt) && (!r.w_c2 || *r.w_c2 >= HalfWeight::whole(opt)) ? 0 : 1;
        }
        ratio += r.meets_three_quarters() ? 0 : 1;
        ++runs;
    }
    j["runs"] = runs;
    j["violations"] = {{"cycle_cover_vs_brute", cover_vs_brute},
                       {"assignment_vs_brute", assignment},
                       {"cycle_cover_below_opt", cover_bound},
                       {"relaxed_constraints", relaxed},
                       {"relaxed_cover_below_opt", relaxed_bound},
                       {"tour_below_three_quarters", ratio}};
    const bool ok = cover_vs_brute + cover_bound + relaxed + relaxed_bound + ratio + assignment == 0;
    j["ok"] = ok;
    emit(cfg.output, out, j.dump(2) + "\n");
    return ok ? kOk : kNotCertified;
}

}  // namespace detail

/// Runs one subcommand. I/O and instance errors map to exit code 1.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        switch (cfg.command) {
            case Command::Solve: return detail::run_solve(cfg, out, err);
            case Command::Gen: return detail::run_gen(cfg, out);
            case Command::Bench: return detail::run_bench(cfg, out, err);
            case Command::Superstring: return detail::run_superstring(cfg, out);
            case Command::Verify: return detail::run_verify(cfg, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace maxatsp::cli
