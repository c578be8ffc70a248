#include <CLI11.hpp>

#include "maxatsp/cli.hpp"

using maxatsp::cli::Command;
using maxatsp::cli::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"Max ATSP 3/4-approximation, oracles and superstrings"};
    app.require_subcommand(1);
    RunConfig cfg;
    bool verify = false;
    bool no_verify = false;

    auto* solve = app.add_subcommand("solve", "solve an instance file and print the JSON report");
    solve->add_option("--input", cfg.input, "instance file ('-' for stdin)")->required();
    solve->add_option("--output", cfg.output, "report file (default stdout)");
    solve->add_flag("--verify", verify, "also compute the optimum with Held-Karp");
    solve->add_option("--dot", cfg.dot, "write colorings as Graphviz DOT to this file");

    auto* gen = app.add_subcommand("gen", "write a random instance");
    gen->add_option("--n", cfg.n, "vertices")->check(CLI::Range(2, 100000));
    gen->add_option("--max-w", cfg.max_w, "largest weight")->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", cfg.seed, "random seed");
    gen->add_option("--output", cfg.output, "instance file (default stdout)");

    auto* bench = app.add_subcommand("bench", "solve a run of random instances and print CSV");
    bench->add_option("--n", cfg.n, "vertices")->check(CLI::Range(2, 100000));
    bench->add_option("--max-w", cfg.max_w, "largest weight")->check(CLI::NonNegativeNumber);
    bench->add_option("--seed", cfg.seed, "first seed");
    bench->add_option("--seeds", cfg.seeds, "number of seeds")->check(CLI::NonNegativeNumber);
    bench->add_flag("--verify", verify, "compare with Held-Karp (default for n <= 13)");
    bench->add_flag("--no-verify", no_verify, "skip Held-Karp");
    bench->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    bench->add_option("--output", cfg.output, "CSV file (default stdout)");

    auto* sup = app.add_subcommand("superstring", "shortest common superstring of one string per line");
    sup->add_option("--input", cfg.input, "strings file ('-' for stdin)")->required();
    sup->add_option("--output", cfg.output, "result file (default stdout)");
    sup->add_flag("--verify", verify, "compare with the brute-force optimum (at most 8 strings)");

    auto* ver = app.add_subcommand("verify", "cross-check the pipeline against exact oracles");
    ver->add_option("--n", cfg.n, "vertices (at most 8)")->check(CLI::Range(2, 8));
    ver->add_option("--max-w", cfg.max_w, "largest weight")->check(CLI::NonNegativeNumber);
    ver->add_option("--seed", cfg.seed, "first seed");
    ver->add_option("--seeds", cfg.seeds, "number of seeds")->check(CLI::NonNegativeNumber);
    ver->add_option("--output", cfg.output, "summary file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : maxatsp::cli::kUsage;
    }
    if (verify && no_verify) {
        std::cerr << "--verify and --no-verify are exclusive\n";
        return maxatsp::cli::kUsage;
    }
    if (verify) cfg.verify = true;
    if (no_verify) cfg.verify = false;

    if (solve->parsed()) cfg.command = Command::Solve;
    if (gen->parsed()) cfg.command = Command::Gen;
    if (bench->parsed()) cfg.command = Command::Bench;
    if (sup->parsed()) cfg.command = Command::Superstring;
    if (ver->parsed()) cfg.command = Command::Verify;
    return maxatsp::cli::run(cfg);
}
