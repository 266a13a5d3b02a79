#include "pofuzz/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace pofuzz::cli;
    CLI::App app{"Profit-driven exploit search over a deterministic DeFi world"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Fuzz one scenario and write a report");
    run_cmd->add_option("--scenario", run.scenario, "Scenario file or built-in name")->required();
    run_cmd->add_option("--seed", run.seed, "RNG seed");
    run_cmd->add_option("--iterations", run.iterations, "Fuzzing iterations per campaign");
    run_cmd->add_option("--sgd-budget", run.sgd_budget, "Profit evaluations per SGD run");
    run_cmd->add_option("--restarts", run.restarts, "SGD restarts per candidate structure");
    run_cmd->add_option("--max-len", run.max_len, "Maximum transactions per input");
    run_cmd->add_option("--ablation", run.ablation, "none | noact | nocdt | noacc | nogrd");
    run_cmd->add_option("--out", run.out, "Report path");
    run_cmd->add_flag("--emit-schedule", run.emit_schedule,
                      "Record SGD schedules; writes <out>.convergence.csv");
    run_cmd->add_option("--repeat", run.repeat, "Run seeds seed..seed+k-1");
    run_cmd->add_option("--time-budget", run.time_budget, "Wall-clock cap per campaign, seconds (breaks reproducibility)");

    ReplayArgs replay;
    auto* replay_cmd = app.add_subcommand("replay", "Re-execute a proof-of-profit and check its profit");
    replay_cmd->add_option("--proof", replay.proof, "Proof or report file")->required();
    replay_cmd->add_option("--scenario", replay.scenario, "Scenario file or built-in name");

    SuiteArgs suite;
    auto* suite_cmd = app.add_subcommand("suite", "Built-in corpus x seeds x ablations profit matrix");
    suite_cmd->add_option("--scenario", suite.scenarios, "Restrict to these scenarios (repeatable)");
    suite_cmd->add_option("--seeds", suite.seeds, "Seeds 1..N");
    suite_cmd->add_option("--iterations", suite.iterations, "Iterations per campaign");
    suite_cmd->add_option("--sgd-budget", suite.sgd_budget, "Profit evaluations per SGD run");
    suite_cmd->add_flag("--json", suite.json, "Print the matrix as JSON");
    suite_cmd->add_flag("--serial", suite.serial, "Run campaigns one at a time");
    suite_cmd->add_option("--out", suite.out, "Also write the JSON matrix here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }
    if (*run_cmd) return cmd_run(run, std::cout, std::cerr);
    if (*replay_cmd) return cmd_replay(replay, std::cout, std::cerr);
    return cmd_suite(suite, std::cout, std::cerr);
}
