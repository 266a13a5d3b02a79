#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pofuzz::cli {

enum ExitCode : int {
    kExitFound = 0,     // run: proof found; replay: exact match; suite: done
    kExitError = 1,     // bad flags, scenario or document
    kExitNone = 2,      // run finished cleanly without a proof
    kExitMismatch = 3,  // replay disagrees with the recorded profit
};

struct RunArgs {
    std::string scenario;
    std::uint64_t seed = 1;
    std::uint64_t iterations = 50000;
    std::uint64_t sgd_budget = 2000;
    unsigned restarts = 3;
    std::size_t max_len = 16;
    std::string ablation = "none";
    std::string out = "report.json";
    bool emit_schedule = false;  // also writes <out>.convergence.csv
    unsigned repeat = 1;         // seeds seed .. seed + repeat - 1
    double time_budget = 0;
};

struct ReplayArgs {
    std::string proof;     // proof or report file
    std::string scenario;  // defaults to the built-in named in the proof
};

struct SuiteArgs {
    std::vector<std::string> scenarios;  // subset; empty: built-in corpus
    unsigned seeds = 5;
    std::uint64_t iterations = 3000;
    std::uint64_t sgd_budget = 2000;
    bool json = false;
    bool serial = false;
    std::string out;  // optional JSON file
};

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err);
int cmd_suite(const SuiteArgs& args, std::ostream& out, std::ostream& err);

}  // namespace pofuzz::cli
