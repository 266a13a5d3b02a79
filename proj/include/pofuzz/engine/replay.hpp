#pragma once

#include "pofuzz/oracle/accounting.hpp"

#include <stdexcept>
#include <string>

namespace pofuzz::engine {

struct ProofOfProfit {
    std::string scenario;
    std::string scenario_fingerprint;
    world::TxSequence seq;
    world::Address pricing_token;
    oracle::AccountingMode mode = oracle::AccountingMode::Full;
    Amount initial_value;
    Amount final_value;
    Signed profit;
    std::vector<world::Transaction> trace;  // liquidation steps after seq
    std::uint64_t receipt_digest = 0;
    std::uint64_t found_at = 0;  // evaluation count when recorded

    bool operator==(const ProofOfProfit&) const = default;
};

/// One execution of a sequence plus its valuation.
struct Evaluation {
    world::ExecutionReceipt receipt;
    world::Address pricing_token;
    Amount initial_value;
    oracle::Valuation valuation;
    Signed profit;
};

/// Executes and values `seq` from the scenario's initial state.
/// `initial_value` is N(S^0) in the sequence's pricing token.
Evaluation evaluate(const scenarios::Scenario& sc, const world::TxSequence& seq,
                    const Amount& initial_value, oracle::AccountingMode mode,
                    const world::Executor& exec);

/// Digest of outcomes, transfer events and the final state.
std::uint64_t receipt_digest(const world::ExecutionReceipt& receipt);

/// Realized profit differs from the recorded one, or the execution diverged.
class MismatchError : public std::runtime_error {
public:
    MismatchError(const std::string& what, Signed expected, Signed realized);
    const Signed& expected() const { return expected_; }
    const Signed& realized() const { return realized_; }

private:
    Signed expected_;
    Signed realized_;
};

/// The proof does not belong to the scenario, or is malformed.
class ReplayValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Replays from a fresh copy of the scenario: runs the sequence, then the
/// liquidation trace, and reads the cluster's pricing-token holdings.
/// Returns the realized profit when it matches the proof exactly.
Signed replay(const scenarios::Scenario& sc, const ProofOfProfit& proof);

}  // namespace pofuzz::engine
