#pragma once

#include "pofuzz/world/transaction.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pofuzz::world {

/// Thrown by contract code to abort the current transaction.
class Revert : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] void revert(const std::string& reason);

inline void require(bool condition, const char* reason) {
    if (!condition) revert(reason);
}

/// Flashloan callback: run `body` as the borrower, then pay `repay_amount`
/// of `repay_token` back to the lending pair.
struct Callback {
    std::vector<Transaction> body;
    Address repay_token;
    Amount repay_amount;
};

/// One contract call as emitted by action lowering.
struct PrimitiveCall {
    Address target;
    std::string function;
    std::vector<Arg> args;
    std::optional<Callback> callback;
    Amount value;
};

struct ExecutorConfig {
    std::size_t max_sequence = kDefaultMaxSequence;
    bool track_pairs = true;  // record per-transaction pair divergence
};

/// Mutable execution context of a single (possibly nested) transaction.
class CallContext {
public:
    CallContext(WorldState& state, std::vector<TransferEvent>& events, std::size_t tx_index,
                std::size_t exec_index)
        : state(state), events_(events), tx_index_(tx_index), exec_index_(exec_index) {}

    WorldState& state;

    void emit(const Address& token, const Address& from, const Address& to, const Amount& amount);

    /// Dispatches a call from `caller` to the target's function table.
    void call(const Address& caller, const PrimitiveCall& c);
    void call(const Address& caller, const Address& target, const std::string& function,
              const std::vector<Arg>& args, const Amount& value = 0);

    /// Runs a transaction body (all repetitions) without per-transaction
    /// isolation: any revert propagates to the enclosing transaction.
    void run_nested(const Transaction& tx);

    int depth() const { return depth_; }

private:
    std::vector<TransferEvent>& events_;
    std::size_t tx_index_;
    std::size_t exec_index_;
    int depth_ = 0;
};

/// Executes transaction sequences against a world state. Stateless; every
/// method is a pure function of its inputs.
class Executor {
public:
    explicit Executor(ExecutorConfig cfg = {}) : cfg_(cfg) {}

    /// Runs `seq` on a copy of `state`. Reverted transactions leave the
    /// state untouched and do not stop the sequence.
    ExecutionReceipt execute_sequence(const WorldState& state, const TxSequence& seq) const;

    /// Applies every repetition of `tx` to `state` in place, appending
    /// outcomes and events to `receipt`. Returns the number of repetitions
    /// that returned.
    std::size_t apply(WorldState& state, const Transaction& tx, std::size_t tx_index,
                      ExecutionReceipt& receipt) const;

    const ExecutorConfig& config() const { return cfg_; }

private:
    ExecutorConfig cfg_;
};

}  // namespace pofuzz::world

namespace pofuzz::world {

/// Typed argument access for contract code; reverts on a kind mismatch.
const Address& address_arg(const std::vector<Arg>& args, std::size_t i);
const Amount& uint_arg(const std::vector<Arg>& args, std::size_t i);

}  // namespace pofuzz::world
