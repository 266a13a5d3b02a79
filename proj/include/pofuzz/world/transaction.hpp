#pragma once

#include "pofuzz/actions/action_spec.hpp"
#include "pofuzz/world/address.hpp"
#include "pofuzz/world/amount.hpp"
#include "pofuzz/world/state.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace pofuzz::world {

inline constexpr std::uint32_t kMaxRepeat = 1000;
inline constexpr std::size_t kDefaultMaxSequence = 16;

using Arg = std::variant<Address, Amount>;

struct RawCall {
    Address target;
    std::string function;
    std::vector<Arg> args;

    bool operator==(const RawCall&) const = default;
};

struct Transaction {
    Address sender;
    std::variant<RawCall, actions::ActionSpec> call;
    Amount value;             // native currency attached
    std::uint32_t repeat = 1;  // 1..kMaxRepeat, each repetition is its own transaction
    bool pinned = false;      // injected victim transaction; never mutated

    bool is_action() const { return std::holds_alternative<actions::ActionSpec>(call); }
    bool operator==(const Transaction&) const = default;
};

/// A fuzzer input: the transactions plus the pricing token it is judged in.
struct TxSequence {
    std::vector<Transaction> txs;
    Address pricing_token;

    std::size_t size() const { return txs.size(); }
    bool operator==(const TxSequence&) const = default;
};

Transaction raw_tx(const Address& sender, const Address& target, std::string function,
                   std::vector<Arg> args, Amount value = 0, std::uint32_t repeat = 1);
Transaction action_tx(const Address& sender, actions::ActionSpec spec, std::uint32_t repeat = 1);

struct TransferEvent {
    Address token;  // Address::native() for native currency
    Address from;
    Address to;
    Amount amount;
    std::size_t tx_index = 0;    // logical index in the sequence
    std::size_t exec_index = 0;  // index in the expanded (repeat-unrolled) order

    bool operator==(const TransferEvent&) const = default;
};

struct TxOutcome {
    std::size_t tx_index = 0;
    std::uint32_t repeat_index = 0;
    Address sender;
    bool reverted = false;
    std::string reason;
    /// Pairs whose stored reserves diverged from their balances, or whose
    /// reserve product decreased, across this transaction.
    std::vector<Address> imbalanced_pairs;

    bool returned() const { return !reverted; }
    bool operator==(const TxOutcome&) const = default;
};

struct ExecutionReceipt {
    std::vector<TxOutcome> outcomes;  // one per expanded transaction
    std::vector<TransferEvent> events;
    WorldState final_state;

    /// Bit i is set when every repetition of logical transaction i reverted.
    std::uint64_t dead_mask(std::size_t tx_count) const;
};

}  // namespace pofuzz::world
