#pragma once

#include "pofuzz/world/address.hpp"
#include "pofuzz/world/amount.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pofuzz::world {

/// Fee charged on top of the transferred amount whenever a bound pair is the
/// sender or the recipient: the sender is debited amount + amount*rate/1000
/// and the fee share goes to `destroy`.
struct FeeHook {
    std::uint32_t rate_permille = 0;
    Address destroy = Address::burn();
    std::set<Address> bound_pairs;
    std::set<Address> exempt;

    bool operator==(const FeeHook&) const = default;
};

/// Immutable per-token configuration, shared between state copies.
struct TokenConfig {
    std::string symbol;
    bool public_mint = false;  // mint(to, amount) callable by anyone
    bool public_burn = false;  // burn(from, amount) callable by anyone
    bool is_lp = false;
    std::optional<FeeHook> fee;

    bool operator==(const TokenConfig&) const = default;
};

struct TokenLedger {
    std::shared_ptr<const TokenConfig> config;
    Amount total_supply;
    std::map<Address, Amount> balances;
    std::map<std::pair<Address, Address>, Amount> allowances;  // (owner, spender)

    const Amount& balance_of(const Address& holder) const;
    Amount allowance(const Address& owner, const Address& spender) const;

    bool operator==(const TokenLedger& o) const;
};

/// Stored reserves of a constant-product pair. The pair's LP token lives in
/// WorldState::tokens under the pair's own address.
struct PairReserves {
    Address token0;
    Address token1;
    Amount reserve0;
    Amount reserve1;
    bool locked = false;  // reentrancy guard, set only while a pair function runs

    bool operator==(const PairReserves&) const = default;
};

// Scenario contract storage records. Behaviour lives in scenarios/contracts.

struct RouterStorage {
    bool operator==(const RouterStorage&) const = default;
};

/// Fixed-price token sale: buyTokens(n) charges (n / 10^18) * price.
struct TokenSaleStorage {
    Address token;
    Amount price;
    bool operator==(const TokenSaleStorage&) const = default;
};

/// Share vault minting floor(amount * shares / balance) after the first deposit.
struct VaultStorage {
    Address token;
    Address router;
    Amount total_shares;
    std::map<Address, Amount> shares;
    bool operator==(const VaultStorage&) const = default;
};

/// Front end of a vault: records the shares first, then pulls the tokens.
struct VaultRouterStorage {
    Address vault;
    Address token;
    bool operator==(const VaultRouterStorage&) const = default;
};

struct Stake {
    Address owner;
    Amount amount;
    bool operator==(const Stake&) const = default;
};

/// Staking pool whose unstake() needs the opaque id returned by stake().
struct StakingPoolStorage {
    Address token;
    std::uint32_t bonus_permille = 0;
    std::uint64_t nonce = 0;
    std::map<Amount, Stake> stakes;
    bool operator==(const StakingPoolStorage&) const = default;
};

using ContractInstance = std::variant<RouterStorage, TokenSaleStorage, VaultStorage,
                                      VaultRouterStorage, StakingPoolStorage>;

/// One call of a scenario-defined action macro. Argument templates are
/// "$sender", "$p<i>" (i-th macro parameter), an address label resolved at
/// load time as "0x..." hex, or a decimal literal.
struct MacroCall {
    Address target;
    std::string function;
    std::vector<std::string> args;
    bool operator==(const MacroCall&) const = default;
};

struct Macro {
    std::string name;
    std::size_t arity = 0;
    std::vector<MacroCall> calls;
    bool operator==(const Macro&) const = default;
};

/// Immutable macro table shared between state copies; compares by content.
struct MacroTable {
    std::shared_ptr<const std::map<std::string, Macro>> entries;

    const Macro* find(const std::string& name) const;
    std::size_t size() const { return entries ? entries->size() : 0; }
    bool operator==(const MacroTable& o) const;
};

struct WorldState {
    std::map<Address, TokenLedger> tokens;
    std::map<Address, PairReserves> pairs;
    std::map<Address, ContractInstance> contracts;
    std::map<Address, Amount> native_balances;
    std::uint64_t block_number = 0;
    MacroTable macros;

    bool operator==(const WorldState&) const = default;

    bool is_token(const Address& a) const { return tokens.count(a) != 0; }
    bool is_pair(const Address& a) const { return pairs.count(a) != 0; }

    const Amount& balance_of(const Address& token, const Address& holder) const;
    const Amount& native_balance(const Address& holder) const;

    /// Sum of all holder balances of a token (the burn address included).
    Amount sum_of_balances(const Address& token) const;
};

/// Deep copy of a world state; restore() yields an equal state.
class Snapshot {
public:
    explicit Snapshot(WorldState s) : state_(std::move(s)) {}
    WorldState restore() const { return state_; }
    const WorldState& view() const { return state_; }

private:
    WorldState state_;
};

Snapshot snapshot(const WorldState& state);

/// Stable 64-bit digest of a state, used to check that read-only paths never
/// mutate their input.
std::uint64_t state_digest(const WorldState& state);

}  // namespace pofuzz::world
