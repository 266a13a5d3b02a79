#pragma once

#include "pofuzz/scenarios/scenario.hpp"
#include "pofuzz/world/executor.hpp"

#include <vector>

namespace pofuzz::oracle {

using world::Address;

enum class AccountingMode : std::uint8_t {
    Full,         // withdraw everything, then swap into the pricing token
    BalanceOnly,  // raw pricing-token balance (the NOACC ablation)
};

struct Valuation {
    Amount value;
    /// Liquidation transactions that returned, in execution order. Running
    /// them after the valued state reproduces `value` exactly.
    std::vector<world::Transaction> trace;
};

struct AccountingReport {
    Address pricing_token;
    Amount initial_value;
    Amount final_value;
    Signed profit;  // final_value - initial_value
    std::vector<world::Transaction> trace;  // liquidation of the final state
};

/// Pricing-token balance of the cluster (plus native balance when the
/// pricing asset is native).
Amount holdings(const world::WorldState& state, const std::vector<Address>& cluster,
                const Address& pricing_token);

/// Values `state` on a private scratch copy: (1) burn every LP position of
/// the cluster, (2) redeem vault shares, (3) sell every other token into
/// the pricing token through the router, directly or via one intermediate
/// token, skipping zero quotes and sells that revert. Never touches `state`.
Valuation value_state(const world::WorldState& state, const std::vector<Address>& cluster,
                      const Address& pricing_token, AccountingMode mode = AccountingMode::Full);

AccountingReport account(const world::WorldState& initial, const world::WorldState& final_state,
                         const std::vector<Address>& cluster, const Address& pricing_token,
                         AccountingMode mode = AccountingMode::Full);

/// Executes `seq` from `base` and returns N(S^k) - N(S^0) in the sequence's
/// pricing token.
Signed profit(const world::TxSequence& seq, const world::WorldState& base,
              const scenarios::Scenario& sc, AccountingMode mode = AccountingMode::Full);

}  // namespace pofuzz::oracle
