#pragma once

#include "pofuzz/world/executor.hpp"

#include <optional>
#include <utility>

namespace pofuzz::amm {

using world::Address;
using world::CallContext;
using world::WorldState;

inline constexpr unsigned kFeeNumerator = 997;
inline constexpr unsigned kFeeDenominator = 1000;

/// amount_in*997*reserve_out / (reserve_in*1000 + amount_in*997), floored.
/// Checked: intermediate overflow throws like the Amount type does.
Amount get_amount_out(const Amount& amount_in, const Amount& reserve_in, const Amount& reserve_out);

/// Smallest repayment that satisfies the pair's fee-adjusted k check after
/// borrowing `borrowed` of one side: ceil(1000*borrowed/997).
Amount flashloan_repayment(const Amount& borrowed);

/// Pair with exactly these two tokens, in either order.
std::optional<Address> find_pair(const WorldState& state, const Address& a, const Address& b);

/// Non-reverting quote used by the accounting oracle. Empty when the pair
/// does not trade `token_in`, a reserve is zero, or the math overflows.
std::optional<Amount> quote_out(const WorldState& state, const Address& pair,
                                const Address& token_in, const Amount& amount_in);

/// (reserve of token, reserve of the other side).
std::pair<Amount, Amount> reserves_for(const WorldState& state, const Address& pair,
                                       const Address& token);

// Low-level pair functions, run inside a transaction.
void pair_swap(CallContext& ctx, const Address& caller, const Address& pair, const Amount& out0,
               const Amount& out1, const Address& to, const world::Callback* callback);
Amount pair_mint(CallContext& ctx, const Address& pair, const Address& to);
std::pair<Amount, Amount> pair_burn(CallContext& ctx, const Address& pair, const Address& to);
void pair_sync(CallContext& ctx, const Address& pair);
void pair_skim(CallContext& ctx, const Address& pair, const Address& to);

/// Function table of a pair: LP token ERC20 plus swap/mint/burn/sync/skim.
void pair_dispatch(CallContext& ctx, const Address& caller, const Address& pair,
                   const std::string& function, const std::vector<world::Arg>& args,
                   const world::Callback* callback);

/// Deploys a pair with tokens minted straight into it; the provider gets
/// isqrt(r0*r1) LP tokens. Setup-time helper, no events.
Address create_pair(WorldState& state, const Address& token_a, const Address& token_b,
                    const Amount& amount_a, const Amount& amount_b, const Address& provider);

/// Actual token balances held by the pair (balance0, balance1).
std::pair<Amount, Amount> pair_balances(const WorldState& state, const Address& pair);

}  // namespace pofuzz::amm
