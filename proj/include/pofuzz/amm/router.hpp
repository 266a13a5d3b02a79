#pragma once

#include "pofuzz/amm/pair.hpp"

namespace pofuzz::amm {

/// Router entry points. The router pulls tokens with transferFrom, so the
/// caller must have approved it first.
Amount router_swap_exact_in(CallContext& ctx, const Address& router, const Address& caller,
                            const Amount& amount_in, const Address& token_in,
                            const Address& token_out);
Amount router_add_liquidity(CallContext& ctx, const Address& router, const Address& caller,
                            const Address& token_a, const Address& token_b,
                            const Amount& amount_a, const Amount& amount_b);
std::pair<Amount, Amount> router_remove_liquidity(CallContext& ctx, const Address& router,
                                                  const Address& caller, const Address& token_a,
                                                  const Address& token_b, const Amount& lp);

void router_dispatch(CallContext& ctx, const Address& caller, const Address& router,
                     const std::string& function, const std::vector<world::Arg>& args);

/// First router deployed in the state, if any.
std::optional<Address> find_router(const WorldState& state);

// Standalone wrappers: each runs as one atomic transaction on `state` and
// throws (leaving `state` untouched) on failure. Funds move straight from
// the sender to the pair, so no router or approval is involved.
Amount swap_exact_in(WorldState& state, const Address& sender, const Address& pair,
                     const Address& token_in, const Amount& amount_in);
Amount add_liquidity(WorldState& state, const Address& sender, const Address& pair,
                     const Amount& amount0, const Amount& amount1);
std::pair<Amount, Amount> remove_liquidity(WorldState& state, const Address& sender,
                                           const Address& pair, const Amount& lp_amount);

}  // namespace pofuzz::amm
