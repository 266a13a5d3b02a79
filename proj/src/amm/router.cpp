#include "pofuzz/amm/router.hpp"

#include "pofuzz/world/erc20.hpp"

namespace pofuzz::amm {

using world::require;

namespace {

Address pair_for(CallContext& ctx, const Address& a, const Address& b) {
    auto p = find_pair(ctx.state, a, b);
    require(p.has_value(), "no pair");
    return *p;
}

/// Swap out of `pair` whatever it received of `token_in` on top of the
/// stored reserve. Handles fee-on-transfer inputs.
Amount swap_received(CallContext& ctx, const Address& caller, const Address& pair,
                     const Address& token_in, const Address& to) {
    const auto& p = ctx.state.pairs.at(pair);
    auto [rin, rout] = reserves_for(ctx.state, pair, token_in);
    Amount received = ctx.state.balance_of(token_in, pair) - rin;
    Amount out = get_amount_out(received, rin, rout);
    require(out > 0, "insufficient output");
    const bool in_is_0 = p.token0 == token_in;
    pair_swap(ctx, caller, pair, in_is_0 ? Amount(0) : out, in_is_0 ? out : Amount(0), to, nullptr);
    return out;
}

template <typename F>
auto atomically(WorldState& state, F&& body) {
    WorldState scratch = state;
    std::vector<world::TransferEvent> events;
    CallContext ctx(scratch, events, 0, 0);
    auto result = body(ctx);
    state = std::move(scratch);
    return result;
}

}  // namespace

Amount router_swap_exact_in(CallContext& ctx, const Address& router, const Address& caller,
                            const Amount& amount_in, const Address& token_in,
                            const Address& token_out) {
    Address pair = pair_for(ctx, token_in, token_out);
    auto [rin, rout] = reserves_for(ctx.state, pair, token_in);
    require(rin > 0 && rout > 0, "insufficient liquidity");
    require(get_amount_out(amount_in, rin, rout) > 0, "insufficient output");
    world::erc20::transfer_from(ctx, token_in, router, caller, pair, amount_in);
    return swap_received(ctx, router, pair, token_in, caller);
}

Amount router_add_liquidity(CallContext& ctx, const Address& router, const Address& caller,
                            const Address& token_a, const Address& token_b,
                            const Amount& amount_a, const Amount& amount_b) {
    Address pair = pair_for(ctx, token_a, token_b);
    world::erc20::transfer_from(ctx, token_a, router, caller, pair, amount_a);
    world::erc20::transfer_from(ctx, token_b, router, caller, pair, amount_b);
    return pair_mint(ctx, pair, caller);
}

std::pair<Amount, Amount> router_remove_liquidity(CallContext& ctx, const Address& router,
                                                  const Address& caller, const Address& token_a,
                                                  const Address& token_b, const Amount& lp) {
    Address pair = pair_for(ctx, token_a, token_b);
    world::erc20::transfer_from(ctx, pair, router, caller, pair, lp);
    auto [a0, a1] = pair_burn(ctx, pair, caller);
    if (ctx.state.pairs.at(pair).token0 == token_a) return {a0, a1};
    return {a1, a0};
}

void router_dispatch(CallContext& ctx, const Address& caller, const Address& router,
                     const std::string& function, const std::vector<world::Arg>& args) {
    using world::address_arg;
    using world::uint_arg;
    if (function == "swapExactIn") {
        router_swap_exact_in(ctx, router, caller, uint_arg(args, 0), address_arg(args, 1),
                             address_arg(args, 2));
    } else if (function == "addLiquidity") {
        router_add_liquidity(ctx, router, caller, address_arg(args, 0), address_arg(args, 1),
                             uint_arg(args, 2), uint_arg(args, 3));
    } else if (function == "removeLiquidity") {
        router_remove_liquidity(ctx, router, caller, address_arg(args, 0), address_arg(args, 1),
                                uint_arg(args, 2));
    } else {
        world::revert("unknown function");
    }
}

std::optional<Address> find_router(const WorldState& state) {
    for (const auto& [addr, c] : state.contracts) {
        if (std::holds_alternative<world::RouterStorage>(c)) return addr;
    }
    return std::nullopt;
}

Amount swap_exact_in(WorldState& state, const Address& sender, const Address& pair,
                     const Address& token_in, const Amount& amount_in) {
    return atomically(state, [&](CallContext& ctx) {
        require(ctx.state.is_pair(pair), "not a pair");
        auto [rin, rout] = reserves_for(ctx.state, pair, token_in);
        require(rin > 0 && rout > 0, "insufficient liquidity");
        require(get_amount_out(amount_in, rin, rout) > 0, "insufficient output");
        world::erc20::transfer(ctx, token_in, sender, pair, amount_in);
        return swap_received(ctx, sender, pair, token_in, sender);
    });
}

Amount add_liquidity(WorldState& state, const Address& sender, const Address& pair,
                     const Amount& amount0, const Amount& amount1) {
    return atomically(state, [&](CallContext& ctx) {
        require(ctx.state.is_pair(pair), "not a pair");
        const auto& p = ctx.state.pairs.at(pair);
        world::erc20::transfer(ctx, p.token0, sender, pair, amount0);
        world::erc20::transfer(ctx, p.token1, sender, pair, amount1);
        return pair_mint(ctx, pair, sender);
    });
}

std::pair<Amount, Amount> remove_liquidity(WorldState& state, const Address& sender,
                                           const Address& pair, const Amount& lp_amount) {
    return atomically(state, [&](CallContext& ctx) {
        require(ctx.state.is_pair(pair), "not a pair");
        world::erc20::transfer(ctx, pair, sender, pair, lp_amount);
        return pair_burn(ctx, pair, sender);
    });
}

}  // namespace pofuzz::amm
