#include "pofuzz/amm/pair.hpp"

#include "pofuzz/world/erc20.hpp"

#include <algorithm>
#include <stdexcept>

namespace pofuzz::amm {

using world::PairReserves;
using world::require;

namespace {

// k check operands reach ~2^532
using Huge = bmp::number<
    bmp::cpp_int_backend<1024, 1024, bmp::unsigned_magnitude, bmp::unchecked, void>>;

PairReserves& reserves(CallContext& ctx, const Address& pair) {
    auto it = ctx.state.pairs.find(pair);
    require(it != ctx.state.pairs.end(), "not a pair");
    return it->second;
}

// Uniswap's `lock` modifier: no pair function re-enters its own pair (a
// flashloan body cannot mint, burn, sync, skim or swap the lending pair).
// On revert the executor restores the whole state, flag included.
class Lock {
public:
    Lock(CallContext& ctx, const Address& pair) : ctx_(ctx), pair_(pair) {
        PairReserves& p = reserves(ctx, pair);
        require(!p.locked, "LOCKED");
        p.locked = true;
    }
    ~Lock() {
        auto it = ctx_.state.pairs.find(pair_);
        if (it != ctx_.state.pairs.end()) it->second.locked = false;
    }
    Lock(const Lock&) = delete;
    Lock& operator=(const Lock&) = delete;

private:
    CallContext& ctx_;
    Address pair_;
};

void update(PairReserves& p, const Amount& b0, const Amount& b1) {
    p.reserve0 = b0;
    p.reserve1 = b1;
}

}  // namespace

Amount get_amount_out(const Amount& amount_in, const Amount& reserve_in,
                      const Amount& reserve_out) {
    if (amount_in == 0) return 0;
    require(reserve_in > 0 && reserve_out > 0, "insufficient liquidity");
    Amount in_with_fee = amount_in * kFeeNumerator;
    Amount numerator = in_with_fee * reserve_out;
    Amount denominator = reserve_in * kFeeDenominator + in_with_fee;
    return numerator / denominator;
}

Amount flashloan_repayment(const Amount& borrowed) {
    Wide n = Wide(borrowed) * kFeeDenominator;
    return to_amount((n + kFeeNumerator - 1) / kFeeNumerator);
}

std::optional<Address> find_pair(const WorldState& state, const Address& a, const Address& b) {
    const Address& lo = std::min(a, b);
    const Address& hi = std::max(a, b);
    for (const auto& [addr, p] : state.pairs) {
        if (p.token0 == lo && p.token1 == hi) return addr;
    }
    return std::nullopt;
}

std::pair<Amount, Amount> reserves_for(const WorldState& state, const Address& pair,
                                       const Address& token) {
    const PairReserves& p = state.pairs.at(pair);
    if (p.token0 == token) return {p.reserve0, p.reserve1};
    return {p.reserve1, p.reserve0};
}

std::optional<Amount> quote_out(const WorldState& state, const Address& pair,
                                const Address& token_in, const Amount& amount_in) {
    auto it = state.pairs.find(pair);
    if (it == state.pairs.end()) return std::nullopt;
    const PairReserves& p = it->second;
    if (p.token0 != token_in && p.token1 != token_in) return std::nullopt;
    auto [rin, rout] = reserves_for(state, pair, token_in);
    if (rin == 0 || rout == 0) return std::nullopt;
    try {
        return get_amount_out(amount_in, rin, rout);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::pair<Amount, Amount> pair_balances(const WorldState& state, const Address& pair) {
    const PairReserves& p = state.pairs.at(pair);
    return {state.balance_of(p.token0, pair), state.balance_of(p.token1, pair)};
}

void pair_swap(CallContext& ctx, const Address& caller, const Address& pair, const Amount& out0,
               const Amount& out1, const Address& to, const world::Callback* callback) {
    Lock lock(ctx, pair);
    PairReserves p = reserves(ctx, pair);
    require(out0 > 0 || out1 > 0, "insufficient output");
    require(out0 < p.reserve0 && out1 < p.reserve1, "insufficient liquidity");
    require(to != p.token0 && to != p.token1, "invalid to");
    if (out0 > 0) world::erc20::transfer(ctx, p.token0, pair, to, out0);
    if (out1 > 0) world::erc20::transfer(ctx, p.token1, pair, to, out1);
    if (callback) {
        for (const auto& tx : callback->body) ctx.run_nested(tx);
        if (callback->repay_amount > 0) {
            world::erc20::transfer(ctx, callback->repay_token, caller, pair, callback->repay_amount);
        }
    }
    auto [b0, b1] = pair_balances(ctx.state, pair);
    Amount kept0 = p.reserve0 - out0;
    Amount kept1 = p.reserve1 - out1;
    Amount in0 = b0 > kept0 ? Amount(b0 - kept0) : Amount(0);
    Amount in1 = b1 > kept1 ? Amount(b1 - kept1) : Amount(0);
    require(in0 > 0 || in1 > 0, "insufficient input");
    Huge adj0 = Huge(b0) * kFeeDenominator - Huge(in0) * 3;
    Huge adj1 = Huge(b1) * kFeeDenominator - Huge(in1) * 3;
    Huge rhs = Huge(p.reserve0) * Huge(p.reserve1) * (kFeeDenominator * kFeeDenominator);
    require(adj0 * adj1 >= rhs, "K");
    update(reserves(ctx, pair), b0, b1);
}

Amount pair_mint(CallContext& ctx, const Address& pair, const Address& to) {
    Lock lock(ctx, pair);
    PairReserves p = reserves(ctx, pair);
    auto [b0, b1] = pair_balances(ctx.state, pair);
    Amount a0 = b0 - p.reserve0;
    Amount a1 = b1 - p.reserve1;
    const Amount& supply = ctx.state.tokens.at(pair).total_supply;
    Amount liquidity;
    if (supply == 0) {
        liquidity = isqrt(Wide(a0) * Wide(a1));
    } else {
        liquidity = std::min(a0 * supply / p.reserve0, a1 * supply / p.reserve1);
    }
    require(liquidity > 0, "insufficient liquidity minted");
    world::erc20::mint(ctx, pair, to, liquidity);
    update(reserves(ctx, pair), b0, b1);
    return liquidity;
}

std::pair<Amount, Amount> pair_burn(CallContext& ctx, const Address& pair, const Address& to) {
    Lock lock(ctx, pair);
    PairReserves p = reserves(ctx, pair);
    auto [b0, b1] = pair_balances(ctx.state, pair);
    const world::TokenLedger& lp = ctx.state.tokens.at(pair);
    Amount liquidity = lp.balance_of(pair);
    Amount supply = lp.total_supply;
    require(supply > 0, "insufficient liquidity burned");
    Amount a0 = to_amount(Wide(liquidity) * Wide(b0) / Wide(supply));
    Amount a1 = to_amount(Wide(liquidity) * Wide(b1) / Wide(supply));
    require(a0 > 0 && a1 > 0, "insufficient liquidity burned");
    world::erc20::burn(ctx, pair, pair, liquidity);
    world::erc20::transfer(ctx, p.token0, pair, to, a0);
    world::erc20::transfer(ctx, p.token1, pair, to, a1);
    auto [n0, n1] = pair_balances(ctx.state, pair);
    update(reserves(ctx, pair), n0, n1);
    return {a0, a1};
}

void pair_sync(CallContext& ctx, const Address& pair) {
    Lock lock(ctx, pair);
    auto [b0, b1] = pair_balances(ctx.state, pair);
    update(reserves(ctx, pair), b0, b1);
}

void pair_skim(CallContext& ctx, const Address& pair, const Address& to) {
    Lock lock(ctx, pair);
    PairReserves p = reserves(ctx, pair);
    auto [b0, b1] = pair_balances(ctx.state, pair);
    Amount s0 = b0 - p.reserve0;
    Amount s1 = b1 - p.reserve1;
    require(s0 > 0 || s1 > 0, "nothing to skim");
    if (s0 > 0) world::erc20::transfer(ctx, p.token0, pair, to, s0);
    if (s1 > 0) world::erc20::transfer(ctx, p.token1, pair, to, s1);
}

void pair_dispatch(CallContext& ctx, const Address& caller, const Address& pair,
                   const std::string& function, const std::vector<world::Arg>& args,
                   const world::Callback* callback) {
    using world::address_arg;
    using world::uint_arg;
    if (callback) require(function == "swap", "callback only on swap");
    if (function == "swap") {
        pair_swap(ctx, caller, pair, uint_arg(args, 0), uint_arg(args, 1), address_arg(args, 2),
                  callback);
    } else if (function == "mint") {
        pair_mint(ctx, pair, address_arg(args, 0));
    } else if (function == "burn") {
        pair_burn(ctx, pair, address_arg(args, 0));
    } else if (function == "sync") {
        pair_sync(ctx, pair);
    } else if (function == "skim") {
        pair_skim(ctx, pair, address_arg(args, 0));
    } else {
        world::erc20::dispatch(ctx, caller, pair, function, args);
    }
}

Address create_pair(WorldState& state, const Address& token_a, const Address& token_b,
                    const Amount& amount_a, const Amount& amount_b, const Address& provider) {
    if (token_a == token_b) throw std::invalid_argument("pair tokens must differ");
    if (amount_a == 0 || amount_b == 0) throw std::invalid_argument("pair reserves must be positive");
    const bool a_first = token_a < token_b;
    PairReserves p;
    p.token0 = a_first ? token_a : token_b;
    p.token1 = a_first ? token_b : token_a;
    p.reserve0 = a_first ? amount_a : amount_b;
    p.reserve1 = a_first ? amount_b : amount_a;

    std::string label = "pair:" + p.token0.hex() + ":" + p.token1.hex();
    Address addr = Address::from_label(label);
    if (state.pairs.count(addr) || state.tokens.count(addr) || state.contracts.count(addr)) {
        throw std::invalid_argument("duplicate pair");
    }
    for (const auto& [tok, amt] : {std::pair{p.token0, p.reserve0}, std::pair{p.token1, p.reserve1}}) {
        auto it = state.tokens.find(tok);
        if (it == state.tokens.end()) throw std::invalid_argument("pair token is not registered");
        it->second.total_supply = it->second.total_supply + amt;
        it->second.balances[addr] = it->second.balance_of(addr) + amt;
    }

    auto cfg = std::make_shared<world::TokenConfig>();
    cfg->symbol = "LP";
    cfg->is_lp = true;
    world::TokenLedger lp;
    lp.config = cfg;
    lp.total_supply = isqrt(Wide(p.reserve0) * Wide(p.reserve1));
    if (lp.total_supply > 0) lp.balances[provider] = lp.total_supply;
    state.tokens.emplace(addr, std::move(lp));
    state.pairs.emplace(addr, p);
    return addr;
}

}  // namespace pofuzz::amm
