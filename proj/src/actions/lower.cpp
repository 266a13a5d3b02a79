#include "pofuzz/actions/lower.hpp"

#include "pofuzz/amm/pair.hpp"
#include "pofuzz/amm/router.hpp"

namespace pofuzz::actions {

using world::Address;
using world::Arg;
using world::PrimitiveCall;
using world::WorldState;

namespace {

PrimitiveCall make(const Address& target, std::string fn, std::vector<Arg> args) {
    PrimitiveCall c;
    c.target = target;
    c.function = std::move(fn);
    c.args = std::move(args);
    return c;
}

std::vector<PrimitiveCall> unexpressible() {
    // target nothing; the executor reverts with "no contract at target"
    return {make(Address::zero(), "unavailable", {})};
}

/// Amounts of (token0, token1) for a proportional deposit of pct of the
/// sender's token0, capped by what the sender holds of token1.
std::pair<Amount, Amount> proportional(const WorldState& state, const world::PairReserves& p,
                                       const Address& sender, unsigned pct) {
    Amount a0 = percent_of(state.balance_of(p.token0, sender), pct);
    const Amount& bal1 = state.balance_of(p.token1, sender);
    if (p.reserve0 == 0 || p.reserve1 == 0) return {a0, percent_of(bal1, pct)};
    Wide q = Wide(a0) * Wide(p.reserve1) / Wide(p.reserve0);
    if (q <= Wide(bal1)) return {a0, to_amount(q)};
    a0 = to_amount(Wide(bal1) * Wide(p.reserve0) / Wide(p.reserve1));
    return {a0, bal1};
}

Arg resolve(const std::string& tmpl, const Address& sender, const std::vector<Amount>& params) {
    if (tmpl == "$sender") return sender;
    if (tmpl.size() > 2 && tmpl[0] == '$' && tmpl[1] == 'p') {
        std::size_t i = std::stoul(tmpl.substr(2));
        return i < params.size() ? params[i] : Amount(0);
    }
    if (tmpl.size() == 42 && tmpl[0] == '0' && tmpl[1] == 'x') return Address::from_hex(tmpl);
    return parse_amount(tmpl);
}

}  // namespace

Amount percent_of(const Amount& balance, unsigned pct) {
    return to_amount(Wide(balance) * pct / 100);
}

std::vector<PrimitiveCall> lower_action(const ActionSpec& spec, const WorldState& state,
                                        const Address& sender) {
    const unsigned pct = spec.percentage.value();
    switch (spec.kind) {
    case ActionKind::TransferPct: {
        Amount amount = percent_of(state.balance_of(spec.token, sender), pct);
        return {make(spec.token, "transfer", {spec.counter, amount})};
    }
    case ActionKind::RouterSwap: {
        auto router = amm::find_router(state);
        if (!router) return unexpressible();
        Amount amount = percent_of(state.balance_of(spec.token, sender), pct);
        return {make(spec.token, "approve", {*router, amount}),
                make(*router, "swapExactIn", {amount, spec.token, spec.counter})};
    }
    case ActionKind::Liquidity: {
        auto router = amm::find_router(state);
        auto it = state.pairs.find(spec.pair);
        if (!router || it == state.pairs.end()) return unexpressible();
        const auto& p = it->second;
        if (spec.add) {
            auto [a0, a1] = proportional(state, p, sender, pct);
            return {make(p.token0, "approve", {*router, a0}),
                    make(p.token1, "approve", {*router, a1}),
                    make(*router, "addLiquidity", {p.token0, p.token1, a0, a1})};
        }
        Amount lp = percent_of(state.balance_of(spec.pair, sender), pct);
        return {make(spec.pair, "approve", {*router, lp}),
                make(*router, "removeLiquidity", {p.token0, p.token1, lp})};
    }
    case ActionKind::PairSwap: {
        auto it = state.pairs.find(spec.pair);
        if (it == state.pairs.end()) return unexpressible();
        const auto& p = it->second;
        Amount out = percent_of(spec.borrow_token0 ? p.reserve0 : p.reserve1, pct);
        Amount out0 = spec.borrow_token0 ? out : Amount(0);
        Amount out1 = spec.borrow_token0 ? Amount(0) : out;
        PrimitiveCall c = make(spec.pair, "swap", {out0, out1, sender});
        if (spec.op == PairOp::Flashloan) {
            world::Callback cb;
            cb.body = spec.body;
            cb.repay_token = spec.borrow_token0 ? p.token0 : p.token1;
            cb.repay_amount = amm::flashloan_repayment(out);
            c.callback = std::move(cb);
        }
        return {c};
    }
    case ActionKind::PairMintBurn: {
        auto it = state.pairs.find(spec.pair);
        if (it == state.pairs.end()) return unexpressible();
        const auto& p = it->second;
        switch (spec.op) {
        case PairOp::Mint: {
            auto [a0, a1] = proportional(state, p, sender, pct);
            return {make(p.token0, "transfer", {spec.pair, a0}),
                    make(p.token1, "transfer", {spec.pair, a1}),
                    make(spec.pair, "mint", {sender})};
        }
        case PairOp::Burn: {
            Amount lp = percent_of(state.balance_of(spec.pair, sender), pct);
            return {make(spec.pair, "transfer", {spec.pair, lp}), make(spec.pair, "burn", {sender})};
        }
        case PairOp::Sync:
            return {make(spec.pair, "sync", {})};
        case PairOp::Skim:
            return {make(spec.pair, "skim", {sender})};
        default:
            return unexpressible();
        }
    }
    case ActionKind::Custom: {
        const world::Macro* m = state.macros.find(spec.macro);
        if (!m) return unexpressible();
        std::vector<PrimitiveCall> out;
        for (const auto& mc : m->calls) {
            std::vector<Arg> args;
            for (const auto& t : mc.args) args.push_back(resolve(t, sender, spec.params));
            out.push_back(make(mc.target, mc.function, std::move(args)));
        }
        return out;
    }
    }
    return unexpressible();
}

}  // namespace pofuzz::actions
