#include "pofuzz/oracle/accounting.hpp"

#include "pofuzz/actions/action_spec.hpp"
#include "pofuzz/amm/router.hpp"

namespace pofuzz::oracle {

namespace {

/// Runs one liquidation step; keeps it in the trace only if it returned.
void attempt(const world::Executor& exec, world::WorldState& scratch, world::Transaction tx,
             std::vector<world::Transaction>& trace) {
    world::ExecutionReceipt sink;
    if (exec.apply(scratch, tx, 0, sink) == 1) trace.push_back(std::move(tx));
}

}  // namespace

Amount holdings(const world::WorldState& state, const std::vector<Address>& cluster,
                const Address& pricing_token) {
    Amount total = 0;
    for (const auto& h : cluster) {
        if (pricing_token == Address::native()) {
            total += state.native_balance(h);
        } else {
            total += state.balance_of(pricing_token, h);
        }
    }
    return total;
}

Valuation value_state(const world::WorldState& state, const std::vector<Address>& cluster,
                      const Address& pricing_token, AccountingMode mode) {
    Valuation v;
    if (mode == AccountingMode::BalanceOnly) {
        v.value = holdings(state, cluster, pricing_token);
        return v;
    }
    world::ExecutorConfig cfg;
    cfg.track_pairs = false;
    const world::Executor exec(cfg);
    world::WorldState scratch = state;

    // withdraw
    for (const auto& h : cluster) {
        for (const auto& [pair, reserves] : state.pairs) {
            if (scratch.balance_of(pair, h) > 0) {
                attempt(exec, scratch, world::action_tx(h, actions::pair_mint_burn(pair, actions::PairOp::Burn, 100)),
                        v.trace);
            }
        }
        for (const auto& [addr, inst] : state.contracts) {
            const auto* vault = std::get_if<world::VaultStorage>(&inst);
            if (!vault) continue;
            const auto& live = std::get<world::VaultStorage>(scratch.contracts.at(addr));
            auto it = live.shares.find(h);
            if (it != live.shares.end() && it->second > 0) {
                attempt(exec, scratch, world::raw_tx(h, addr, "redeem", {it->second}), v.trace);
            }
        }
    }

    // swap: direct pairs first; a token without one goes through a single
    // intermediate token that has one, and is sold on in the second round
    const bool router = amm::find_router(scratch).has_value();
    if (router && pricing_token != Address::native()) {
        for (int round = 0; round < 2; ++round) {
            for (const auto& h : cluster) {
                for (const auto& [token, ledger] : state.tokens) {
                    if (token == pricing_token || ledger.config->is_lp) continue;
                    const Amount bal = scratch.balance_of(token, h);
                    if (bal == 0) continue;
                    if (auto pair = amm::find_pair(scratch, token, pricing_token)) {
                        auto q = amm::quote_out(scratch, *pair, token, bal);
                        if (q && *q > 0) {
                            attempt(exec, scratch, world::action_tx(h, actions::router_swap(token, pricing_token, 100)),
                                    v.trace);
                        }
                        continue;
                    }
                    if (round > 0) continue;
                    for (const auto& [pair, p] : state.pairs) {
                        if (p.token0 != token && p.token1 != token) continue;
                        const Address& mid = p.token0 == token ? p.token1 : p.token0;
                        if (!amm::find_pair(scratch, mid, pricing_token)) continue;
                        auto q = amm::quote_out(scratch, pair, token, bal);
                        if (!q || *q == 0) continue;
                        attempt(exec, scratch, world::action_tx(h, actions::router_swap(token, mid, 100)), v.trace);
                        break;
                    }
                }
            }
        }
    }
    v.value = holdings(scratch, cluster, pricing_token);
    return v;
}

AccountingReport account(const world::WorldState& initial, const world::WorldState& final_state,
                         const std::vector<Address>& cluster, const Address& pricing_token,
                         AccountingMode mode) {
    AccountingReport r;
    r.pricing_token = pricing_token;
    r.initial_value = value_state(initial, cluster, pricing_token, mode).value;
    Valuation fin = value_state(final_state, cluster, pricing_token, mode);
    r.final_value = fin.value;
    r.trace = std::move(fin.trace);
    r.profit = Signed(r.final_value) - Signed(r.initial_value);
    return r;
}

Signed profit(const world::TxSequence& seq, const world::WorldState& base,
              const scenarios::Scenario& sc, AccountingMode mode) {
    const world::Executor exec;
    world::ExecutionReceipt receipt = exec.execute_sequence(base, seq);
    Address pricing = seq.pricing_token.is_zero() ? sc.pricing_tokens.front() : seq.pricing_token;
    return account(base, receipt.final_state, sc.cluster, pricing, mode).profit;
}

}  // namespace pofuzz::oracle
