// Independent optima vs the numbers shipped with each scenario, then the
// optimal sequence replayed through the VM.

#include "oracles.hpp"
#include "support.hpp"

#include "pofuzz/actions/action_spec.hpp"
#include "pofuzz/oracle/accounting.hpp"

#include <gtest/gtest.h>

using namespace support;
using oracles::Int;

namespace {

Int I(const Amount& a) { return Int(a.str()); }
Amount amt(const Int& i) { return Amount(i.str()); }

Int shipped(const scenarios::Scenario& sc) {
    EXPECT_TRUE(sc.ground_truth.has_value()) << sc.name;
    return I(sc.ground_truth->optimum);
}

Int vm_profit(const scenarios::Scenario& sc, std::vector<Transaction> txs, const Address& pricing) {
    auto seq = seq_of(sc, std::move(txs));
    seq.pricing_token = pricing;
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq);
    for (const auto& o : r.outcomes) EXPECT_TRUE(o.returned()) << sc.name << ": " << o.reason;
    return Int(oracle::profit(seq, sc.initial, sc).str());
}

Int reserve_of(const scenarios::Scenario& sc, const std::string& pair, const std::string& token) {
    return I(sc.initial.balance_of(sc.resolve(token), sc.resolve(pair)));
}

}  // namespace

TEST(GroundTruth, PublicMint) {
    auto sc = scenarios::load_scenario("public_mint");
    auto best = oracles::public_mint(reserve_of(sc, "BEGO/USD", "BEGO"), reserve_of(sc, "BEGO/USD", "USD"));
    EXPECT_EQ(best.profit, shipped(sc));
    EXPECT_EQ(vm_profit(sc, {call(sc, "attacker", "BEGO", "mint", {"attacker", amt(best.amount)})}, sc.resolve("USD")),
              best.profit);
}

TEST(GroundTruth, ZeroCostBuy) {
    auto sc = scenarios::load_scenario("zero_cost_buy");
    const Int unit("1000000000000000000");
    const Int inventory("200000000000000000000");
    auto best = oracles::zero_cost_buy(inventory, unit, world::kMaxRepeat, reserve_of(sc, "SUT/USD", "SUT"),
                                       reserve_of(sc, "SUT/USD", "USD"));
    EXPECT_EQ(best.profit, shipped(sc));
    EXPECT_LT(best.per_call, unit);
    auto buy = call(sc, "attacker", "sale", "buyTokens", {amt(best.per_call)}, static_cast<std::uint32_t>(best.calls));
    EXPECT_EQ(vm_profit(sc, {buy}, sc.resolve("USD")), best.profit);
}

TEST(GroundTruth, FeeTransfer) {
    auto sc = scenarios::load_scenario("fee_transfer");
    const Int balance = I(bal(sc.initial, sc, "DFS", "attacker"));
    auto best = oracles::fee_transfer(balance, 100, reserve_of(sc, "DFS/USD", "DFS"), reserve_of(sc, "DFS/USD", "USD"));
    EXPECT_EQ(best.profit, shipped(sc));
    // the sell stays inside the 90% band the campaign has to discover
    EXPECT_LE(best.sell * 100, balance * 91);
    EXPECT_GT(best.sell * 100, balance * 90);
    const Amount s = amt(best.sell);
    Int p = vm_profit(sc,
                      {call(sc, "attacker", "DFS", "approve", {"router", s}),
                       call(sc, "attacker", "router", "swapExactIn", {s, "DFS", "USD"})},
                      sc.resolve("USD"));
    // the few leftover DFS units are liquidated on top of the oracle's single sell
    EXPECT_GE(p, best.profit);
    EXPECT_LE(p - best.profit, 10);
}

TEST(GroundTruth, RoundingVault) {
    auto sc = scenarios::load_scenario("rounding_vault");
    const Int v = 1000;
    auto best = oracles::rounding_vault(v, I(bal(sc.initial, sc, "USDC", "attacker")));
    EXPECT_EQ(best.profit, shipped(sc));
    std::vector<Transaction> txs = {
        call(sc, "attacker", "USDC", "approve", {"vault_router", 1}),
        call(sc, "attacker", "vault_router", "buyLongToken", {1}),
    };
    if (best.donation > 0) txs.push_back(call(sc, "attacker", "USDC", "transfer", {"vault", amt(best.donation)}));
    for (const auto& t : sc.victims) txs.push_back(t);
    txs.push_back(call(sc, "attacker", "vault", "redeem", {1}));
    EXPECT_EQ(vm_profit(sc, txs, sc.resolve("USDC")), best.profit);
}

TEST(GroundTruth, RoundingVaultProfitCurve) {
    // no profit without a donation; every donation in [v, 2v) takes it all
    EXPECT_EQ(oracles::vault_profit(1000, 0), 0);
    for (int d = 1000; d < 2000; d += 37) EXPECT_EQ(oracles::vault_profit(1000, d), 1000) << d;
    EXPECT_LT(oracles::vault_profit(1000, 999), 1000);
}

class PublicBurnTruth : public ::testing::TestWithParam<oracles::BurnPricing> {};

TEST_P(PublicBurnTruth, OracleMatchesVm) {
    auto sc = scenarios::load_scenario("public_burn");
    const Address usd = sc.resolve("USD"), end = sc.resolve("END");
    oracles::BurnMarket m;
    m.attacker_usd = I(bal(sc.initial, sc, "USD", "attacker"));
    m.end_usd_end = reserve_of(sc, "END/USD", "END");
    m.end_usd_usd = reserve_of(sc, "END/USD", "USD");
    m.end_wbnb_end = reserve_of(sc, "END/WBNB", "END");
    m.end_wbnb_wbnb = reserve_of(sc, "END/WBNB", "WBNB");
    m.usd_before_end = usd < end;

    const bool in_usd = GetParam() == oracles::BurnPricing::Usd;
    auto best = oracles::public_burn(m, GetParam());
    if (in_usd) EXPECT_EQ(best.profit, shipped(sc));
    EXPECT_GT(best.profit, 0);

    const std::string pool = in_usd ? "END/USD" : "END/WBNB";
    std::vector<Transaction> txs;
    if (best.pct > 0) txs.push_back(world::action_tx(sc.attacker, actions::router_swap(usd, end, best.pct)));
    txs.push_back(call(sc, "attacker", "END", "burn", {pool.c_str(), amt(best.burn)}));
    txs.push_back(call(sc, "attacker", pool, "sync", {}));
    EXPECT_EQ(vm_profit(sc, txs, sc.resolve(in_usd ? "USD" : "WBNB")), best.profit)
        << "pct " << best.pct << " burn " << best.burn;
}

INSTANTIATE_TEST_SUITE_P(Pricing, PublicBurnTruth,
                         ::testing::Values(oracles::BurnPricing::Usd, oracles::BurnPricing::Wbnb),
                         [](const auto& info) { return info.param == oracles::BurnPricing::Usd ? "USD" : "WBNB"; });

TEST(GroundTruth, ControlsHaveNone) {
    for (const char* name : {"fair_pools", "staking_id"}) {
        EXPECT_FALSE(scenarios::load_scenario(name).ground_truth.has_value()) << name;
    }
}
