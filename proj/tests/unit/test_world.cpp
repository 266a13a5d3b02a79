#include "support.hpp"

#include "pofuzz/world/digest.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace support;

namespace {

scenarios::Scenario fee_token() {
    return scenarios::parse_scenario(R"(name: fee
tokens:
  - symbol: F
    balances:
      attacker: 100
    fee:
      rate_permille: 100
      destroy: burn
      pairs: [F/USD]
  - symbol: USD
pairs:
  - tokens: [F, USD]
    reserves: [1000000, 1000000]
contracts:
  - name: router
    kind: router
pricing_tokens: [USD]
)");
}

}  // namespace

TEST(Amount, ParsesDecimalAndHex) {
    EXPECT_EQ(parse_amount("1000"), Amount(1000));
    EXPECT_EQ(parse_amount("0xff"), Amount(255));
    EXPECT_THROW(parse_amount("12a"), std::invalid_argument);
    EXPECT_THROW(parse_amount(""), std::invalid_argument);
    // 2^256 itself does not fit
    EXPECT_THROW(parse_amount("115792089237316195423570985008687907853269984665640564039457584007913129639936"),
                 std::out_of_range);
}

TEST(Amount, CheckedArithmeticThrows) {
    Amount top = max_amount();
    EXPECT_THROW(top + 1, std::overflow_error);
    EXPECT_THROW(Amount(0) - Amount(1), std::range_error);
    EXPECT_THROW(to_amount(Signed(-1)), std::out_of_range);
    EXPECT_THROW(to_amount(Wide(top) + 1), std::out_of_range);
}

TEST(Amount, IsqrtIsFloor) {
    EXPECT_EQ(isqrt(Wide(400000000)), Amount(20000));
    EXPECT_EQ(isqrt(Wide(15)), Amount(3));
    EXPECT_EQ(isqrt(Wide(0)), Amount(0));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        Wide n = Wide(rng()) * Wide(rng()) * Wide(rng());
        Wide r = Wide(isqrt(n));
        EXPECT_LE(r * r, n);
        EXPECT_GT((r + 1) * (r + 1), n);
    }
}

TEST(Address, HexRoundTripAndLabels) {
    Address a = Address::from_label("attacker");
    EXPECT_EQ(Address::from_hex(a.hex()), a);
    EXPECT_EQ(Address::from_label("attacker"), a);
    EXPECT_NE(Address::from_label("victim"), a);
    EXPECT_THROW(Address::from_hex("0x12"), std::invalid_argument);
    EXPECT_TRUE(world::is_burn_sink(Address::burn()));
    EXPECT_TRUE(world::is_burn_sink(Address::zero()));
    EXPECT_FALSE(world::is_burn_sink(a));
}

TEST(Address, OrderingIsByteLexicographic) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20000; ++i) {
        Address a, b;
        for (auto& x : a.bytes) x = static_cast<std::uint8_t>(rng() % 4);
        b = a;
        // perturb one byte so prefixes are shared often
        b.bytes[rng() % 20] = static_cast<std::uint8_t>(rng() % 4);
        const bool lex = std::lexicographical_compare(a.bytes.begin(), a.bytes.end(), b.bytes.begin(), b.bytes.end());
        EXPECT_EQ(a < b, lex);
        EXPECT_EQ(a == b, a.bytes == b.bytes);
    }
}

TEST(Executor, EmptySequenceIsIdentity) {
    auto sc = market();
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {}));
    EXPECT_TRUE(r.outcomes.empty());
    EXPECT_TRUE(r.events.empty());
    EXPECT_EQ(r.final_state, sc.initial);
}

TEST(Executor, TransferMovesFundsAndEmitsOneEvent) {
    auto sc = market("1000", "1000", "100");
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {call(sc, "attacker", "X", "transfer", {"burn", 50})}));
    ASSERT_EQ(r.outcomes.size(), 1u);
    EXPECT_TRUE(r.outcomes[0].returned());
    EXPECT_EQ(bal(r.final_state, sc, "X", "attacker"), 50);
    EXPECT_EQ(bal(r.final_state, sc, "X", "burn"), 50);
    ASSERT_EQ(r.events.size(), 1u);
    EXPECT_EQ(r.events[0].amount, 50);
}

TEST(Executor, RevertRestoresState) {
    auto sc = market("1000", "1000", "100");
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {call(sc, "attacker", "X", "transfer", {"burn", 200})}));
    ASSERT_EQ(r.outcomes.size(), 1u);
    EXPECT_TRUE(r.outcomes[0].reverted);
    EXPECT_EQ(r.outcomes[0].reason, "insufficient balance");
    EXPECT_EQ(r.final_state, sc.initial);
    EXPECT_TRUE(r.events.empty());
}

TEST(Executor, RevertDoesNotStopTheSequence) {
    auto sc = market("1000", "1000", "100");
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {call(sc, "attacker", "X", "transfer", {"burn", 200}),
                                                         call(sc, "attacker", "X", "transfer", {"burn", 30})}));
    ASSERT_EQ(r.outcomes.size(), 2u);
    EXPECT_TRUE(r.outcomes[0].reverted);
    EXPECT_TRUE(r.outcomes[1].returned());
    EXPECT_EQ(bal(r.final_state, sc, "X", "attacker"), 70);
    EXPECT_EQ(r.dead_mask(2), 1u);
}

TEST(Executor, RepeatsRunUntilTheFirstRevert) {
    auto sc = market("1000", "1000", "100");
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {call(sc, "attacker", "X", "transfer", {"burn", 30}, 5)}));
    ASSERT_EQ(r.outcomes.size(), 5u);
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(r.outcomes[i].returned()) << i;
    for (int i = 3; i < 5; ++i) EXPECT_TRUE(r.outcomes[i].reverted) << i;
    EXPECT_EQ(bal(r.final_state, sc, "X", "attacker"), 10);
    EXPECT_EQ(r.events.size(), 3u);
    for (std::size_t i = 0; i < r.events.size(); ++i) EXPECT_EQ(r.events[i].exec_index, i);
    EXPECT_EQ(r.dead_mask(1), 0u);
}

TEST(Executor, RejectsOverlongSequences) {
    auto sc = market("1000", "1000", "100");
    world::Executor ex;
    std::vector<Transaction> txs(17, call(sc, "attacker", "X", "transfer", {"burn", 1}));
    EXPECT_THROW(ex.execute_sequence(sc.initial, seq_of(sc, txs)), std::invalid_argument);
}

TEST(Executor, ExecutionIsPure) {
    auto sc = market("1000", "1000", "100");
    const auto before = world::state_digest(sc.initial);
    world::Executor ex;
    auto s = seq_of(sc, {call(sc, "attacker", "X", "transfer", {"burn", 30}, 3)});
    auto r1 = ex.execute_sequence(sc.initial, s);
    auto r2 = ex.execute_sequence(sc.initial, s);
    EXPECT_EQ(world::state_digest(sc.initial), before);
    EXPECT_EQ(r1.final_state, r2.final_state);
    EXPECT_EQ(r1.events, r2.events);
    EXPECT_EQ(r1.outcomes, r2.outcomes);
}

TEST(Erc20, ApproveThenTransferFromConsumesAllowance) {
    auto sc = market("1000", "1000", "100");
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial,
                                 seq_of(sc, {call(sc, "attacker", "X", "approve", {"router", 100}),
                                             call(sc, "router", "X", "transferFrom", {"attacker", "burn", 100})}));
    EXPECT_TRUE(r.outcomes[1].returned());
    EXPECT_EQ(r.final_state.tokens.at(sc.resolve("X")).allowance(sc.resolve("attacker"), sc.resolve("router")), 0);
    EXPECT_EQ(bal(r.final_state, sc, "X", "burn"), 100);
}

TEST(Erc20, TransferFromBeyondAllowanceReverts) {
    auto sc = market("1000", "1000", "100");
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial,
                                 seq_of(sc, {call(sc, "attacker", "X", "approve", {"router", 10}),
                                             call(sc, "router", "X", "transferFrom", {"attacker", "burn", 11})}));
    EXPECT_TRUE(r.outcomes[1].reverted);
    EXPECT_EQ(r.outcomes[1].reason, "insufficient allowance");
}

TEST(Erc20, FeeTokenCannotSellWholeBalance) {
    auto sc = fee_token();
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {call(sc, "attacker", "F", "transfer", {"F/USD", 100})}));
    EXPECT_TRUE(r.outcomes[0].reverted);
    EXPECT_EQ(r.final_state, sc.initial);
}

TEST(Erc20, FeeTokenChargesOnTop) {
    auto sc = fee_token();
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {call(sc, "attacker", "F", "transfer", {"F/USD", 90})}));
    ASSERT_TRUE(r.outcomes[0].returned());
    EXPECT_EQ(bal(r.final_state, sc, "F", "attacker"), 1);
    EXPECT_EQ(bal(r.final_state, sc, "F", "burn"), 9);
    EXPECT_EQ(bal(r.final_state, sc, "F", "F/USD") - bal(sc.initial, sc, "F", "F/USD"), 90);
}

TEST(Erc20, FeeOnlyOnPairBoundTransfers) {
    auto sc = fee_token();
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {call(sc, "attacker", "F", "transfer", {Address::from_label("victim"), 100})}));
    ASSERT_TRUE(r.outcomes[0].returned());
    EXPECT_EQ(r.final_state.balance_of(sc.resolve("F"), Address::from_label("victim")), 100);
}

TEST(Erc20, ZeroTransferAndUnknownFunctionRevert) {
    auto sc = market("1000", "1000", "100");
    world::Executor ex;
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {call(sc, "attacker", "X", "transfer", {"burn", 0}),
                                                         call(sc, "attacker", "X", "mint", {"attacker", 5})}));
    EXPECT_EQ(r.outcomes[0].reason, "zero transfer");
    EXPECT_EQ(r.outcomes[1].reason, "unknown function");
}

TEST(Erc20, ArgumentKindMismatchReverts) {
    auto sc = market("1000", "1000", "100");
    world::Executor ex;
    auto tx = world::raw_tx(sc.attacker, sc.resolve("X"), "transfer", {Amount(5), Amount(5)});
    auto r = ex.execute_sequence(sc.initial, seq_of(sc, {tx}));
    EXPECT_EQ(r.outcomes[0].reason, "argument type mismatch");
}

TEST(Snapshot, RestoreEqualsOriginal) {
    auto sc = market("1000", "1000", "100", "100");
    auto snap = world::snapshot(sc.initial);
    world::Executor ex;
    auto r = ex.execute_sequence(snap.view(), seq_of(sc, {call(sc, "attacker", "X", "transfer", {"burn", 30})}));
    EXPECT_NE(r.final_state, sc.initial);
    EXPECT_EQ(snap.restore(), sc.initial);
    EXPECT_EQ(world::snapshot(sc.initial).restore(), snap.restore());
    EXPECT_EQ(world::snapshot(world::WorldState{}).restore(), world::WorldState{});
}

TEST(Digest, DistinguishesAmountsAndAddresses) {
    world::Digest a, b, c;
    a.add(Amount(1));
    b.add(Amount(2));
    c.add(Address::from_label("x"));
    EXPECT_NE(a.h, b.h);
    EXPECT_NE(a.h, c.h);
}
