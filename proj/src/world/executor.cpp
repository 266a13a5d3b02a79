#include "pofuzz/world/executor.hpp"

#include "pofuzz/actions/lower.hpp"
#include "pofuzz/amm/pair.hpp"
#include "pofuzz/amm/router.hpp"
#include "pofuzz/scenarios/contracts.hpp"
#include "pofuzz/world/abi.hpp"
#include "pofuzz/world/erc20.hpp"

#include <stdexcept>

namespace pofuzz::world {

namespace {

constexpr int kMaxDepth = 8;

void run_once(CallContext& ctx, const Transaction& tx) {
    if (const auto* raw = std::get_if<RawCall>(&tx.call)) {
        ctx.call(tx.sender, raw->target, raw->function, raw->args, tx.value);
        return;
    }
    require(tx.value == 0, "action is not payable");
    const auto& spec = std::get<actions::ActionSpec>(tx.call);
    for (const auto& c : actions::lower_action(spec, ctx.state, tx.sender)) ctx.call(tx.sender, c);
}

/// Pairs whose stored reserves differ from balances after the transaction,
/// or whose k per LP share went down relative to `before` (plain liquidity
/// removal lowers k but not k / supply^2).
std::vector<Address> imbalanced(const WorldState& before, const WorldState& after) {
    using Huge = bmp::number<bmp::cpp_int_backend<1536, 1536, bmp::unsigned_magnitude, bmp::unchecked, void>>;
    std::vector<Address> out;
    for (const auto& [addr, p] : after.pairs) {
        auto [b0, b1] = amm::pair_balances(after, addr);
        bool flag = b0 != p.reserve0 || b1 != p.reserve1;
        auto it = before.pairs.find(addr);
        if (!flag && it != before.pairs.end()) {
            Huge s0 = Huge(before.tokens.at(addr).total_supply);
            Huge s1 = Huge(after.tokens.at(addr).total_supply);
            Huge k0 = Huge(it->second.reserve0) * Huge(it->second.reserve1);
            Huge k1 = Huge(p.reserve0) * Huge(p.reserve1);
            flag = k1 * s0 * s0 < k0 * s1 * s1;
        }
        if (flag) out.push_back(addr);
    }
    return out;
}

}  // namespace

void revert(const std::string& reason) { throw Revert(reason); }

const Address& address_arg(const std::vector<Arg>& args, std::size_t i) {
    if (i >= args.size()) revert("missing argument");
    const auto* a = std::get_if<Address>(&args[i]);
    if (!a) revert("argument type mismatch");
    return *a;
}

const Amount& uint_arg(const std::vector<Arg>& args, std::size_t i) {
    if (i >= args.size()) revert("missing argument");
    const auto* v = std::get_if<Amount>(&args[i]);
    if (!v) revert("argument type mismatch");
    return *v;
}

Transaction raw_tx(const Address& sender, const Address& target, std::string function,
                   std::vector<Arg> args, Amount value, std::uint32_t repeat) {
    Transaction tx;
    tx.sender = sender;
    tx.call = RawCall{target, std::move(function), std::move(args)};
    tx.value = std::move(value);
    tx.repeat = repeat;
    return tx;
}

Transaction action_tx(const Address& sender, actions::ActionSpec spec, std::uint32_t repeat) {
    Transaction tx;
    tx.sender = sender;
    tx.call = std::move(spec);
    tx.repeat = repeat;
    return tx;
}

std::uint64_t ExecutionReceipt::dead_mask(std::size_t tx_count) const {
    std::uint64_t alive = 0;
    std::uint64_t seen = 0;
    for (const auto& o : outcomes) {
        if (o.tx_index >= 64) continue;
        seen |= 1ULL << o.tx_index;
        if (!o.reverted) alive |= 1ULL << o.tx_index;
    }
    std::uint64_t all = tx_count >= 64 ? ~0ULL : ((1ULL << tx_count) - 1);
    return seen & ~alive & all;
}

void CallContext::emit(const Address& token, const Address& from, const Address& to,
                       const Amount& amount) {
    if (amount == 0) return;
    events_.push_back(TransferEvent{token, from, to, amount, tx_index_, exec_index_});
}

void CallContext::call(const Address& caller, const PrimitiveCall& c) {
    require(depth_ < kMaxDepth, "call depth exceeded");
    ++depth_;
    struct Leave {
        int& d;
        ~Leave() { --d; }
    } leave{depth_};

    if (c.value > 0) {
        require(is_payable(state, c.target, c.function), "not payable");
        const Amount& have = state.native_balance(caller);
        require(have >= c.value, "insufficient native balance");
        Amount rest = have - c.value;
        if (rest == 0) {
            state.native_balances.erase(caller);
        } else {
            state.native_balances[caller] = rest;
        }
        state.native_balances[c.target] += c.value;
        emit(Address::native(), caller, c.target, c.value);
    }

    const Callback* cb = c.callback ? &*c.callback : nullptr;
    if (state.is_pair(c.target)) {
        amm::pair_dispatch(*this, caller, c.target, c.function, c.args, cb);
        return;
    }
    require(cb == nullptr, "callback only on pair swap");
    if (state.is_token(c.target)) {
        erc20::dispatch(*this, caller, c.target, c.function, c.args);
        return;
    }
    auto it = state.contracts.find(c.target);
    require(it != state.contracts.end(), "no contract at target");
    if (std::holds_alternative<RouterStorage>(it->second)) {
        amm::router_dispatch(*this, caller, c.target, c.function, c.args);
        return;
    }
    scenarios::contract_dispatch(*this, caller, c.target, c.function, c.args, c.value);
}

void CallContext::call(const Address& caller, const Address& target, const std::string& function,
                       const std::vector<Arg>& args, const Amount& value) {
    PrimitiveCall c;
    c.target = target;
    c.function = function;
    c.args = args;
    c.value = value;
    call(caller, c);
}

void CallContext::run_nested(const Transaction& tx) {
    require(depth_ < kMaxDepth, "call depth exceeded");
    ++depth_;
    struct Leave {
        int& d;
        ~Leave() { --d; }
    } leave{depth_};
    for (std::uint32_t r = 0; r < tx.repeat; ++r) run_once(*this, tx);
}

std::size_t Executor::apply(WorldState& state, const Transaction& tx, std::size_t tx_index,
                            ExecutionReceipt& receipt) const {
    const std::uint32_t reps = tx.repeat == 0 ? 1 : std::min(tx.repeat, kMaxRepeat);
    // one backup per transaction; a revert at repetition r restores it and
    // replays the r repetitions that returned (execution is deterministic)
    const WorldState backup = state;
    const std::size_t mark = receipt.events.size();
    const std::size_t first = receipt.outcomes.size();
    std::uint32_t returned = 0;
    TxOutcome failed;
    for (std::uint32_t r = 0; r < reps; ++r) {
        CallContext ctx(state, receipt.events, tx_index, first + r);
        try {
            run_once(ctx, tx);
            ++returned;
            continue;
        } catch (const Revert& e) {
            failed.reason = e.what();
        } catch (const std::overflow_error&) {
            failed.reason = "arithmetic overflow";
        } catch (const std::range_error&) {
            failed.reason = "arithmetic underflow";
        } catch (const std::out_of_range&) {
            failed.reason = "arithmetic overflow";
        }
        failed.reverted = true;
        break;
    }
    if (failed.reverted) {
        state = backup;
        receipt.events.resize(mark);
        for (std::uint32_t k = 0; k < returned; ++k) {
            CallContext ctx(state, receipt.events, tx_index, first + k);
            run_once(ctx, tx);
        }
    }
    receipt.outcomes.reserve(first + reps);
    for (std::uint32_t r = 0; r < reps; ++r) {
        TxOutcome out = r < returned ? TxOutcome{} : failed;
        out.tx_index = tx_index;
        out.repeat_index = r;
        out.sender = tx.sender;
        receipt.outcomes.push_back(std::move(out));
    }
    if (returned > 0 && cfg_.track_pairs) {
        receipt.outcomes[first + returned - 1].imbalanced_pairs = imbalanced(backup, state);
    }
    return returned;
}

ExecutionReceipt Executor::execute_sequence(const WorldState& state, const TxSequence& seq) const {
    if (seq.size() > cfg_.max_sequence) {
        throw std::invalid_argument("sequence longer than the configured maximum");
    }
    ExecutionReceipt receipt;
    receipt.final_state = state;
    for (std::size_t i = 0; i < seq.txs.size(); ++i) apply(receipt.final_state, seq.txs[i], i, receipt);
    return receipt;
}

}  // namespace pofuzz::world
