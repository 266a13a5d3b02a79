#include "pofuzz/actions/mutator.hpp"

#include "pofuzz/amm/router.hpp"

#include <algorithm>
#include <set>

namespace pofuzz::actions {

using world::Address;
using world::Transaction;
using world::TxSequence;

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

namespace {

Amount random_bits(Rng& rng, unsigned bits) {
    Amount v = 0;
    for (unsigned done = 0; done < bits; done += 64) {
        unsigned take = std::min(64u, bits - done);
        std::uint64_t w = rng();
        if (take < 64) w &= (1ULL << take) - 1;
        v = (v << take) | Amount(w);
    }
    return v;
}

constexpr std::array<std::string_view, 5> kOpNames = {"insert_action", "delete_tx", "mutate_args",
                                                      "insert_raw_call", "mutate_pricing_token"};

}  // namespace

std::string_view to_string(MutationOp op) { return kOpNames.at(static_cast<std::size_t>(op)); }

Amount log_uniform_amount(Rng& rng) {
    unsigned bits = static_cast<unsigned>(uniform_index(rng, 257));
    if (bits == 0) return 0;
    // top bit set, the rest uniform
    Amount top = Amount(1) << (bits - 1);
    return top | random_bits(rng, bits - 1);
}

Amount uniform_amount(Rng& rng) { return random_bits(rng, 256); }

Amount log_uniform_in(Rng& rng, const Amount& lo, const Amount& hi) {
    if (lo >= hi) return lo;
    Amount span = hi - lo;
    unsigned max_bits = static_cast<unsigned>(msb(span)) + 1;
    unsigned bits = static_cast<unsigned>(uniform_index(rng, max_bits + 1));
    Amount off = bits == 0 ? Amount(0) : ((Amount(1) << (bits - 1)) | random_bits(rng, bits - 1));
    if (off > span) off = span;
    return lo + off;
}

Mutator::Mutator(const scenarios::Scenario& sc, MutatorConfig cfg) : sc_(sc), cfg_(cfg) {
    const auto& u = sc.universe;
    has_router_ = amm::find_router(sc.initial).has_value();
    everyone_ = u.all();
    transferable_ = u.tokens;
    transferable_.insert(transferable_.end(), u.pairs.begin(), u.pairs.end());
    if (sc.initial.macros.entries) {
        for (const auto& [name, m] : *sc.initial.macros.entries) macro_names_.push_back(name);
    }
    std::set<Address> targets(u.raw_targets.begin(), u.raw_targets.end());
    targets.insert(u.pairs.begin(), u.pairs.end());
    if (auto r = amm::find_router(sc.initial)) targets.insert(*r);
    for (const auto& t : targets) {
        bool callable = false;
        for (const auto& f : world::functions_at(sc.initial, t)) callable |= !f.view;
        if (callable) noact_targets_.push_back(t);
    }

    std::set<Amount> dict;
    for (const auto& [addr, ledger] : sc.initial.tokens) {
        dict.insert(ledger.total_supply);
        for (const auto& [h, b] : ledger.balances) dict.insert(b);
    }
    for (const auto& [addr, b] : sc.initial.native_balances) dict.insert(b);
    dict.erase(Amount(0));
    dictionary_.assign(dict.begin(), dict.end());

    choices_.push_back(Choice::A1);
    if (has_router_ && !u.pairs.empty()) {
        choices_.push_back(Choice::A2);
        choices_.push_back(Choice::A3);
    }
    if (!u.pairs.empty()) {
        choices_.push_back(Choice::A4);
        choices_.push_back(Choice::A5);
    }
    if (!macro_names_.empty()) choices_.push_back(Choice::Custom);
    choices_.push_back(Choice::Raw);
}

const Address& Mutator::pick(const std::vector<Address>& v, Rng& rng) const {
    return v.at(uniform_index(rng, v.size()));
}

world::Arg Mutator::random_arg(world::ParamKind k, Rng& rng, bool uniform) const {
    if (k == world::ParamKind::Address) return pick(everyone_, rng);
    if (uniform) return uniform_amount(rng);
    if (!dictionary_.empty() && uniform_index(rng, 4) == 0) {
        // a state amount scaled by 1..1000 permille
        const Amount& d = dictionary_[uniform_index(rng, dictionary_.size())];
        Amount v = to_amount(Wide(d) * (1 + uniform_index(rng, 1000)) / 1000);
        return v == 0 ? d : v;
    }
    return log_uniform_amount(rng);
}

ActionSpec Mutator::random_spec(Choice c, Rng& rng, bool allow_flashloan) const {
    const auto& u = sc_.universe;
    auto pct = [&] { return static_cast<unsigned>(uniform_index(rng, 101)); };
    switch (c) {
    case Choice::A1:
        return transfer_pct(pick(transferable_, rng), pick(everyone_, rng), pct());
    case Choice::A2: {
        const auto& p = sc_.initial.pairs.at(pick(u.pairs, rng));
        bool zero_in = uniform_index(rng, 2) == 0;
        return router_swap(zero_in ? p.token0 : p.token1, zero_in ? p.token1 : p.token0, pct());
    }
    case Choice::A3:
        return liquidity(pick(u.pairs, rng), uniform_index(rng, 2) == 0, pct());
    case Choice::A4: {
        const Address& pair = pick(u.pairs, rng);
        bool side = uniform_index(rng, 2) == 0;
        if (!allow_flashloan || uniform_index(rng, 2) == 0) return pair_swap(pair, side, pct());
        std::vector<Transaction> body;
        std::size_t n = uniform_index(rng, cfg_.max_body + 1);
        for (std::size_t i = 0; i < n; ++i) body.push_back(random_action(rng, false));
        return flashloan(pair, side, pct(), std::move(body));
    }
    case Choice::A5: {
        static constexpr PairOp ops[] = {PairOp::Mint, PairOp::Burn, PairOp::Sync, PairOp::Skim};
        return pair_mint_burn(pick(u.pairs, rng), ops[uniform_index(rng, 4)], pct());
    }
    case Choice::Custom: {
        const std::string& name = macro_names_.at(uniform_index(rng, macro_names_.size()));
        const world::Macro* m = sc_.initial.macros.find(name);
        std::vector<Amount> params;
        for (std::size_t i = 0; i < m->arity; ++i) params.push_back(log_uniform_amount(rng));
        return custom(name, std::move(params));
    }
    case Choice::Raw:
        break;
    }
    return transfer_pct(pick(transferable_, rng), pick(everyone_, rng), pct());
}

Transaction Mutator::random_action(Rng& rng, bool allow_flashloan) const {
    Choice c = choices_.at(uniform_index(rng, choices_.size()));
    if (c == Choice::Raw) return random_raw_call(rng, false);
    return world::action_tx(sc_.attacker, random_spec(c, rng, allow_flashloan));
}

Transaction Mutator::random_raw_call(Rng& rng, bool uniform_args) const {
    const auto& pool = uniform_args ? noact_targets_ : sc_.universe.raw_targets;
    if (pool.empty()) return world::action_tx(sc_.attacker, transfer_pct(pick(transferable_, rng), sc_.attacker, 0));
    const Address& target = pick(pool, rng);
    std::vector<world::FunctionSig> fns;
    for (auto& f : world::functions_at(sc_.initial, target)) {
        if (!f.view) fns.push_back(std::move(f));
    }
    if (fns.empty()) return world::raw_tx(sc_.attacker, target, "unavailable", {});
    const auto& f = fns.at(uniform_index(rng, fns.size()));
    std::vector<world::Arg> args;
    for (auto k : f.params) args.push_back(random_arg(k, rng, uniform_args));
    return world::raw_tx(sc_.attacker, target, f.name, std::move(args));
}

void Mutator::mutate_spec(ActionSpec& s, Rng& rng) const {
    auto pct = [&] { return Percentage(uniform_index(rng, 101)); };
    switch (s.kind) {
    case ActionKind::TransferPct:
        switch (uniform_index(rng, 3)) {
        case 0: s.percentage = pct(); break;
        case 1: s.token = pick(transferable_, rng); break;
        default: s.counter = pick(everyone_, rng); break;
        }
        return;
    case ActionKind::RouterSwap:
        if (uniform_index(rng, 4) == 0) {
            std::swap(s.token, s.counter);
        } else {
            s.percentage = pct();
        }
        return;
    case ActionKind::Liquidity:
        if (uniform_index(rng, 4) == 0) {
            s.add = !s.add;
        } else {
            s.percentage = pct();
        }
        return;
    case ActionKind::PairSwap: {
        std::uint64_t r = uniform_index(rng, s.op == PairOp::Flashloan ? 4 : 3);
        if (r == 0) {
            s.borrow_token0 = !s.borrow_token0;
        } else if (r == 3) {
            // body: add, drop or rewrite one callback action
            std::uint64_t what = uniform_index(rng, 3);
            if (what == 0 && s.body.size() < cfg_.max_body) {
                s.body.insert(s.body.begin() + static_cast<long>(uniform_index(rng, s.body.size() + 1)),
                              random_action(rng, false));
            } else if (what == 1 && !s.body.empty()) {
                s.body.erase(s.body.begin() + static_cast<long>(uniform_index(rng, s.body.size())));
            } else if (!s.body.empty()) {
                mutate_args(s.body[uniform_index(rng, s.body.size())], rng);
            } else {
                s.percentage = pct();
            }
        } else {
            s.percentage = pct();
        }
        return;
    }
    case ActionKind::PairMintBurn:
        if (uniform_index(rng, 4) == 0) {
            static constexpr PairOp ops[] = {PairOp::Mint, PairOp::Burn, PairOp::Sync, PairOp::Skim};
            s.op = ops[uniform_index(rng, 4)];
        } else {
            s.percentage = pct();
        }
        return;
    case ActionKind::Custom:
        if (!s.params.empty()) s.params[uniform_index(rng, s.params.size())] = log_uniform_amount(rng);
        return;
    }
}

void Mutator::mutate_args(Transaction& tx, Rng& rng) const {
    // one in eight mutations touches the repeat count
    if (uniform_index(rng, 8) == 0) {
        tx.repeat = static_cast<std::uint32_t>(
            log_uniform_in(rng, Amount(1), Amount(world::kMaxRepeat)).convert_to<std::uint64_t>());
        return;
    }
    if (auto* spec = std::get_if<ActionSpec>(&tx.call)) {
        mutate_spec(*spec, rng);
        return;
    }
    auto& raw = std::get<world::RawCall>(tx.call);
    const bool uniform = cfg_.no_act;
    const bool payable = world::is_payable(sc_.initial, raw.target, raw.function);
    std::size_t slots = raw.args.size() + (payable ? 1 : 0);
    if (slots == 0) {
        tx = random_raw_call(rng, uniform);
        return;
    }
    std::size_t i = uniform_index(rng, slots);
    if (i == raw.args.size()) {
        tx.value = uniform_index(rng, 2) == 0 ? Amount(0) : (uniform ? uniform_amount(rng) : log_uniform_amount(rng));
        return;
    }
    auto kind = std::holds_alternative<Address>(raw.args[i]) ? world::ParamKind::Address : world::ParamKind::Uint;
    raw.args[i] = random_arg(kind, rng, uniform);
}

MutationOp Mutator::mutate(TxSequence& seq, Rng& rng) const {
    std::uint64_t roll = uniform_index(rng, 100);
    MutationOp op = roll < 40   ? MutationOp::InsertAction
                    : roll < 80 ? MutationOp::MutateArgs
                    : roll < 95 ? MutationOp::DeleteTx
                                : MutationOp::MutatePricingToken;
    if (op == MutationOp::InsertAction && cfg_.no_act) op = MutationOp::InsertRawCall;

    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < seq.txs.size(); ++i) {
        if (!seq.txs[i].pinned) free.push_back(i);
    }
    auto insert_op = [&] { return cfg_.no_act ? MutationOp::InsertRawCall : MutationOp::InsertAction; };

    if (op == MutationOp::MutatePricingToken && sc_.pricing_tokens.size() < 2) op = MutationOp::MutateArgs;
    if (op == MutationOp::DeleteTx && (seq.txs.size() <= 1 || free.empty())) op = MutationOp::MutateArgs;
    if (op == MutationOp::MutateArgs && free.empty()) op = insert_op();
    if ((op == MutationOp::InsertAction || op == MutationOp::InsertRawCall) && seq.txs.size() >= cfg_.max_len) {
        op = free.empty() ? MutationOp::MutatePricingToken : MutationOp::MutateArgs;
    }

    switch (op) {
    case MutationOp::InsertAction:
    case MutationOp::InsertRawCall: {
        Transaction tx = op == MutationOp::InsertRawCall ? random_raw_call(rng, true) : random_action(rng);
        std::size_t pos = uniform_index(rng, seq.txs.size() + 1);
        seq.txs.insert(seq.txs.begin() + static_cast<long>(pos), std::move(tx));
        break;
    }
    case MutationOp::DeleteTx:
        seq.txs.erase(seq.txs.begin() + static_cast<long>(free[uniform_index(rng, free.size())]));
        break;
    case MutationOp::MutateArgs:
        mutate_args(seq.txs[free[uniform_index(rng, free.size())]], rng);
        break;
    case MutationOp::MutatePricingToken: {
        if (sc_.pricing_tokens.size() >= 2) {
            std::vector<Address> others;
            for (const auto& t : sc_.pricing_tokens) {
                if (t != seq.pricing_token) others.push_back(t);
            }
            seq.pricing_token = pick(others, rng);
        }
        break;
    }
    }
    return op;
}

}  // namespace pofuzz::actions
