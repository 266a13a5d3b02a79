#include "pofuzz/world/state.hpp"

#include "pofuzz/world/digest.hpp"

namespace pofuzz::world {

namespace {

const Amount& zero_amount() {
    static const Amount z{0};
    return z;
}

}  // namespace

const Amount& TokenLedger::balance_of(const Address& holder) const {
    auto it = balances.find(holder);
    return it == balances.end() ? zero_amount() : it->second;
}

Amount TokenLedger::allowance(const Address& owner, const Address& spender) const {
    auto it = allowances.find({owner, spender});
    return it == allowances.end() ? Amount(0) : it->second;
}

bool TokenLedger::operator==(const TokenLedger& o) const {
    bool same_config = config == o.config || (config && o.config && *config == *o.config);
    return same_config && total_supply == o.total_supply && balances == o.balances &&
           allowances == o.allowances;
}

const Amount& WorldState::balance_of(const Address& token, const Address& holder) const {
    auto it = tokens.find(token);
    return it == tokens.end() ? zero_amount() : it->second.balance_of(holder);
}

const Amount& WorldState::native_balance(const Address& holder) const {
    auto it = native_balances.find(holder);
    return it == native_balances.end() ? zero_amount() : it->second;
}

Amount WorldState::sum_of_balances(const Address& token) const {
    Wide sum = 0;
    auto it = tokens.find(token);
    if (it == tokens.end()) return Amount(0);
    for (const auto& [holder, bal] : it->second.balances) sum += Wide(bal);
    return to_amount(sum);
}

const Macro* MacroTable::find(const std::string& name) const {
    if (!entries) return nullptr;
    auto it = entries->find(name);
    return it == entries->end() ? nullptr : &it->second;
}

bool MacroTable::operator==(const MacroTable& o) const {
    if (entries == o.entries) return true;
    if (size() != o.size()) return false;
    if (size() == 0) return true;
    return *entries == *o.entries;
}

Snapshot snapshot(const WorldState& state) { return Snapshot(state); }

std::uint64_t state_digest(const WorldState& state) {
    Digest d;
    for (const auto& [addr, ledger] : state.tokens) {
        d.add(addr);
        d.add(ledger.total_supply);
        for (const auto& [h, b] : ledger.balances) {
            d.add(h);
            d.add(b);
        }
        for (const auto& [k, v] : ledger.allowances) {
            d.add(k.first);
            d.add(k.second);
            d.add(v);
        }
    }
    for (const auto& [addr, p] : state.pairs) {
        d.add(addr);
        d.add(p.reserve0);
        d.add(p.reserve1);
    }
    for (const auto& [addr, c] : state.contracts) {
        d.add(addr);
        d.add(static_cast<std::uint64_t>(c.index()));
        if (const auto* v = std::get_if<VaultStorage>(&c)) {
            d.add(v->total_shares);
            for (const auto& [h, s] : v->shares) {
                d.add(h);
                d.add(s);
            }
        } else if (const auto* sp = std::get_if<StakingPoolStorage>(&c)) {
            d.add(sp->nonce);
            for (const auto& [id, st] : sp->stakes) {
                d.add(id);
                d.add(st.owner);
                d.add(st.amount);
            }
        }
    }
    for (const auto& [addr, b] : state.native_balances) {
        d.add(addr);
        d.add(b);
    }
    d.add(state.block_number);
    return d.h;
}

}  // namespace pofuzz::world
