#pragma once

#include "pofuzz/scenarios/scenario.hpp"
#include "pofuzz/world/executor.hpp"

#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace support {

using namespace pofuzz;
using world::Address;
using world::Transaction;
using world::TxSequence;

/// Two tokens X and USD, one X/USD pool, a router; balances as given.
inline std::string market_yaml(const std::string& pool_x = "1000", const std::string& pool_usd = "1000",
                               const std::string& attacker_x = "0", const std::string& attacker_usd = "0") {
    std::string s = "name: market\ntokens:\n  - symbol: X\n";
    if (attacker_x != "0") s += "    balances:\n      attacker: " + attacker_x + "\n";
    s += "  - symbol: USD\n";
    if (attacker_usd != "0") s += "    balances:\n      attacker: " + attacker_usd + "\n";
    s += "pairs:\n  - tokens: [X, USD]\n    reserves: [" + pool_x + ", " + pool_usd + "]\n";
    s += "contracts:\n  - name: router\n    kind: router\npricing_tokens: [USD]\n";
    return s;
}

inline scenarios::Scenario market(const std::string& pool_x = "1000", const std::string& pool_usd = "1000",
                                  const std::string& attacker_x = "0", const std::string& attacker_usd = "0") {
    return scenarios::parse_scenario(market_yaml(pool_x, pool_usd, attacker_x, attacker_usd), "market");
}

/// Raw-call argument: a scenario label or a decimal amount.
struct A {
    A(const char* label) : v(std::string(label)) {}
    A(int n) : v(Amount(n)) {}
    A(long long n) : v(Amount(n)) {}
    A(Amount n) : v(std::move(n)) {}
    A(Address a) : v(a) {}
    std::variant<std::string, Amount, Address> v;
};

inline Transaction call(const scenarios::Scenario& sc, const std::string& sender, const std::string& target,
                        const std::string& fn, std::initializer_list<A> args, std::uint32_t repeat = 1) {
    std::vector<world::Arg> out;
    for (const auto& a : args) {
        if (const auto* s = std::get_if<std::string>(&a.v)) {
            out.emplace_back(sc.resolve(*s));
        } else if (const auto* n = std::get_if<Amount>(&a.v)) {
            out.emplace_back(*n);
        } else {
            out.emplace_back(std::get<Address>(a.v));
        }
    }
    return world::raw_tx(sc.resolve(sender), sc.resolve(target), fn, std::move(out), 0, repeat);
}

inline TxSequence seq_of(const scenarios::Scenario& sc, std::vector<Transaction> txs) {
    TxSequence s;
    s.txs = std::move(txs);
    s.pricing_token = sc.pricing_tokens.front();
    return s;
}

inline const Amount& bal(const world::WorldState& st, const scenarios::Scenario& sc, const std::string& token,
                         const std::string& holder) {
    return st.balance_of(sc.resolve(token), sc.resolve(holder));
}

}  // namespace support
