#include "pofuzz/scenarios/scenario.hpp"

#include <array>
#include <utility>

namespace pofuzz::scenarios {

namespace {

// bego: mint() has no access control
constexpr const char* kPublicMint = R"(name: public_mint
description: Anyone can mint BEGO; minted tokens are sold into the BEGO/USD pool.
tokens:
  - symbol: BEGO
    public_mint: true
  - symbol: USD
pairs:
  - tokens: [BEGO, USD]
    reserves: [1000000, 1000000]
contracts:
  - name: router
    kind: router
pricing_tokens: [USD]
ground_truth:
  optimum: 999999
  oracle: golden-section search over log-spaced mint amounts on the exact integer profit
  threshold_permille: 990
)";

// sut: price charged per whole token, so any amount below 1e18 is free
constexpr const char* kZeroCostBuy = R"(name: zero_cost_buy
description: buyTokens(n) charges (n / 1e18) * price; repeated sub-unit buys cost nothing.
tokens:
  - symbol: SUT
  - symbol: USD
pairs:
  - tokens: [SUT, USD]
    reserves: [100e18, 1e12]
contracts:
  - name: router
    kind: router
  - name: sale
    kind: token_sale
    token: SUT
    price: 1e15
    inventory: 200e18
pricing_tokens: [USD]
ground_truth:
  optimum: 665998663994
  oracle: exhaustive over repeat counts and per-call amounts up to 1e18 - 1
  threshold_permille: 990
)";

// dfs: the fee comes on top of the amount sent to the pair
constexpr const char* kFeeTransfer = R"(name: fee_transfer
description: Transfers to the DFS/USD pair debit amount plus a 10% fee, so a full sell always reverts.
tokens:
  - symbol: DFS
    balances:
      attacker: 100e18
    fee:
      rate_permille: 100
      destroy: burn
      pairs: [DFS/USD]
      exempt: [DFS/USD]
  - symbol: USD
pairs:
  - tokens: [DFS, USD]
    reserves: [1e22, 1e10]
contracts:
  - name: router
    kind: router
pricing_tokens: [USD]
ground_truth:
  optimum: 89822247
  oracle: largest sellable amount s with s + s/10 <= balance, sold in one swap
  threshold_permille: 0
)";

// enderv1: burn(from, value) without an allowance check
constexpr const char* kPublicBurn = R"(name: public_burn
description: Anyone can burn anyone's END; burning the pool's END and syncing reprices it.
tokens:
  - symbol: END
    public_burn: true
  - symbol: USD
    balances:
      attacker: 1e7
  - symbol: WBNB
pairs:
  - tokens: [END, USD]
    reserves: [1e9, 1e9]
  - tokens: [END, WBNB]
    reserves: [1e9, 1e9]
contracts:
  - name: router
    kind: router
pricing_tokens: [USD, WBNB]
ground_truth:
  optimum: 999999897
  oracle: grid over buy percentage x burn fraction, refined locally around the best cell
  threshold_permille: 950
)";

// ethosx: first depositor inflates the share price before the victim deposits
constexpr const char* kRoundingVault = R"(name: rounding_vault
description: Vault shares are floor(amount * shares / balance) and the router mints before it pulls tokens.
tokens:
  - symbol: USDC
    balances:
      attacker: 2000
      victim: 1000
contracts:
  - name: vault
    kind: vault
    token: USDC
    router: vault_router
  - name: vault_router
    kind: vault_router
    vault: vault
    token: USDC
macros:
  - name: buy_long
    params: 1
    calls:
      - target: USDC
        function: approve
        args: [vault_router, $p0]
      - target: vault_router
        function: buyLongToken
        args: [$p0]
victims:
  - sender: victim
    target: USDC
    function: approve
    args: [vault_router, 1000]
  - sender: victim
    target: vault_router
    function: buyLongToken
    args: [1000]
pricing_tokens: [USDC]
ground_truth:
  optimum: 1000
  oracle: brute force over donation d in [0, 2v], first deposit 1
  threshold_permille: 1000
)";

constexpr const char* kFairPools = R"(name: fair_pools
description: Plain pool and router with no hooks; nothing should be profitable.
tokens:
  - symbol: X
  - symbol: USD
    balances:
      attacker: 100000
pairs:
  - tokens: [X, USD]
    reserves: [1000000, 1000000]
contracts:
  - name: router
    kind: router
pricing_tokens: [USD]
)";

constexpr const char* kStakingId = R"(name: staking_id
description: Unstaking needs the opaque id returned by stake(); out of reach for blind search.
expected_failure: true
tokens:
  - symbol: USD
    balances:
      attacker: 100000
  - symbol: X
pairs:
  - tokens: [X, USD]
    reserves: [1000000, 1000000]
contracts:
  - name: router
    kind: router
  - name: staking
    kind: staking_pool
    token: USD
    bonus_permille: 100
    funding: 1000000
pricing_tokens: [USD]
)";

constexpr std::array<std::pair<const char*, const char*>, 7> kSources = {{
    {"public_mint", kPublicMint},
    {"zero_cost_buy", kZeroCostBuy},
    {"fee_transfer", kFeeTransfer},
    {"public_burn", kPublicBurn},
    {"rounding_vault", kRoundingVault},
    {"fair_pools", kFairPools},
    {"staking_id", kStakingId},
}};

constexpr std::size_t kCorpusSize = 5;

}  // namespace

std::vector<std::string> builtin_names() {
    std::vector<std::string> out;
    for (const auto& [n, src] : kSources) out.emplace_back(n);
    return out;
}

std::optional<std::string> builtin_source(const std::string& name) {
    for (const auto& [n, src] : kSources) {
        if (name == n) return std::string(src);
    }
    return std::nullopt;
}

std::vector<Scenario> builtin_corpus() {
    std::vector<Scenario> out;
    for (std::size_t i = 0; i < kCorpusSize; ++i) out.push_back(parse_scenario(kSources[i].second, kSources[i].first));
    return out;
}

std::vector<Scenario> builtin_controls() {
    std::vector<Scenario> out;
    for (std::size_t i = kCorpusSize; i < kSources.size(); ++i) {
        out.push_back(parse_scenario(kSources[i].second, kSources[i].first));
    }
    return out;
}

}  // namespace pofuzz::scenarios
