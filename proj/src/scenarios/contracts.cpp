#include "pofuzz/scenarios/contracts.hpp"

#include "pofuzz/world/erc20.hpp"

namespace pofuzz::scenarios {

using world::Address;
using world::CallContext;
using world::address_arg;
using world::require;
using world::uint_arg;

namespace {

const Amount kWholeToken = Amount("1000000000000000000");

void buy_tokens(CallContext& ctx, const Address& caller, const Address& self,
                const world::TokenSaleStorage& sale, const Amount& n, const Amount& value) {
    // price applies per whole token only; the fractional part is free
    Amount cost = (n / kWholeToken) * sale.price;
    require(value >= cost, "insufficient payment");
    world::erc20::transfer(ctx, sale.token, self, caller, n);
}

void vault_mint(CallContext& ctx, world::VaultStorage& vault, const Address& self,
                const Address& to, const Amount& amount) {
    Amount balance = ctx.state.balance_of(vault.token, self);
    Amount out;
    if (vault.total_shares == 0) {
        out = amount;
    } else {
        require(balance > 0, "empty vault");
        out = amount * vault.total_shares / balance;
    }
    vault.total_shares += out;
    if (out > 0) vault.shares[to] += out;
}

void vault_redeem(CallContext& ctx, const Address& caller, const Address& self,
                  const Amount& shares) {
    auto& vault = std::get<world::VaultStorage>(ctx.state.contracts.at(self));
    auto it = vault.shares.find(caller);
    require(shares > 0 && it != vault.shares.end() && it->second >= shares, "insufficient shares");
    Amount balance = ctx.state.balance_of(vault.token, self);
    Amount out = to_amount(Wide(shares) * Wide(balance) / Wide(vault.total_shares));
    it->second -= shares;
    if (it->second == 0) vault.shares.erase(it);
    vault.total_shares -= shares;
    Address token = vault.token;
    if (out > 0) world::erc20::transfer(ctx, token, self, caller, out);
}

void buy_long_token(CallContext& ctx, const Address& caller, const Address& self,
                    const Amount& amount) {
    auto front = std::get<world::VaultRouterStorage>(ctx.state.contracts.at(self));
    auto it = ctx.state.contracts.find(front.vault);
    require(it != ctx.state.contracts.end(), "no vault");
    auto* vault = std::get_if<world::VaultStorage>(&it->second);
    require(vault != nullptr && vault->router == self, "not the vault router");
    require(amount > 0, "zero amount");
    vault_mint(ctx, *vault, front.vault, caller, amount);
    world::erc20::transfer_from(ctx, front.token, self, caller, front.vault, amount);
}

void stake(CallContext& ctx, const Address& caller, const Address& self, const Amount& amount) {
    auto& pool = std::get<world::StakingPoolStorage>(ctx.state.contracts.at(self));
    Amount id = staking_id(pool.nonce, caller, amount);
    ++pool.nonce;
    pool.stakes[id] = world::Stake{caller, amount};
    Address token = pool.token;
    world::erc20::transfer(ctx, token, caller, self, amount);
}

void unstake(CallContext& ctx, const Address& caller, const Address& self, const Amount& id) {
    auto& pool = std::get<world::StakingPoolStorage>(ctx.state.contracts.at(self));
    auto it = pool.stakes.find(id);
    require(it != pool.stakes.end(), "unknown stake");
    require(it->second.owner == caller, "not the owner");
    Amount payout = it->second.amount + it->second.amount * pool.bonus_permille / 1000;
    pool.stakes.erase(it);
    Address token = pool.token;
    world::erc20::transfer(ctx, token, self, caller, payout);
}

}  // namespace

Amount staking_id(std::uint64_t nonce, const Address& owner, const Amount& amount) {
    // four independent 64-bit lanes; opaque to anyone who does not track the nonce
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ nonce;
    for (auto b : owner.bytes) h = (h ^ b) * 0x100000001b3ULL;
    std::string s = amount.str();
    for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    Amount id = 0;
    for (int lane = 0; lane < 4; ++lane) {
        h += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = h;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        id = (id << 64) | Amount(z);
    }
    return id;
}

void contract_dispatch(CallContext& ctx, const Address& caller, const Address& target,
                       const std::string& function, const std::vector<world::Arg>& args,
                       const Amount& value) {
    auto& instance = ctx.state.contracts.at(target);
    if (auto* sale = std::get_if<world::TokenSaleStorage>(&instance)) {
        require(function == "buyTokens", "unknown function");
        buy_tokens(ctx, caller, target, *sale, uint_arg(args, 0), value);
    } else if (auto* vault = std::get_if<world::VaultStorage>(&instance)) {
        if (function == "mint") {
            require(caller == vault->router, "only router");
            vault_mint(ctx, *vault, target, address_arg(args, 0), uint_arg(args, 1));
        } else if (function == "redeem") {
            vault_redeem(ctx, caller, target, uint_arg(args, 0));
        } else {
            world::revert("unknown function");
        }
    } else if (std::holds_alternative<world::VaultRouterStorage>(instance)) {
        require(function == "buyLongToken", "unknown function");
        buy_long_token(ctx, caller, target, uint_arg(args, 0));
    } else if (std::holds_alternative<world::StakingPoolStorage>(instance)) {
        if (function == "stake") {
            stake(ctx, caller, target, uint_arg(args, 0));
        } else if (function == "unstake") {
            unstake(ctx, caller, target, uint_arg(args, 0));
        } else {
            world::revert("unknown function");
        }
    } else {
        world::revert("unknown function");
    }
}

}  // namespace pofuzz::scenarios
