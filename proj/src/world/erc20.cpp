#include "pofuzz/world/erc20.hpp"

namespace pofuzz::world::erc20 {

namespace {

TokenLedger& ledger(CallContext& ctx, const Address& token) {
    auto it = ctx.state.tokens.find(token);
    require(it != ctx.state.tokens.end(), "not a token");
    return it->second;
}

void set_balance(TokenLedger& l, const Address& holder, const Amount& v) {
    if (v == 0) {
        l.balances.erase(holder);
    } else {
        l.balances[holder] = v;
    }
}

void debit(TokenLedger& l, const Address& holder, const Amount& amount) {
    const Amount& bal = l.balance_of(holder);
    require(bal >= amount, "insufficient balance");
    set_balance(l, holder, bal - amount);
}

void credit(TokenLedger& l, const Address& holder, const Amount& amount) {
    set_balance(l, holder, l.balance_of(holder) + amount);
}

}  // namespace

void transfer(CallContext& ctx, const Address& token, const Address& from, const Address& to,
              const Amount& amount) {
    require(amount > 0, "zero transfer");
    require(!to.is_zero(), "transfer to the zero address");
    TokenLedger& l = ledger(ctx, token);
    const auto& fee = l.config->fee;
    if (fee && (fee->bound_pairs.count(to) || fee->bound_pairs.count(from)) &&
        !fee->exempt.count(from)) {
        Amount charge = amount * fee->rate_permille / 1000;
        debit(l, from, amount + charge);
        credit(l, to, amount);
        ctx.emit(token, from, to, amount);
        if (charge > 0) {
            credit(l, fee->destroy, charge);
            ctx.emit(token, from, fee->destroy, charge);
        }
        return;
    }
    debit(l, from, amount);
    credit(l, to, amount);
    ctx.emit(token, from, to, amount);
}

void transfer_from(CallContext& ctx, const Address& token, const Address& spender,
                   const Address& from, const Address& to, const Amount& amount) {
    TokenLedger& l = ledger(ctx, token);
    Amount allowed = l.allowance(from, spender);
    require(allowed >= amount, "insufficient allowance");
    Amount rest = allowed - amount;
    if (rest == 0) {
        l.allowances.erase({from, spender});
    } else {
        l.allowances[{from, spender}] = rest;
    }
    transfer(ctx, token, from, to, amount);
}

void approve(CallContext& ctx, const Address& token, const Address& owner,
             const Address& spender, const Amount& amount) {
    TokenLedger& l = ledger(ctx, token);
    if (amount == 0) {
        l.allowances.erase({owner, spender});
    } else {
        l.allowances[{owner, spender}] = amount;
    }
}

void mint(CallContext& ctx, const Address& token, const Address& to, const Amount& amount) {
    require(amount > 0, "zero mint");
    require(!to.is_zero(), "mint to the zero address");
    TokenLedger& l = ledger(ctx, token);
    l.total_supply = l.total_supply + amount;
    credit(l, to, amount);
    ctx.emit(token, Address::zero(), to, amount);
}

void burn(CallContext& ctx, const Address& token, const Address& from, const Amount& amount) {
    require(amount > 0, "zero burn");
    TokenLedger& l = ledger(ctx, token);
    debit(l, from, amount);
    l.total_supply = l.total_supply - amount;
    ctx.emit(token, from, Address::zero(), amount);
}

void dispatch(CallContext& ctx, const Address& caller, const Address& token,
              const std::string& function, const std::vector<Arg>& args) {
    const TokenConfig& cfg = *ledger(ctx, token).config;
    if (function == "transfer") {
        transfer(ctx, token, caller, address_arg(args, 0), uint_arg(args, 1));
    } else if (function == "approve") {
        approve(ctx, token, caller, address_arg(args, 0), uint_arg(args, 1));
    } else if (function == "transferFrom") {
        transfer_from(ctx, token, caller, address_arg(args, 0), address_arg(args, 1),
                      uint_arg(args, 2));
    } else if (function == "balanceOf" || function == "totalSupply") {
        // views have no effect on state
    } else if (function == "mint" && cfg.public_mint) {
        mint(ctx, token, address_arg(args, 0), uint_arg(args, 1));
    } else if (function == "burn" && cfg.public_burn) {
        burn(ctx, token, address_arg(args, 0), uint_arg(args, 1));
    } else {
        revert("unknown function");
    }
}

}  // namespace pofuzz::world::erc20
