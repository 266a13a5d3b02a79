#pragma once

#include "pofuzz/world/executor.hpp"

namespace pofuzz::world::erc20 {

// Internal ledger operations. All revert on insufficient funds, zero amounts
// and checked-arithmetic failures.
void transfer(CallContext& ctx, const Address& token, const Address& from, const Address& to,
              const Amount& amount);
void transfer_from(CallContext& ctx, const Address& token, const Address& spender,
                   const Address& from, const Address& to, const Amount& amount);
void approve(CallContext& ctx, const Address& token, const Address& owner,
             const Address& spender, const Amount& amount);
void mint(CallContext& ctx, const Address& token, const Address& to, const Amount& amount);
void burn(CallContext& ctx, const Address& token, const Address& from, const Amount& amount);

/// Public function table: transfer, transferFrom, approve, balanceOf,
/// totalSupply, and mint / burn when the token's hooks expose them.
void dispatch(CallContext& ctx, const Address& caller, const Address& token,
              const std::string& function, const std::vector<Arg>& args);

}  // namespace pofuzz::world::erc20
