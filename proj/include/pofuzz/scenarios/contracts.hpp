#pragma once

#include "pofuzz/world/executor.hpp"

namespace pofuzz::scenarios {

/// Runs a call against a scenario contract (token sale, vault, vault
/// router, staking pool). Native value has already been credited to the
/// contract by the executor.
void contract_dispatch(world::CallContext& ctx, const world::Address& caller,
                       const world::Address& target, const std::string& function,
                       const std::vector<world::Arg>& args, const Amount& value);

/// Identifier returned by the staking pool for its n-th stake.
Amount staking_id(std::uint64_t nonce, const world::Address& owner, const Amount& amount);

}  // namespace pofuzz::scenarios
