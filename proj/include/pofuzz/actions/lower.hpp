#pragma once

#include "pofuzz/world/executor.hpp"

namespace pofuzz::actions {

/// Expands an action into primitive calls against the live state. Amounts
/// come from current balances (balance * percentage / 100). Never fails;
/// the emitted calls may still revert when executed. An action that cannot
/// be expressed in this state (unknown pair, missing router) lowers to a
/// single call that reverts.
std::vector<world::PrimitiveCall> lower_action(const ActionSpec& spec,
                                               const world::WorldState& state,
                                               const world::Address& sender);

/// balance * pct / 100 without overflow.
Amount percent_of(const Amount& balance, unsigned pct);

}  // namespace pofuzz::actions
