#pragma once

#include "pofuzz/world/state.hpp"

#include <string>
#include <vector>

namespace pofuzz::world {

enum class ParamKind { Address, Uint };

struct FunctionSig {
    std::string name;
    std::vector<ParamKind> params;
    bool payable = false;
    bool view = false;
};

/// Callable functions of whatever lives at `target` (token, pair, router or
/// scenario contract). Empty when nothing is deployed there.
std::vector<FunctionSig> functions_at(const WorldState& state, const Address& target);

/// Signature lookup; nullptr for unknown functions.
const FunctionSig* find_function(const std::vector<FunctionSig>& table, const std::string& name);

bool is_payable(const WorldState& state, const Address& target, const std::string& function);

}  // namespace pofuzz::world
