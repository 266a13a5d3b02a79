#include "pofuzz/world/abi.hpp"

namespace pofuzz::world {

namespace {

using P = ParamKind;

void add_erc20(std::vector<FunctionSig>& out, const TokenConfig* cfg) {
    out.push_back({"transfer", {P::Address, P::Uint}});
    out.push_back({"approve", {P::Address, P::Uint}});
    out.push_back({"transferFrom", {P::Address, P::Address, P::Uint}});
    out.push_back({"balanceOf", {P::Address}, false, true});
    out.push_back({"totalSupply", {}, false, true});
    if (cfg && cfg->public_mint) out.push_back({"mint", {P::Address, P::Uint}});
    if (cfg && cfg->public_burn) out.push_back({"burn", {P::Address, P::Uint}});
}

struct ContractFunctions {
    std::vector<FunctionSig>& out;
    void operator()(const RouterStorage&) const {
        out.push_back({"swapExactIn", {P::Uint, P::Address, P::Address}});
        out.push_back({"addLiquidity", {P::Address, P::Address, P::Uint, P::Uint}});
        out.push_back({"removeLiquidity", {P::Address, P::Address, P::Uint}});
    }
    void operator()(const TokenSaleStorage&) const {
        out.push_back({"buyTokens", {P::Uint}, true});
    }
    void operator()(const VaultStorage&) const {
        out.push_back({"mint", {P::Address, P::Uint}});
        out.push_back({"redeem", {P::Uint}});
    }
    void operator()(const VaultRouterStorage&) const {
        out.push_back({"buyLongToken", {P::Uint}});
    }
    void operator()(const StakingPoolStorage&) const {
        out.push_back({"stake", {P::Uint}});
        out.push_back({"unstake", {P::Uint}});
    }
};

}  // namespace

std::vector<FunctionSig> functions_at(const WorldState& state, const Address& target) {
    std::vector<FunctionSig> out;
    if (state.is_pair(target)) {
        add_erc20(out, nullptr);
        out.push_back({"swap", {P::Uint, P::Uint, P::Address}});
        out.push_back({"mint", {P::Address}});
        out.push_back({"burn", {P::Address}});
        out.push_back({"sync", {}});
        out.push_back({"skim", {P::Address}});
        return out;
    }
    if (auto it = state.tokens.find(target); it != state.tokens.end()) {
        add_erc20(out, it->second.config.get());
        return out;
    }
    if (auto it = state.contracts.find(target); it != state.contracts.end()) {
        std::visit(ContractFunctions{out}, it->second);
    }
    return out;
}

const FunctionSig* find_function(const std::vector<FunctionSig>& table, const std::string& name) {
    for (const auto& f : table) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

bool is_payable(const WorldState& state, const Address& target, const std::string& function) {
    auto table = functions_at(state, target);
    const auto* f = find_function(table, function);
    return f && f->payable;
}

}  // namespace pofuzz::world
