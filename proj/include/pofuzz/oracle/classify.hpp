#pragma once

#include "pofuzz/oracle/fund_flow.hpp"

#include <optional>
#include <set>
#include <string_view>

namespace pofuzz::oracle {

enum class Criterion : std::uint8_t {
    PositiveProfit,
    ImbalancedPair,
    UnconditionalGain,
    UnconditionalBurn,
};

inline constexpr std::size_t kCriterionCount = 4;

std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view s);

struct PopCandidate {
    world::TxSequence seq;
    std::set<Criterion> criteria;
    std::set<std::size_t> culprit_txs;  // logical transaction indices
};

struct ClassifyOptions {
    bool positive_only = false;  // NOCDT: only the profit criterion counts
};

/// Proof-of-profit candidate check. Gain and burn are judged per logical
/// transaction: the cluster receives tokens (or, for burns, a third party's
/// tokens reach a burn sink in a transaction the cluster sent) while no
/// asset leaves the cluster in that transaction. Imbalance comes from the
/// executor's per-transaction pair tracking.
std::optional<PopCandidate> classify(const FundFlowGraph& graph,
                                     const world::ExecutionReceipt& receipt,
                                     const world::WorldState& pre_state,
                                     const world::WorldState& post_state,
                                     const std::vector<Address>& cluster,
                                     const world::TxSequence& seq, const Signed& profit,
                                     ClassifyOptions opts = {});

}  // namespace pofuzz::oracle
