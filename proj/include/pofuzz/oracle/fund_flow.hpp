#pragma once

#include "pofuzz/world/transaction.hpp"

#include <set>
#include <vector>

namespace pofuzz::oracle {

using world::Address;

struct FundFlowGraph {
    std::set<Address> vertices;
    std::vector<world::TransferEvent> edges;  // execution order
};

/// Graph of the transfers made by non-reverted transactions. `participants`
/// are registered as vertices even when they never move funds.
FundFlowGraph build_graph(const world::ExecutionReceipt& receipt,
                          const std::vector<Address>& participants = {});

}  // namespace pofuzz::oracle
