#include "pofuzz/oracle/fund_flow.hpp"

namespace pofuzz::oracle {

FundFlowGraph build_graph(const world::ExecutionReceipt& receipt,
                          const std::vector<Address>& participants) {
    FundFlowGraph g;
    g.vertices.insert(participants.begin(), participants.end());
    for (const auto& e : receipt.events) {
        if (e.exec_index < receipt.outcomes.size() && receipt.outcomes[e.exec_index].reverted) continue;
        if (e.amount == 0) continue;
        g.vertices.insert(e.from);
        g.vertices.insert(e.to);
        g.edges.push_back(e);
    }
    return g;
}

}  // namespace pofuzz::oracle
