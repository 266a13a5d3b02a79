#include "pofuzz/oracle/classify.hpp"

#include <array>
#include <stdexcept>

namespace pofuzz::oracle {

namespace {

constexpr std::array<std::string_view, kCriterionCount> kNames = {
    "PositiveProfit", "ImbalancedPair", "UnconditionalGain", "UnconditionalBurn"};

struct TxFlow {
    bool inflow = false;
    bool outflow = false;
    bool third_party_burn = false;
    bool imbalanced = false;
};

}  // namespace

std::string_view to_string(Criterion c) { return kNames.at(static_cast<std::size_t>(c)); }

Criterion parse_criterion(std::string_view s) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == s) return static_cast<Criterion>(i);
    }
    throw std::invalid_argument("unknown criterion: " + std::string(s));
}

std::optional<PopCandidate> classify(const FundFlowGraph& graph,
                                     const world::ExecutionReceipt& receipt,
                                     const world::WorldState&, const world::WorldState&,
                                     const std::vector<Address>& cluster,
                                     const world::TxSequence& seq, const Signed& profit,
                                     ClassifyOptions opts) {
    PopCandidate cand;
    cand.seq = seq;
    const std::set<Address> members(cluster.begin(), cluster.end());

    if (!opts.positive_only) {
        std::vector<TxFlow> flow(seq.size());
        for (const auto& e : graph.edges) {
            if (e.tx_index >= flow.size()) continue;
            const bool from_in = members.count(e.from) != 0;
            const bool to_in = members.count(e.to) != 0;
            TxFlow& f = flow[e.tx_index];
            if (!from_in && to_in) f.inflow = true;
            if (from_in && !to_in) f.outflow = true;
            if (!from_in && !e.from.is_zero() && world::is_burn_sink(e.to)) f.third_party_burn = true;
        }
        for (const auto& o : receipt.outcomes) {
            if (!o.reverted && !o.imbalanced_pairs.empty() && o.tx_index < flow.size()) {
                flow[o.tx_index].imbalanced = true;
            }
        }
        for (std::size_t i = 0; i < flow.size(); ++i) {
            const TxFlow& f = flow[i];
            const bool by_cluster = members.count(seq.txs[i].sender) != 0;
            if (f.imbalanced) {
                cand.criteria.insert(Criterion::ImbalancedPair);
                cand.culprit_txs.insert(i);
            }
            if (f.inflow && !f.outflow) {
                cand.criteria.insert(Criterion::UnconditionalGain);
                cand.culprit_txs.insert(i);
            }
            if (by_cluster && f.third_party_burn && !f.outflow) {
                cand.criteria.insert(Criterion::UnconditionalBurn);
                cand.culprit_txs.insert(i);
            }
        }
    }

    if (profit > 0) {
        cand.criteria.insert(Criterion::PositiveProfit);
        if (cand.culprit_txs.empty()) {
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (!seq.txs[i].pinned) cand.culprit_txs.insert(i);
            }
        }
    }
    if (cand.criteria.empty()) return std::nullopt;
    return cand;
}

}  // namespace pofuzz::oracle
