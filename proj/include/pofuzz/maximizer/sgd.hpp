#pragma once

#include "pofuzz/maximizer/variables.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

namespace pofuzz::maximizer {

// Step schedule constants: grow by p = 3/2, contract by q = -1/3, repeats
// grow by R(n) with R(n) uniform below n.
inline constexpr unsigned kGrowNum = 3;
inline constexpr unsigned kGrowDen = 2;
inline constexpr unsigned kShrinkDen = 3;
inline constexpr unsigned kRepeatN = 5;

struct Domain {
    Amount lo;
    Amount hi = max_amount();
    bool additive = false;  // repeat counts
    bool favored = false;   // lives in a culprit transaction
};

/// Profit at a point, or nothing when the profit is undefined there.
using Objective = std::function<std::optional<Signed>(const std::vector<Amount>&)>;

/// Finite difference (P(x + delta e_i) - P(x)) / delta, kept as a fraction.
struct Gradient {
    bool defined = false;
    Signed diff;
    Signed delta;

    int sign() const;
    /// diff / delta rounded toward zero.
    Signed value() const;
};

Gradient finite_difference(const Objective& f, const std::vector<Amount>& x, std::size_t i,
                           const Signed& delta, const Signed& fx);

enum class StepRule : std::uint8_t { Init, Grow, Flip, Retire };
std::string_view to_string(StepRule r);

struct ScheduleEntry {
    std::uint64_t evaluation = 0;  // evaluations spent when the step finished
    std::size_t var = 0;
    bool additive = false;
    StepRule rule = StepRule::Init;
    int gradient = 0;   // sign of g
    Signed alpha_prev;  // step in force before this update
    Signed alpha;       // step chosen by the schedule
    Signed applied;     // step actually taken after boundary halving (0: none)
    Amount x_before;
    Amount x_after;
    Signed profit;      // profit at x_after

    bool operator==(const ScheduleEntry&) const = default;
};

struct SgdConfig {
    std::uint64_t budget = 2000;  // profit evaluations
    unsigned favored_weight = 4;
    bool record = true;
};

struct SgdOutcome {
    std::vector<Amount> best_x;
    Signed best_profit;
    bool defined = false;  // false when even the start point was undefined
    std::uint64_t evaluations = 0;
    bool budget_exhausted = false;
    std::vector<ScheduleEntry> schedule;
    std::vector<std::pair<std::uint64_t, Signed>> convergence;  // (evaluation, best so far)
};

/// Integer SGD over a box. Gradients only contribute their sign; step sizes
/// follow the grow / contract / retire schedule, with halving toward the
/// boundary when a step leaves the domain or makes the profit undefined.
SgdOutcome optimize(const std::vector<Domain>& domains, std::vector<Amount> x0, const Objective& f,
                    const SgdConfig& cfg, actions::Rng& rng);

// Sequence-level interface.

struct ProfitSample {
    Signed profit;
    std::uint64_t dead_mask = 0;  // logical transactions whose every repetition reverted
};
using SequenceProfit = std::function<ProfitSample(const world::TxSequence&)>;

/// Gradient of the sequence profit along one variable. Undefined when the
/// perturbed sequence kills a transaction that returned in the base.
Gradient gradient(const world::TxSequence& seq, const VariableRef& var, const Signed& delta,
                  const SequenceProfit& f);

struct SgdResult {
    Signed best_profit;
    world::TxSequence best_seq;
    std::uint64_t evaluations = 0;
    bool budget_exhausted = false;
    std::vector<VariableRef> vars;
    std::vector<ScheduleEntry> schedule;
    std::vector<std::pair<std::uint64_t, Signed>> convergence;
};

SgdResult sgd(const world::TxSequence& seq, const SequenceProfit& f,
              const std::set<std::size_t>& culprit_txs, const SgdConfig& cfg, actions::Rng& rng,
              const world::WorldState* state = nullptr);

}  // namespace pofuzz::maximizer
