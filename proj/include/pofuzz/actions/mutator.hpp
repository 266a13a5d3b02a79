#pragma once

#include "pofuzz/scenarios/scenario.hpp"
#include "pofuzz/world/abi.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace pofuzz::actions {

using Rng = std::mt19937_64;

std::uint64_t uniform_index(Rng& rng, std::uint64_t n);  // [0, n)
/// Bit length uniform in [0, 256], then a uniform value of that length.
Amount log_uniform_amount(Rng& rng);
/// Uniform over [0, 2^256).
Amount uniform_amount(Rng& rng);
/// Log-uniform draw clamped into [lo, hi].
Amount log_uniform_in(Rng& rng, const Amount& lo, const Amount& hi);

enum class MutationOp : std::uint8_t {
    InsertAction,
    DeleteTx,
    MutateArgs,
    InsertRawCall,
    MutatePricingToken,
};

std::string_view to_string(MutationOp op);

struct MutatorConfig {
    bool no_act = false;  // raw calls with uniform arguments only
    std::size_t max_len = world::kDefaultMaxSequence;
    std::size_t max_body = 2;  // flashloan callback length
};

/// Action-granularity mutator over one scenario's address universe.
class Mutator {
public:
    Mutator(const scenarios::Scenario& sc, MutatorConfig cfg = {});

    /// Applies exactly one mutation operator and reports which one ran.
    MutationOp mutate(world::TxSequence& seq, Rng& rng) const;

    world::Transaction random_action(Rng& rng, bool allow_flashloan = true) const;
    world::Transaction random_raw_call(Rng& rng, bool uniform_args) const;
    /// Re-draws one argument, flag, value or repeat count of `tx`.
    void mutate_args(world::Transaction& tx, Rng& rng) const;

    const MutatorConfig& config() const { return cfg_; }

private:
    enum class Choice { A1, A2, A3, A4, A5, Custom, Raw };

    actions::ActionSpec random_spec(Choice c, Rng& rng, bool allow_flashloan) const;
    world::Arg random_arg(world::ParamKind k, Rng& rng, bool uniform) const;
    const world::Address& pick(const std::vector<world::Address>& v, Rng& rng) const;
    void mutate_spec(actions::ActionSpec& s, Rng& rng) const;

    const scenarios::Scenario& sc_;
    MutatorConfig cfg_;
    std::vector<Choice> choices_;
    std::vector<world::Address> everyone_;
    std::vector<world::Address> transferable_;  // tokens and LP tokens
    std::vector<world::Address> noact_targets_;
    std::vector<std::string> macro_names_;
    std::vector<Amount> dictionary_;  // non-zero balances and supplies of the initial state
    bool has_router_ = false;
};

}  // namespace pofuzz::actions
