#pragma once

#include "pofuzz/actions/mutator.hpp"
#include "pofuzz/world/transaction.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace pofuzz::maximizer {

enum class VariableKind : std::uint8_t { IntegerParam, TxValue, RepeatCount };

std::string_view to_string(VariableKind k);

/// Where a fuzzer-controlled integer lives. `path` walks into flashloan
/// bodies: path[0] is the top-level transaction, each further entry an index
/// into the enclosing action's callback body. For IntegerParam, `arg` is the
/// raw-call argument position; for actions 0 is the percentage and i + 1
/// the i-th macro parameter.
struct VariableRef {
    VariableKind kind = VariableKind::IntegerParam;
    std::vector<std::size_t> path;
    std::size_t arg = 0;
    Amount lo;
    Amount hi;

    std::size_t tx_index() const { return path.front(); }
    bool additive() const { return kind == VariableKind::RepeatCount; }
    bool operator==(const VariableRef&) const = default;
};

/// One ref per integer argument, per transaction value of a payable call
/// (or of any call already carrying value), and per repeat count. Pinned
/// victim transactions are not fuzzer-controlled and are skipped. `state`
/// resolves payability; without it only non-zero values are listed.
std::vector<VariableRef> extract_variables(const world::TxSequence& seq,
                                           const world::WorldState* state = nullptr);

Amount read_variable(const world::TxSequence& seq, const VariableRef& ref);
/// Writes `value` clamped into the ref's domain.
void write_variable(world::TxSequence& seq, const VariableRef& ref, const Amount& value);

/// Re-draws every variable within its domain; kinds, order and targets stay.
world::TxSequence restart(const world::TxSequence& seq, actions::Rng& rng,
                          const world::WorldState* state = nullptr);

}  // namespace pofuzz::maximizer
