#include "pofuzz/maximizer/variables.hpp"

#include "pofuzz/world/abi.hpp"

#include <array>

namespace pofuzz::maximizer {

using world::Transaction;

namespace {

constexpr std::array<std::string_view, 3> kNames = {"param", "value", "repeat"};

void collect(const Transaction& tx, std::vector<std::size_t> path, const world::WorldState* state,
             std::vector<VariableRef>& out) {
    auto add = [&](VariableKind k, std::size_t arg, Amount lo, Amount hi) {
        out.push_back(VariableRef{k, path, arg, std::move(lo), std::move(hi)});
    };
    if (const auto* raw = std::get_if<world::RawCall>(&tx.call)) {
        for (std::size_t i = 0; i < raw->args.size(); ++i) {
            if (std::holds_alternative<Amount>(raw->args[i])) add(VariableKind::IntegerParam, i, 0, max_amount());
        }
        bool payable = state && world::is_payable(*state, raw->target, raw->function);
        if (payable || tx.value != 0) add(VariableKind::TxValue, 0, 0, max_amount());
    } else {
        const auto& spec = std::get<actions::ActionSpec>(tx.call);
        if (spec.has_percentage()) add(VariableKind::IntegerParam, 0, 0, 100);
        for (std::size_t i = 0; i < spec.params.size(); ++i) {
            add(VariableKind::IntegerParam, i + 1, 0, max_amount());
        }
    }
    add(VariableKind::RepeatCount, 0, 1, world::kMaxRepeat);
    if (const auto* spec = std::get_if<actions::ActionSpec>(&tx.call)) {
        for (std::size_t b = 0; b < spec->body.size(); ++b) {
            auto sub = path;
            sub.push_back(b);
            collect(spec->body[b], sub, state, out);
        }
    }
}

template <typename Seq>
auto& locate(Seq& seq, const VariableRef& ref) {
    auto* tx = &seq.txs.at(ref.path.front());
    for (std::size_t i = 1; i < ref.path.size(); ++i) {
        tx = &std::get<actions::ActionSpec>(tx->call).body.at(ref.path[i]);
    }
    return *tx;
}

}  // namespace

std::string_view to_string(VariableKind k) { return kNames.at(static_cast<std::size_t>(k)); }

std::vector<VariableRef> extract_variables(const world::TxSequence& seq, const world::WorldState* state) {
    std::vector<VariableRef> out;
    for (std::size_t i = 0; i < seq.txs.size(); ++i) {
        if (!seq.txs[i].pinned) collect(seq.txs[i], {i}, state, out);
    }
    return out;
}

Amount read_variable(const world::TxSequence& seq, const VariableRef& ref) {
    const Transaction& tx = locate(seq, ref);
    switch (ref.kind) {
    case VariableKind::RepeatCount:
        return tx.repeat;
    case VariableKind::TxValue:
        return tx.value;
    case VariableKind::IntegerParam:
        break;
    }
    if (const auto* raw = std::get_if<world::RawCall>(&tx.call)) return std::get<Amount>(raw->args.at(ref.arg));
    const auto& spec = std::get<actions::ActionSpec>(tx.call);
    if (ref.arg == 0) return spec.percentage.value();
    return spec.params.at(ref.arg - 1);
}

void write_variable(world::TxSequence& seq, const VariableRef& ref, const Amount& value) {
    Amount v = value < ref.lo ? ref.lo : (value > ref.hi ? ref.hi : value);
    Transaction& tx = locate(seq, ref);
    switch (ref.kind) {
    case VariableKind::RepeatCount:
        tx.repeat = v.convert_to<std::uint32_t>();
        return;
    case VariableKind::TxValue:
        tx.value = v;
        return;
    case VariableKind::IntegerParam:
        break;
    }
    if (auto* raw = std::get_if<world::RawCall>(&tx.call)) {
        raw->args.at(ref.arg) = v;
        return;
    }
    auto& spec = std::get<actions::ActionSpec>(tx.call);
    if (ref.arg == 0) {
        spec.percentage = actions::Percentage(v.convert_to<std::uint64_t>());
    } else {
        spec.params.at(ref.arg - 1) = v;
    }
}

world::TxSequence restart(const world::TxSequence& seq, actions::Rng& rng, const world::WorldState* state) {
    world::TxSequence out = seq;
    for (const auto& ref : extract_variables(seq, state)) {
        Amount v;
        if (ref.hi == 100 && ref.kind == VariableKind::IntegerParam) {
            v = actions::uniform_index(rng, 101);
        } else {
            v = actions::log_uniform_in(rng, ref.lo, ref.hi);
        }
        write_variable(out, ref, v);
    }
    return out;
}

}  // namespace pofuzz::maximizer
