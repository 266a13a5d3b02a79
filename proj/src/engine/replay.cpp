#include "pofuzz/engine/replay.hpp"

#include "pofuzz/world/digest.hpp"

namespace pofuzz::engine {

MismatchError::MismatchError(const std::string& what, Signed expected, Signed realized)
    : std::runtime_error(what + " (expected " + expected.str() + ", realized " + realized.str() + ")"),
      expected_(std::move(expected)),
      realized_(std::move(realized)) {}

Evaluation evaluate(const scenarios::Scenario& sc, const world::TxSequence& seq,
                    const Amount& initial_value, oracle::AccountingMode mode,
                    const world::Executor& exec) {
    Evaluation ev;
    ev.receipt = exec.execute_sequence(sc.initial, seq);
    ev.pricing_token = seq.pricing_token.is_zero() ? sc.pricing_tokens.front() : seq.pricing_token;
    ev.initial_value = initial_value;
    ev.valuation = oracle::value_state(ev.receipt.final_state, sc.cluster, ev.pricing_token, mode);
    ev.profit = Signed(ev.valuation.value) - Signed(initial_value);
    return ev;
}

std::uint64_t receipt_digest(const world::ExecutionReceipt& receipt) {
    world::Digest d;
    for (const auto& o : receipt.outcomes) {
        d.add(static_cast<std::uint64_t>(o.tx_index));
        d.add(static_cast<std::uint64_t>(o.repeat_index));
        d.add(static_cast<std::uint64_t>(o.reverted));
        d.add(o.reason);
        for (const auto& p : o.imbalanced_pairs) d.add(p);
    }
    for (const auto& e : receipt.events) {
        d.add(e.token);
        d.add(e.from);
        d.add(e.to);
        d.add(e.amount);
        d.add(static_cast<std::uint64_t>(e.exec_index));
    }
    d.add(world::state_digest(receipt.final_state));
    return d.h;
}

Signed replay(const scenarios::Scenario& sc, const ProofOfProfit& proof) {
    if (proof.scenario_fingerprint != sc.fingerprint()) {
        throw ReplayValidationError("proof was recorded against " + proof.scenario + " (" +
                                    proof.scenario_fingerprint + "), not " + sc.fingerprint());
    }
    if (proof.seq.size() > world::kDefaultMaxSequence) {
        throw ReplayValidationError("proof sequence is longer than the executor allows");
    }
    if (!sc.initial.is_token(proof.pricing_token) && proof.pricing_token != world::Address::native()) {
        throw ReplayValidationError("proof pricing token is not a token of the scenario");
    }
    world::TxSequence seq = proof.seq;
    seq.pricing_token = proof.pricing_token;

    const world::Executor exec;
    world::ExecutionReceipt receipt = exec.execute_sequence(sc.initial, seq);
    const Amount initial =
        oracle::value_state(sc.initial, sc.cluster, proof.pricing_token, proof.mode).value;

    world::WorldState state = receipt.final_state;
    world::ExecutorConfig quiet;
    quiet.track_pairs = false;
    const world::Executor liquidator(quiet);
    bool trace_ok = true;
    for (const auto& step : proof.trace) {
        world::ExecutionReceipt sink;
        if (liquidator.apply(state, step, 0, sink) != 1) trace_ok = false;
    }
    const Amount final_value = oracle::holdings(state, sc.cluster, proof.pricing_token);
    const Signed realized = Signed(final_value) - Signed(initial);

    if (!trace_ok) throw MismatchError("liquidation step reverted on replay", proof.profit, realized);
    if (receipt_digest(receipt) != proof.receipt_digest) {
        throw MismatchError("execution diverged from the recorded receipt", proof.profit, realized);
    }
    if (initial != proof.initial_value || final_value != proof.final_value || realized != proof.profit) {
        throw MismatchError("profit mismatch", proof.profit, realized);
    }
    return realized;
}

}  // namespace pofuzz::engine
