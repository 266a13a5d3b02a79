#include "pofuzz/engine/suite.hpp"
#include "pofuzz/scenarios/scenario.hpp"
#include "pofuzz/world/executor.hpp"

#include <benchmark/benchmark.h>

using namespace pofuzz;

namespace {

engine::SuiteConfig small_suite(std::uint64_t iterations) {
    engine::SuiteConfig cfg;
    cfg.seeds = {1, 2};
    cfg.variants = {engine::Variant::Full, engine::Variant::NoAct};
    cfg.base.iterations = iterations;
    return cfg;
}

void BM_SuiteParallel(benchmark::State& st) {
    auto cfg = small_suite(static_cast<std::uint64_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(engine::run_suite(cfg).cells.size());
}

void BM_SuiteSerial(benchmark::State& st) {
    auto cfg = small_suite(static_cast<std::uint64_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(engine::run_suite_serial(cfg).cells.size());
}

// swap round trips through the router, approvals included
void BM_ExecutorSwap(benchmark::State& st) {
    auto sc = scenarios::load_scenario("fair_pools");
    const auto usd = sc.pricing_tokens.front();
    const auto router = sc.universe.contracts.front();
    world::Address other;
    for (const auto& t : sc.universe.tokens)
        if (t != usd) other = t;
    world::TxSequence seq;
    seq.pricing_token = usd;
    seq.txs.push_back(world::raw_tx(sc.attacker, usd, "approve", {router, max_amount()}));
    seq.txs.push_back(world::raw_tx(sc.attacker, router, "swapExactIn", {Amount(1000), usd, other}, 0, 16));
    world::Executor ex;
    std::uint64_t txs = 0;
    for (auto _ : st) {
        auto r = ex.execute_sequence(sc.initial, seq);
        txs += r.outcomes.size();
        benchmark::DoNotOptimize(r.final_state.block_number);
    }
    st.counters["tx/s"] = benchmark::Counter(static_cast<double>(txs), benchmark::Counter::kIsRate);
}

}  // namespace

BENCHMARK(BM_SuiteParallel)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuiteSerial)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExecutorSwap);

BENCHMARK_MAIN();
