// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is non-zero when any criterion fails.

#include "oracles.hpp"

#include "pofuzz/actions/action_spec.hpp"
#include "pofuzz/cli/commands.hpp"
#include "pofuzz/cli/serialize.hpp"
#include "pofuzz/engine/campaign.hpp"
#include "pofuzz/engine/replay.hpp"
#include "pofuzz/engine/suite.hpp"
#include "pofuzz/maximizer/sgd.hpp"
#include "pofuzz/scenarios/scenario.hpp"
#include "pofuzz/world/executor.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace pofuzz;
using oracles::Int;
using Clock = std::chrono::steady_clock;

namespace {

const std::vector<std::uint64_t> kSeeds = {1, 2, 3, 4, 5};
constexpr double kPerRunSeconds = 60;
constexpr std::uint64_t kSuiteIterations = 3000;

int failures = 0;

void verdict(int n, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << std::endl;
    if (!ok) ++failures;
}

std::ostream& note() { return std::cout << "    "; }

Int I(const Amount& a) { return Int(a.str()); }
Int I(const Signed& s) { return Int(s.str()); }

std::string pct_of(const Int& a, const Int& b) {
    if (b == 0) return "-";
    std::ostringstream os;
    os << std::fixed;
    os.precision(2);
    os << static_cast<double>(a * 10000 / b) / 100 << "%";
    return os.str();
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Int reserve(const scenarios::Scenario& sc, const std::string& pair, const std::string& token) {
    return I(sc.initial.balance_of(sc.resolve(token), sc.resolve(pair)));
}

Int best_profit(const engine::CampaignResult& r, const world::Address& token) {
    const auto* p = r.best_in(token);
    return p ? I(p->profit) : Int(0);
}

// ---------------------------------------------------------------- 1

struct Target {
    std::string scenario;
    std::uint64_t iterations;
    // per pricing token: the value the best proof is compared against
    std::function<bool(const scenarios::Scenario&, const engine::CampaignResult&, std::ostream&)> judge;
};

bool sells_dfs_within_90(const scenarios::Scenario& sc, const world::TxSequence& seq) {
    const world::Address dfs = sc.resolve("DFS"), pair = sc.resolve("DFS/USD");
    for (const auto& tx : seq.txs) {
        const auto* a = std::get_if<actions::ActionSpec>(&tx.call);
        if (!a) continue;
        const bool sell = (a->kind == actions::ActionKind::RouterSwap && a->token == dfs) ||
                          (a->kind == actions::ActionKind::TransferPct && a->token == dfs && a->counter == pair);
        const unsigned pct = a->percentage.value();
        if (sell && pct > 0 && pct <= 100 * 1000 / 1100) return true;
    }
    return false;
}

void criterion1(std::vector<engine::SgdRun>& schedules) {
    bool ok = true;

    auto mint_sc = scenarios::load_scenario("public_mint");
    const Int mint_pool_usd = reserve(mint_sc, "BEGO/USD", "USD");
    const auto mint_opt = oracles::public_mint(reserve(mint_sc, "BEGO/USD", "BEGO"), mint_pool_usd);

    auto zcb_sc = scenarios::load_scenario("zero_cost_buy");
    const auto zcb_opt = oracles::zero_cost_buy(Int("200000000000000000000"), Int("1000000000000000000"),
                                                world::kMaxRepeat, reserve(zcb_sc, "SUT/USD", "SUT"),
                                                reserve(zcb_sc, "SUT/USD", "USD"));

    auto vault_sc = scenarios::load_scenario("rounding_vault");
    const auto vault_opt =
        oracles::rounding_vault(1000, I(vault_sc.initial.balance_of(vault_sc.resolve("USDC"), vault_sc.resolve("attacker"))));

    auto fee_sc = scenarios::load_scenario("fee_transfer");
    const auto fee_opt = oracles::fee_transfer(I(fee_sc.initial.balance_of(fee_sc.resolve("DFS"), fee_sc.attacker)), 100,
                                               reserve(fee_sc, "DFS/USD", "DFS"), reserve(fee_sc, "DFS/USD", "USD"));

    auto burn_sc = scenarios::load_scenario("public_burn");
    oracles::BurnMarket m;
    m.attacker_usd = I(burn_sc.initial.balance_of(burn_sc.resolve("USD"), burn_sc.attacker));
    m.end_usd_end = reserve(burn_sc, "END/USD", "END");
    m.end_usd_usd = reserve(burn_sc, "END/USD", "USD");
    m.end_wbnb_end = reserve(burn_sc, "END/WBNB", "END");
    m.end_wbnb_wbnb = reserve(burn_sc, "END/WBNB", "WBNB");
    m.usd_before_end = burn_sc.resolve("USD") < burn_sc.resolve("END");
    const std::map<world::Address, Int> burn_opt = {
        {burn_sc.resolve("USD"), oracles::public_burn(m, oracles::BurnPricing::Usd).profit},
        {burn_sc.resolve("WBNB"), oracles::public_burn(m, oracles::BurnPricing::Wbnb).profit},
    };

    note() << "oracle optima: public_mint " << mint_opt.profit << ", zero_cost_buy " << zcb_opt.profit
           << ", rounding_vault " << vault_opt.profit << " (d=" << vault_opt.donation << "), fee_transfer "
           << fee_opt.profit << ", public_burn USD " << burn_opt.at(burn_sc.resolve("USD")) << " / WBNB "
           << burn_opt.at(burn_sc.resolve("WBNB")) << "\n";

    const std::vector<Target> targets = {
        {"public_mint", 5000,
         [&](const scenarios::Scenario& sc, const engine::CampaignResult& r, std::ostream& os) {
             const Int p = best_profit(r, sc.resolve("USD"));
             os << p << " = " << pct_of(p, mint_pool_usd) << " of pool USD";
             return p * 100 >= mint_pool_usd * 99;
         }},
        {"zero_cost_buy", 5000,
         [&](const scenarios::Scenario& sc, const engine::CampaignResult& r, std::ostream& os) {
             const Int p = best_profit(r, sc.resolve("USD"));
             os << p << " = " << pct_of(p, zcb_opt.profit);
             return p * 100 >= zcb_opt.profit * 99;
         }},
        {"rounding_vault", 5000,
         [&](const scenarios::Scenario& sc, const engine::CampaignResult& r, std::ostream& os) {
             const Int p = best_profit(r, sc.resolve("USDC"));
             os << p;
             return p == vault_opt.profit;
         }},
        {"fee_transfer", 5000,
         [&](const scenarios::Scenario& sc, const engine::CampaignResult& r, std::ostream& os) {
             const auto* proof = r.best_in(sc.resolve("USD"));
             const bool sell = proof && sells_dfs_within_90(sc, proof->seq);
             os << (proof ? I(proof->profit) : Int(0)) << (sell ? " via a sell of <= 90%" : " without a <= 90% sell");
             return proof && proof->profit > 0 && sell;
         }},
        // judged in each pricing token against that token's optimum
        {"public_burn", 50000,
         [&](const scenarios::Scenario& sc, const engine::CampaignResult& r, std::ostream& os) {
             bool any = false;
             for (const auto& t : sc.pricing_tokens) {
                 const Int p = best_profit(r, t);
                 os << sc.name_of(t) << " " << p << " (" << pct_of(p, burn_opt.at(t)) << ") ";
                 any |= p > 0 && p * 100 >= burn_opt.at(t) * 95;
             }
             return any;
         }},
    };

    for (const auto& t : targets) {
        auto sc = scenarios::load_scenario(t.scenario);
        int passed = 0;
        double slowest = 0;
        for (auto seed : kSeeds) {
            engine::CampaignConfig cfg;
            cfg.seed = seed;
            cfg.iterations = t.iterations;
            cfg.record_schedules = t.scenario != "public_burn";
            // the cap stops the loop between iterations, so leave room for the last one
            cfg.time_budget = kPerRunSeconds - 0.5;
            auto r = engine::run_campaign(sc, cfg);
            std::ostringstream detail;
            const bool hit = t.judge(sc, r, detail);
            const bool in_time = r.elapsed_seconds <= kPerRunSeconds;
            passed += hit && in_time;
            slowest = std::max(slowest, r.elapsed_seconds);
            note() << t.scenario << " seed " << seed << ": " << detail.str() << " [" << r.stats.iterations
                   << " iterations, " << static_cast<int>(r.elapsed_seconds * 10) / 10.0 << " s]"
                   << (hit ? "" : " below target") << (in_time ? "" : " over 60 s")
                   << (r.stats.iterations < t.iterations ? " (stopped by the time cap)" : "") << "\n";
            for (auto& s : r.sgd_runs) schedules.push_back(std::move(s));
        }
        ok &= passed == static_cast<int>(kSeeds.size());
        note() << t.scenario << ": " << passed << "/" << kSeeds.size() << " seeds\n";
    }

    // the same seeds without action-level mutation must not find the fee bug
    int noact_found = 0;
    for (auto seed : kSeeds) {
        engine::CampaignConfig cfg;
        cfg.seed = seed;
        cfg.iterations = 5000;
        cfg.variant = engine::Variant::NoAct;
        auto r = engine::run_campaign(fee_sc, cfg);
        if (best_profit(r, fee_sc.resolve("USD")) > 0) ++noact_found;
    }
    note() << "fee_transfer NOACT: " << noact_found << "/" << kSeeds.size() << " seeds found profit\n";
    ok &= noact_found == 0;
    verdict(1, ok, "scenario optima recovered on seeds 1..5");
}

// ---------------------------------------------------------------- 2, 3

std::uint64_t first_hit(const maximizer::SgdOutcome& o, const Signed& profit) {
    for (const auto& [ev, p] : o.convergence) {
        if (p == profit) return ev;
    }
    return 0;
}

void criterion2(std::vector<std::vector<maximizer::ScheduleEntry>>& schedules) {
    bool ok = true;
    for (const char* c_text : {"1000", "1000000", "1000000000000"}) {
        const Amount c(c_text);
        maximizer::Objective f = [c](const std::vector<Amount>& x) -> std::optional<Signed> {
            Signed d = Signed(x[0]) - Signed(c);
            return -(d * d);
        };
        actions::Rng rng(1);
        maximizer::SgdConfig cfg;
        cfg.budget = 1000;
        auto o = maximizer::optimize({maximizer::Domain{}}, {Amount(0)}, f, cfg, rng);
        const auto hit = first_hit(o, 0);
        const bool good = o.best_x[0] == c && hit != 0 && hit <= 200;
        note() << "-(x - " << c_text << ")^2: x = " << o.best_x[0] << " after " << hit << " evaluations"
               << (good ? "" : " (limit 200)") << "\n";
        ok &= good;
        schedules.push_back(o.schedule);
    }
    for (const char* b_text : {"1000", "1000000", "1000000000000"}) {
        const Amount b(b_text);
        maximizer::Objective f = [b](const std::vector<Amount>& x) -> std::optional<Signed> {
            if (x[0] > b) return std::nullopt;
            return Signed(x[0]);
        };
        actions::Rng rng(2);
        maximizer::SgdConfig cfg;
        cfg.budget = 1000;
        auto o = maximizer::optimize({maximizer::Domain{}}, {Amount(0)}, f, cfg, rng);
        const auto hit = first_hit(o, Signed(b));
        const bool good = o.best_x[0] == b && hit != 0 && hit <= 300;
        note() << "x capped at " << b_text << ": x = " << o.best_x[0] << " after " << hit << " evaluations"
               << (good ? "" : " (limit 300)") << "\n";
        ok &= good;
        schedules.push_back(o.schedule);
    }
    verdict(2, ok, "SGD reaches parabola peaks within 200 and revert boundaries within 300 evaluations");
}

Signed abs_s(const Signed& s) { return s < 0 ? Signed(-s) : s; }
int sgn(const Signed& s) { return s > 0 ? 1 : (s < 0 ? -1 : 0); }

std::string law_violation(const maximizer::ScheduleEntry& e) {
    using maximizer::StepRule;
    const Signed a = abs_s(e.alpha), ap = abs_s(e.alpha_prev);
    switch (e.rule) {
    case StepRule::Init:
        if (e.alpha == 0 || sgn(e.alpha) != e.gradient) return "init step against the gradient";
        break;
    case StepRule::Grow:
        if (sgn(e.alpha) != sgn(e.alpha_prev)) return "grow changed direction";
        if (e.additive) {
            if (a < ap || a - ap > maximizer::kRepeatN) return "additive growth outside [0, 5]";
        } else if (a != (ap * 3 + 1) / 2 || a <= ap) {
            return "growth is not 3/2";
        }
        break;
    case StepRule::Flip:
        if (e.alpha != 0 && sgn(e.alpha) != -sgn(e.alpha_prev)) return "flip kept direction";
        if (a != ap / 3) return "contraction is not 1/3";
        break;
    case StepRule::Retire:
        if (e.alpha != 0 || e.gradient != 0) return "retire with a live step";
        break;
    }
    return {};
}

void criterion3(const std::vector<engine::SgdRun>& runs, const std::vector<std::vector<maximizer::ScheduleEntry>>& extra) {
    std::map<maximizer::StepRule, std::uint64_t> by_rule;
    std::uint64_t entries = 0, additive = 0, bad = 0;
    std::string first_bad;
    auto check = [&](const std::vector<maximizer::ScheduleEntry>& sched) {
        for (const auto& e : sched) {
            ++entries;
            ++by_rule[e.rule];
            additive += e.additive;
            auto v = law_violation(e);
            if (!v.empty()) {
                if (bad++ == 0) first_bad = v;
            }
        }
    };
    for (const auto& r : runs) check(r.schedule);
    for (const auto& s : extra) check(s);
    note() << entries << " schedule entries from " << runs.size() + extra.size() << " SGD runs: init "
           << by_rule[maximizer::StepRule::Init] << ", grow " << by_rule[maximizer::StepRule::Grow] << ", flip "
           << by_rule[maximizer::StepRule::Flip] << ", retire " << by_rule[maximizer::StepRule::Retire]
           << "; additive " << additive << "\n";
    if (bad) note() << bad << " violations, first: " << first_bad << "\n";
    verdict(3, bad == 0 && entries > 0 && by_rule[maximizer::StepRule::Grow] > 0 &&
                   by_rule[maximizer::StepRule::Flip] > 0,
            "every recorded step follows the grow / contract / retire law");
}

// ---------------------------------------------------------------- 4, 5, 6

void criteria456() {
    engine::SuiteConfig cfg;
    cfg.seeds = kSeeds;
    cfg.base.iterations = kSuiteIterations;
    const auto t0 = Clock::now();
    auto suite = engine::run_suite(cfg);
    note() << "corpus suite: " << suite.cells.size() << " cells at " << kSuiteIterations << " iterations in "
           << static_cast<int>(seconds_since(t0)) << " s\n";

    // 4: every proof of every cell, replayed again from a fresh scenario
    std::map<std::string, scenarios::Scenario> loaded;
    std::uint64_t proofs = 0, exact = 0;
    bool cells_ok = true;
    for (const auto& cell : suite.cells) {
        cells_ok &= cell.replay_ok;
        auto it = loaded.try_emplace(cell.scenario, scenarios::load_scenario(cell.scenario)).first;
        for (const auto& [token, proof] : cell.result.best) {
            ++proofs;
            try {
                if (engine::replay(it->second, proof) == proof.profit) ++exact;
            } catch (const std::exception& e) {
                note() << cell.scenario << " seed " << cell.seed << " " << engine::to_string(cell.variant) << ": "
                       << e.what() << "\n";
            }
        }
    }
    note() << proofs << " proofs, " << exact << " replayed with exact profit\n";
    verdict(4, cells_ok && exact == proofs, "no false positives across the corpus suite");

    // 5
    const Signed full = suite.total(engine::Variant::Full);
    const auto full_hits = suite.scenarios_with_profit(engine::Variant::Full);
    bool dominant = true;
    for (auto v : engine::kAllVariants) {
        note() << engine::to_string(v) << ": total " << suite.total(v) << ", scenarios with profit "
               << suite.scenarios_with_profit(v) << "\n";
        if (v != engine::Variant::Full) dominant &= full >= suite.total(v);
    }
    const bool fewer = suite.scenarios_with_profit(engine::Variant::NoAct) < full_hits;
    verdict(5, dominant && fewer, "full engine dominates every ablation; NOACT profits on fewer scenarios");

    // 6
    using oracle::Criterion;
    std::map<std::string, std::array<std::uint64_t, oracle::kCriterionCount>> fired;
    std::map<std::string, bool> won;
    for (const auto& cell : suite.cells) {
        if (cell.variant != engine::Variant::Full) continue;
        auto& f = fired[cell.scenario];
        for (std::size_t k = 0; k < f.size(); ++k) f[k] += cell.result.stats.candidates[k];
        won[cell.scenario] = won[cell.scenario] || cell.metric > 0 || !cell.result.best.empty();
    }
    auto count = [&](const std::string& sc, Criterion c) { return fired[sc][static_cast<std::size_t>(c)]; };
    bool ok = count("public_mint", Criterion::UnconditionalGain) > 0 &&
              count("zero_cost_buy", Criterion::UnconditionalGain) > 0 &&
              count("public_burn", Criterion::UnconditionalBurn) > 0 &&
              count("public_burn", Criterion::ImbalancedPair) > 0;
    for (const auto& [sc, w] : won) {
        note() << sc << ":";
        for (auto c : {Criterion::PositiveProfit, Criterion::ImbalancedPair, Criterion::UnconditionalGain,
                       Criterion::UnconditionalBurn}) {
            std::cout << " " << oracle::to_string(c) << "=" << count(sc, c);
        }
        std::cout << (w ? "" : " (no proof)") << "\n";
        if (w) ok &= count(sc, Criterion::PositiveProfit) > 0;
    }
    verdict(6, ok, "all four candidate criteria fire where expected");
}

// ---------------------------------------------------------------- 7

void criterion7() {
    const std::string cmd = std::string(POFUZZ_PROPERTIES_PATH) + " --gtest_brief=1 > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const bool ok = status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    note() << "property binary exit status " << (WIFEXITED(status) ? WEXITSTATUS(status) : -1) << "\n";
    verdict(7, ok, "world and AMM property suites, 1e4 cases each, no violations");
}

// ---------------------------------------------------------------- 8

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion8() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("pofuzz_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    bool same = true;
    for (const char* name : {"public_mint", "public_burn", "rounding_vault", "fair_pools"}) {
        std::string reports[2];
        for (int k = 0; k < 2; ++k) {
            cli::RunArgs args;
            args.scenario = name;
            args.seed = 7;
            args.iterations = 1500;
            args.repeat = 2;
            args.emit_schedule = true;
            args.out = (dir / (std::string(name) + std::to_string(k) + ".json")).string();
            std::ostringstream out, err;
            cli::cmd_run(args, out, err);
            reports[k] = cli::strip_timestamp(slurp(args.out)) + slurp(args.out + ".convergence.csv");
        }
        const bool eq = !reports[0].empty() && reports[0] == reports[1];
        note() << name << ": " << (eq ? "identical" : "DIFFERENT") << " (" << reports[0].size() << " bytes)\n";
        same &= eq;
    }
    fs::remove_all(dir);

    // throughput, reported only: 16 cheap transactions per sequence
    auto sc = scenarios::load_scenario("fair_pools");
    world::TxSequence seq;
    seq.pricing_token = sc.pricing_tokens.front();
    for (int i = 0; i < 16; ++i) {
        seq.txs.push_back(world::raw_tx(sc.attacker, sc.resolve("USD"), "approve", {sc.resolve("router"), Amount(i)}));
    }
    world::Executor ex;
    std::uint64_t txs = 0;
    const auto t0 = Clock::now();
    while (seconds_since(t0) < 1.0) {
        for (int k = 0; k < 100; ++k) txs += ex.execute_sequence(sc.initial, seq).outcomes.size();
    }
    note() << "throughput: " << static_cast<std::uint64_t>(txs / seconds_since(t0))
           << " tx/s on the empty-action microbenchmark (reference 1e4, not asserted)\n";
    verdict(8, same, "repeated runs give byte-identical reports");
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    std::vector<engine::SgdRun> campaign_schedules;
    std::vector<std::vector<maximizer::ScheduleEntry>> synthetic_schedules;

    criterion1(campaign_schedules);
    criterion2(synthetic_schedules);
    criterion3(campaign_schedules, synthetic_schedules);
    criteria456();
    criterion7();
    criterion8();

    std::cout << "total " << static_cast<int>(seconds_since(t0)) << " s, " << failures << " failing" << std::endl;
    return failures == 0 ? 0 : 1;
}
