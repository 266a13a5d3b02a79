#include "pofuzz/engine/suite.hpp"

#include <set>

namespace pofuzz::engine {

namespace {

struct Plan {
    std::vector<scenarios::Scenario> scenarios;
    std::vector<SuiteCell> cells;
    std::vector<std::size_t> scenario_of;  // cell -> index into scenarios
};

Plan plan(const SuiteConfig& cfg) {
    Plan p;
    if (cfg.scenarios.empty()) {
        p.scenarios = scenarios::builtin_corpus();
    } else {
        for (const auto& ref : cfg.scenarios) p.scenarios.push_back(scenarios::load_scenario(ref));
    }
    for (std::size_t s = 0; s < p.scenarios.size(); ++s) {
        for (auto v : cfg.variants) {
            for (auto seed : cfg.seeds) {
                SuiteCell c;
                c.scenario = p.scenarios[s].name;
                c.seed = seed;
                c.variant = v;
                p.cells.push_back(std::move(c));
                p.scenario_of.push_back(s);
            }
        }
    }
    return p;
}

void run_cell(const SuiteConfig& cfg, const scenarios::Scenario& sc, SuiteCell& cell) {
    CampaignConfig cc = cfg.base;
    cc.seed = cell.seed;
    cc.variant = cell.variant;
    cell.result = run_campaign(sc, cc);
    cell.metric = 0;
    for (const auto& [token, proof] : cell.result.best) {
        try {
            replay(sc, proof);
        } catch (const std::exception& e) {
            cell.replay_ok = false;
            cell.replay_error = e.what();
        }
    }
    if (const auto* p = cell.result.best_in(sc.pricing_tokens.front())) cell.metric = comparable_profit(sc, *p);
}

}  // namespace

Signed comparable_profit(const scenarios::Scenario& sc, const ProofOfProfit& proof) {
    world::TxSequence seq = proof.seq;
    seq.pricing_token = sc.pricing_tokens.front();
    Signed p = oracle::profit(seq, sc.initial, sc, oracle::AccountingMode::Full);
    return p > 0 ? p : Signed(0);
}

Signed SuiteResult::total(const std::string& scenario, Variant v) const {
    Signed t = 0;
    for (const auto& c : cells) {
        if (c.scenario == scenario && c.variant == v) t += c.metric;
    }
    return t;
}

Signed SuiteResult::total(Variant v) const {
    Signed t = 0;
    for (const auto& c : cells) {
        if (c.variant == v) t += c.metric;
    }
    return t;
}

std::size_t SuiteResult::scenarios_with_profit(Variant v) const {
    std::set<std::string> hit;
    for (const auto& c : cells) {
        if (c.variant == v && c.metric > 0) hit.insert(c.scenario);
    }
    return hit.size();
}

std::vector<std::string> SuiteResult::scenario_names() const {
    std::vector<std::string> out;
    for (const auto& c : cells) {
        if (out.empty() || out.back() != c.scenario) out.push_back(c.scenario);
    }
    return out;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
    Plan p = plan(cfg);
    const auto n = static_cast<std::int64_t>(p.cells.size());
    std::vector<std::string> errors(p.cells.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            run_cell(cfg, p.scenarios[p.scenario_of[k]], p.cells[k]);
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    }
    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (!errors[k].empty()) {
            throw std::runtime_error(p.cells[k].scenario + " seed " + std::to_string(p.cells[k].seed) +
                                     ": " + errors[k]);
        }
    }
    return SuiteResult{std::move(p.cells)};
}

SuiteResult run_suite_serial(const SuiteConfig& cfg) {
    Plan p = plan(cfg);
    for (std::size_t k = 0; k < p.cells.size(); ++k) run_cell(cfg, p.scenarios[p.scenario_of[k]], p.cells[k]);
    return SuiteResult{std::move(p.cells)};
}

}  // namespace pofuzz::engine
