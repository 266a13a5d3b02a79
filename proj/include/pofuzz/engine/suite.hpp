#pragma once

#include "pofuzz/engine/campaign.hpp"

namespace pofuzz::engine {

struct SuiteConfig {
    std::vector<std::string> scenarios;  // empty: the five built-in case studies
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::vector<Variant> variants = {kAllVariants.begin(), kAllVariants.end()};
    CampaignConfig base;  // seed and variant are overwritten per cell
};

struct SuiteCell {
    std::string scenario;
    std::uint64_t seed = 0;
    Variant variant = Variant::Full;
    CampaignResult result;
    /// Full-accounting profit of the best proof in the primary pricing
    /// token, clamped at zero. Comparable across variants.
    Signed metric;
    bool replay_ok = true;  // every proof of the cell replayed exactly
    std::string replay_error;
};

struct SuiteResult {
    std::vector<SuiteCell> cells;  // scenario-major, then variant, then seed

    Signed total(const std::string& scenario, Variant v) const;
    Signed total(Variant v) const;
    /// Scenarios where some seed of the variant found a positive metric.
    std::size_t scenarios_with_profit(Variant v) const;
    std::vector<std::string> scenario_names() const;
};

/// Full-accounting profit of `proof.seq` in the scenario's primary pricing
/// token, or 0 when it is not positive.
Signed comparable_profit(const scenarios::Scenario& sc, const ProofOfProfit& proof);

/// One campaign per cell, cells spread across OpenMP threads. Cell results
/// do not depend on the thread count.
SuiteResult run_suite(const SuiteConfig& cfg);

/// Same cells run one after another; reference for run_suite.
SuiteResult run_suite_serial(const SuiteConfig& cfg);

}  // namespace pofuzz::engine
