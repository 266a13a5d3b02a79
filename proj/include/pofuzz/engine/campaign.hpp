#pragma once

#include "pofuzz/engine/corpus.hpp"
#include "pofuzz/engine/replay.hpp"
#include "pofuzz/maximizer/sgd.hpp"

#include <array>
#include <functional>
#include <map>
#include <string_view>

namespace pofuzz::engine {

enum class Variant : std::uint8_t { Full, NoAct, NoCdt, NoAcc, NoGrd };
inline constexpr std::array<Variant, 5> kAllVariants = {Variant::Full, Variant::NoAct, Variant::NoCdt,
                                                        Variant::NoAcc, Variant::NoGrd};
std::string_view to_string(Variant v);  // none | noact | nocdt | noacc | nogrd
Variant parse_variant(std::string_view s);

struct CampaignConfig {
    std::uint64_t seed = 1;
    std::uint64_t iterations = 50000;
    std::size_t max_len = world::kDefaultMaxSequence;
    std::uint64_t sgd_budget = 2000;  // evaluations per SGD run
    unsigned restarts = 3;
    /// Total SGD evaluations allowed, as a multiple of `iterations`.
    std::uint64_t sgd_share = 4;
    Variant variant = Variant::Full;
    /// Overrides the scenario's pricing tokens when non-empty.
    std::vector<world::Address> pricing_tokens;
    bool record_schedules = false;
    /// Wall-clock cap in seconds, 0 for none. Results are then no longer
    /// reproducible.
    double time_budget = 0;

    bool no_act() const { return variant == Variant::NoAct; }
    bool no_cdt() const { return variant == Variant::NoCdt; }
    bool no_acc() const { return variant == Variant::NoAcc; }
    bool no_grd() const { return variant == Variant::NoGrd; }
    bool operator==(const CampaignConfig&) const = default;
};

struct TimelinePoint {
    std::uint64_t evaluation = 0;
    world::Address pricing_token;
    Signed profit;
    bool operator==(const TimelinePoint&) const = default;
};

struct SgdRun {
    std::uint64_t iteration = 0;
    unsigned restart = 0;  // 0 for the first run on a structure
    Signed best_profit;
    std::uint64_t evaluations = 0;
    std::vector<maximizer::ScheduleEntry> schedule;
    std::vector<std::pair<std::uint64_t, Signed>> convergence;

    bool operator==(const SgdRun&) const = default;
};

struct CampaignStats {
    std::uint64_t iterations = 0;
    std::uint64_t evaluations = 0;   // every sequence execution, SGD included
    std::uint64_t transactions = 0;  // expanded transactions executed
    std::uint64_t candidate_inputs = 0;
    std::array<std::uint64_t, oracle::kCriterionCount> candidates{};  // per criterion
    std::uint64_t sgd_runs = 0;
    std::uint64_t sgd_evaluations = 0;
    std::uint64_t corpus_size = 0;
    std::uint64_t proofs_verified = 0;
    std::vector<TimelinePoint> timeline;  // best-profit updates

    std::uint64_t candidates_for(oracle::Criterion c) const {
        return candidates[static_cast<std::size_t>(c)];
    }
    bool operator==(const CampaignStats&) const = default;
};

struct CampaignResult {
    std::string scenario;
    CampaignConfig config;
    std::map<world::Address, ProofOfProfit> best;  // per pricing token
    CampaignStats stats;
    std::vector<SgdRun> sgd_runs;  // only with record_schedules
    double elapsed_seconds = 0;    // wall clock; not part of the result's identity

    const ProofOfProfit* best_in(const world::Address& pricing) const;
    bool operator==(const CampaignResult&) const = default;
};

struct CampaignEvent {
    enum class Kind : std::uint8_t { Iteration, Candidate, BestProfit, SgdFinished };
    Kind kind = Kind::Iteration;
    std::uint64_t iteration = 0;
    std::uint64_t evaluation = 0;
    world::Address pricing_token;
    Signed profit;
    std::set<oracle::Criterion> criteria;
    const world::TxSequence* seq = nullptr;  // Candidate and BestProfit
    const SgdRun* sgd = nullptr;
};
using EventSink = std::function<void(const CampaignEvent&)>;

/// The fuzzing loop: select, mutate, execute, account, classify, escalate
/// candidates to SGD, keep the best verified proof per pricing token.
/// Throws std::invalid_argument for unusable configurations.
CampaignResult run_campaign(const scenarios::Scenario& sc, const CampaignConfig& cfg,
                            const EventSink& sink = {});

}  // namespace pofuzz::engine
