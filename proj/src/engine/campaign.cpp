#include "pofuzz/engine/campaign.hpp"

#include "pofuzz/oracle/fund_flow.hpp"

#include <chrono>
#include <stdexcept>

namespace pofuzz::engine {

namespace {

constexpr std::array<std::string_view, 5> kVariantNames = {"none", "noact", "nocdt", "noacc", "nogrd"};

// mutations stacked per iteration: 1..kMaxStack
constexpr std::uint64_t kMaxStack = 3;

class Campaign {
public:
    Campaign(const scenarios::Scenario& sc, const CampaignConfig& cfg, const EventSink& sink)
        : sc_(sc),
          cfg_(cfg),
          sink_(sink),
          mode_(cfg.no_acc() ? oracle::AccountingMode::BalanceOnly : oracle::AccountingMode::Full),
          exec_(world::ExecutorConfig{cfg.max_len, true}),
          mutator_(sc_, actions::MutatorConfig{cfg.no_act(), cfg.max_len, 2}),
          rng_(cfg.seed) {
        if (!cfg.pricing_tokens.empty()) sc_.pricing_tokens = cfg.pricing_tokens;
        sgd_cap_ = cfg.sgd_share * cfg.iterations;
    }

    CampaignResult run() {
        const auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        };

        CampaignResult out;
        out.scenario = sc_.name;
        out.config = cfg_;

        process(sc_.seed_sequence(), 0);
        for (std::uint64_t it = 1; it <= cfg_.iterations; ++it) {
            if (cfg_.time_budget > 0 && elapsed() >= cfg_.time_budget) break;
            world::TxSequence seq = corpus_.select(rng_).seq;
            const std::uint64_t stack = 1 + actions::uniform_index(rng_, kMaxStack);
            for (std::uint64_t k = 0; k < stack; ++k) mutator_.mutate(seq, rng_);
            ++stats_.iterations;
            if (sink_) {
                CampaignEvent e;
                e.kind = CampaignEvent::Kind::Iteration;
                e.iteration = it;
                e.evaluation = stats_.evaluations;
                sink_(e);
            }
            process(std::move(seq), it);
        }

        stats_.corpus_size = corpus_.size();
        out.best = std::move(best_);
        out.stats = std::move(stats_);
        out.sgd_runs = std::move(sgd_runs_);
        out.elapsed_seconds = elapsed();
        return out;
    }

private:
    const Amount& initial_value(const world::Address& pricing) {
        auto it = initial_.find(pricing);
        if (it == initial_.end()) {
            it = initial_.emplace(pricing, oracle::value_state(sc_.initial, sc_.cluster, pricing, mode_).value)
                     .first;
        }
        return it->second;
    }

    Evaluation eval(const world::TxSequence& seq) {
        const world::Address pricing = seq.pricing_token.is_zero() ? sc_.pricing_tokens.front() : seq.pricing_token;
        Evaluation ev = evaluate(sc_, seq, initial_value(pricing), mode_, exec_);
        ++stats_.evaluations;
        stats_.transactions += ev.receipt.outcomes.size();
        return ev;
    }

    /// Alg. 1's P' > 0 and P' > P update; every recorded proof is replayed first.
    bool consider(const world::TxSequence& seq, const Evaluation& ev) {
        if (ev.profit <= 0) return false;
        auto it = best_.find(ev.pricing_token);
        if (it != best_.end() && ev.profit <= it->second.profit) return false;

        ProofOfProfit p;
        p.scenario = sc_.name;
        p.scenario_fingerprint = sc_.fingerprint();
        p.seq = seq;
        p.seq.pricing_token = ev.pricing_token;
        p.pricing_token = ev.pricing_token;
        p.mode = mode_;
        p.initial_value = ev.initial_value;
        p.final_value = ev.valuation.value;
        p.profit = ev.profit;
        p.trace = ev.valuation.trace;
        p.receipt_digest = receipt_digest(ev.receipt);
        p.found_at = stats_.evaluations;
        try {
            replay(sc_, p);
        } catch (const std::exception& e) {
            throw std::logic_error(std::string("unverifiable proof-of-profit: ") + e.what());
        }
        ++stats_.proofs_verified;
        stats_.timeline.push_back(TimelinePoint{stats_.evaluations, ev.pricing_token, ev.profit});
        if (sink_) {
            CampaignEvent e;
            e.kind = CampaignEvent::Kind::BestProfit;
            e.iteration = iteration_;
            e.evaluation = stats_.evaluations;
            e.pricing_token = ev.pricing_token;
            e.profit = ev.profit;
            e.seq = &p.seq;
            sink_(e);
        }
        best_[ev.pricing_token] = std::move(p);
        return true;
    }

    void process(world::TxSequence seq, std::uint64_t iteration) {
        iteration_ = iteration;
        Evaluation ev = eval(seq);
        auto graph = oracle::build_graph(ev.receipt, sc_.cluster);
        oracle::ClassifyOptions opts;
        opts.positive_only = cfg_.no_cdt();
        auto cand = oracle::classify(graph, ev.receipt, sc_.initial, ev.receipt.final_state, sc_.cluster,
                                     seq, ev.profit, opts);
        const bool new_best = consider(seq, ev);
        const bool novel = corpus_.novel(outcome_signature(ev.receipt));

        CorpusEntry entry;
        entry.profit = ev.profit;
        entry.iteration = iteration;
        if (cand) {
            ++stats_.candidate_inputs;
            for (auto c : cand->criteria) ++stats_.candidates[static_cast<std::size_t>(c)];
            entry.is_candidate = true;
            entry.criteria = cand->criteria;
            if (sink_) {
                CampaignEvent e;
                e.kind = CampaignEvent::Kind::Candidate;
                e.iteration = iteration;
                e.evaluation = stats_.evaluations;
                e.pricing_token = ev.pricing_token;
                e.profit = ev.profit;
                e.criteria = cand->criteria;
                e.seq = &seq;
                sink_(e);
            }
        }
        if (cand || new_best || novel || corpus_.size() == 0) {
            entry.seq = seq;
            corpus_.add(std::move(entry));
        }
        if (cand && !cfg_.no_grd()) escalate(*cand, iteration);
    }

    /// SGD once per candidate structure, then restarts from re-drawn
    /// arguments while the SGD share lasts.
    void escalate(const oracle::PopCandidate& cand, std::uint64_t iteration) {
        world::TxSequence shape = cand.seq;
        const auto vars = maximizer::extract_variables(shape, &sc_.initial);
        if (vars.empty()) return;
        // paced: the SGD share accrues per iteration, so early candidates
        // cannot starve later ones
        const std::uint64_t allowance = std::min(sgd_cap_, cfg_.sgd_share * iteration + cfg_.sgd_budget);
        if (stats_.sgd_evaluations >= allowance) return;
        for (const auto& v : vars) maximizer::write_variable(shape, v, v.lo);
        if (!structures_.insert(sequence_digest(shape)).second) return;

        auto profit_fn = [&](const world::TxSequence& s) {
            Evaluation ev = eval(s);
            ++stats_.sgd_evaluations;
            consider(s, ev);
            return maximizer::ProfitSample{ev.profit, ev.receipt.dead_mask(s.size())};
        };

        for (unsigned r = 0; r <= cfg_.restarts; ++r) {
            if (stats_.sgd_evaluations >= allowance) break;
            world::TxSequence start = r == 0 ? cand.seq : maximizer::restart(cand.seq, rng_, &sc_.initial);
            maximizer::SgdConfig sc;
            sc.budget = std::min(cfg_.sgd_budget, allowance - stats_.sgd_evaluations);
            sc.record = cfg_.record_schedules;
            auto res = maximizer::sgd(start, profit_fn, cand.culprit_txs, sc, rng_, &sc_.initial);
            ++stats_.sgd_runs;

            SgdRun run;
            run.iteration = iteration;
            run.restart = r;
            run.best_profit = res.best_profit;
            run.evaluations = res.evaluations;
            run.schedule = std::move(res.schedule);
            run.convergence = std::move(res.convergence);
            if (sink_) {
                CampaignEvent e;
                e.kind = CampaignEvent::Kind::SgdFinished;
                e.iteration = iteration;
                e.evaluation = stats_.evaluations;
                e.profit = run.best_profit;
                e.sgd = &run;
                sink_(e);
            }
            if (cfg_.record_schedules) sgd_runs_.push_back(std::move(run));

            if (!(res.best_seq == start)) {
                CorpusEntry entry;
                entry.seq = std::move(res.best_seq);
                entry.is_candidate = true;
                entry.criteria = cand.criteria;
                entry.profit = res.best_profit;
                entry.iteration = iteration;
                corpus_.add(std::move(entry));
            }
        }
    }

    scenarios::Scenario sc_;
    CampaignConfig cfg_;
    const EventSink& sink_;
    oracle::AccountingMode mode_;
    world::Executor exec_;
    actions::Mutator mutator_;
    actions::Rng rng_;
    Corpus corpus_;
    std::map<world::Address, Amount> initial_;
    std::map<world::Address, ProofOfProfit> best_;
    std::set<std::uint64_t> structures_;
    CampaignStats stats_;
    std::vector<SgdRun> sgd_runs_;
    std::uint64_t sgd_cap_ = 0;
    std::uint64_t iteration_ = 0;
};

}  // namespace

std::string_view to_string(Variant v) { return kVariantNames.at(static_cast<std::size_t>(v)); }

Variant parse_variant(std::string_view s) {
    for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
        if (kVariantNames[i] == s) return static_cast<Variant>(i);
    }
    if (s == "full") return Variant::Full;
    throw std::invalid_argument("unknown ablation '" + std::string(s) + "'");
}

const ProofOfProfit* CampaignResult::best_in(const world::Address& pricing) const {
    auto it = best.find(pricing);
    return it == best.end() ? nullptr : &it->second;
}

CampaignResult run_campaign(const scenarios::Scenario& sc, const CampaignConfig& cfg,
                            const EventSink& sink) {
    if (cfg.max_len == 0 || cfg.max_len > world::kDefaultMaxSequence) {
        throw std::invalid_argument("max sequence length must be in [1, " +
                                    std::to_string(world::kDefaultMaxSequence) + "]");
    }
    if (!cfg.no_grd() && cfg.sgd_budget == 0) throw std::invalid_argument("sgd budget must be positive");
    if (cfg.time_budget < 0) throw std::invalid_argument("time budget must not be negative");
    if (sc.pricing_tokens.empty() && cfg.pricing_tokens.empty()) {
        throw std::invalid_argument("scenario has no pricing token");
    }
    for (const auto& p : cfg.pricing_tokens) {
        if (!sc.initial.is_token(p) && p != world::Address::native()) {
            throw std::invalid_argument("pricing token " + p.hex() + " is not a token of the scenario");
        }
    }
    if (sc.seed_sequence().size() > cfg.max_len) {
        throw std::invalid_argument("victim transactions exceed the max sequence length");
    }
    Campaign c(sc, cfg, sink);
    return c.run();
}

}  // namespace pofuzz::engine
