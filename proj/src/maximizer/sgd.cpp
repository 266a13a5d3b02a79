#include "pofuzz/maximizer/sgd.hpp"

#include <array>

namespace pofuzz::maximizer {

namespace {

constexpr std::array<std::string_view, 4> kRuleNames = {"init", "grow", "flip", "retire"};

Signed abs_s(const Signed& v) { return v < 0 ? Signed(-v) : v; }

int sgn(const Signed& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

/// x + step when it stays inside [lo, hi].
std::optional<Amount> shifted(const Amount& x, const Signed& step, const Domain& d) {
    Signed v = Signed(x) + step;
    if (v < Signed(d.lo) || v > Signed(d.hi)) return std::nullopt;
    return to_amount(v);
}

constexpr int kEscalations = 8;
constexpr unsigned kEscalationFactor = 16;

struct VarState {
    Signed alpha;
    int gprev = 0;
    bool started = false;
    bool retired = false;
};

}  // namespace

std::string_view to_string(StepRule r) { return kRuleNames.at(static_cast<std::size_t>(r)); }

int Gradient::sign() const {
    if (!defined) return 0;
    return sgn(diff) * sgn(delta);
}

Signed Gradient::value() const { return defined && delta != 0 ? Signed(diff / delta) : Signed(0); }

Gradient finite_difference(const Objective& f, const std::vector<Amount>& x, std::size_t i,
                           const Signed& delta, const Signed& fx) {
    Gradient g;
    g.delta = delta;
    Signed v = Signed(x.at(i)) + delta;
    if (delta == 0 || v < 0 || v > Signed(max_amount())) return g;
    std::vector<Amount> xp = x;
    xp[i] = to_amount(v);
    auto p = f(xp);
    if (!p) return g;
    g.defined = true;
    g.diff = *p - fx;
    return g;
}

SgdOutcome optimize(const std::vector<Domain>& domains, std::vector<Amount> x0, const Objective& f,
                    const SgdConfig& cfg, actions::Rng& rng) {
    SgdOutcome out;
    std::vector<Amount> x = std::move(x0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < domains[i].lo) x[i] = domains[i].lo;
        if (x[i] > domains[i].hi) x[i] = domains[i].hi;
    }
    auto eval = [&](const std::vector<Amount>& pt) -> std::optional<Signed> {
        ++out.evaluations;
        auto r = f(pt);
        if (r && (!out.defined || *r > out.best_profit)) {
            out.defined = true;
            out.best_profit = *r;
            out.best_x = pt;
            if (cfg.record) out.convergence.emplace_back(out.evaluations, *r);
        }
        return r;
    };
    auto spent = [&] { return out.evaluations >= cfg.budget; };

    auto fx_opt = eval(x);
    out.best_x = x;
    if (!fx_opt) return out;
    Signed fx = *fx_opt;

    std::vector<VarState> vs(x.size());
    while (!spent()) {
        std::vector<std::size_t> active;
        std::vector<std::uint64_t> weight;
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (vs[i].retired) continue;
            active.push_back(i);
            weight.push_back(domains[i].favored ? cfg.favored_weight : 1);
            total += weight.back();
        }
        if (active.empty()) break;
        std::uint64_t roll = actions::uniform_index(rng, total);
        std::size_t k = 0;
        while (roll >= weight[k]) roll -= weight[k++];
        const std::size_t i = active[k];
        const Domain& d = domains[i];
        VarState& v = vs[i];

        // probe ladder: +-1, +-max(1, |x|/256), then x16 escalations so
        // integer plateaus do not read as a zero gradient
        Signed wide = Signed(x[i] / 256);
        if (wide < 1) wide = 1;
        std::vector<Signed> ladder = {Signed(1), Signed(-1)};
        for (int k = 0; k <= kEscalations; ++k) {
            if (wide > 1) {
                ladder.push_back(wide);
                ladder.push_back(-wide);
            }
            wide *= kEscalationFactor;
        }
        int g = 0;
        Signed probe = 0;
        for (const auto& delta : ladder) {
            if (spent()) break;
            auto xp = shifted(x[i], delta, d);
            if (!xp) continue;
            std::vector<Amount> pt = x;
            pt[i] = *xp;
            auto p = eval(pt);
            if (!p || *p == fx) continue;
            g = sgn(Signed(*p - fx)) * sgn(delta);
            probe = abs_s(delta);
            break;
        }

        ScheduleEntry e;
        e.var = i;
        e.additive = d.additive;
        e.gradient = g;
        e.alpha_prev = v.alpha;
        e.x_before = x[i];
        e.x_after = x[i];
        e.profit = fx;

        auto retire = [&](StepRule rule) {
            v.retired = true;
            v.started = false;
            v.alpha = 0;
            e.rule = rule;
            e.alpha = 0;
            e.applied = 0;
        };

        if (g == 0) {
            if (spent()) break;  // ran out mid-probe; the gradient is unknown, not zero
            retire(StepRule::Retire);
        } else {
            if (!v.started) {
                Signed a = Signed(x[i] / 16);
                if (a < probe) a = probe;
                if (a < 1) a = 1;
                v.alpha = g * a;
                e.rule = StepRule::Init;
            } else if (g == v.gprev) {
                Signed mag = abs_s(v.alpha);
                if (d.additive) {
                    mag += Signed(actions::uniform_index(rng, kRepeatN));
                } else {
                    mag = (mag * kGrowNum + (kGrowDen - 1)) / kGrowDen;
                }
                v.alpha = sgn(v.alpha) * mag;
                e.rule = StepRule::Grow;
            } else {
                v.alpha = -sgn(v.alpha) * Signed(abs_s(v.alpha) / kShrinkDen);
                e.rule = StepRule::Flip;
            }
            v.gprev = g;
            v.started = true;
            e.alpha = v.alpha;

            if (v.alpha == 0) {
                v.retired = true;
                v.started = false;
                e.applied = 0;
            } else {
                // explosion / vanishing: back off toward the segment boundary
                Signed step = v.alpha;
                bool moved = false;
                while (step != 0 && !spent()) {
                    auto xn = shifted(x[i], step, d);
                    if (xn) {
                        std::vector<Amount> pt = x;
                        pt[i] = *xn;
                        if (auto p = eval(pt)) {
                            x = std::move(pt);
                            fx = *p;
                            moved = true;
                            break;
                        }
                    }
                    step /= 2;
                }
                e.applied = moved ? step : Signed(0);
                if (moved) {
                    v.alpha = step;
                    for (std::size_t j = 0; j < vs.size(); ++j) {
                        if (j != i && vs[j].retired) {
                            vs[j].retired = false;
                            vs[j].started = false;
                            vs[j].alpha = 0;
                        }
                    }
                } else {
                    v.retired = true;
                    v.started = false;
                    v.alpha = 0;
                }
            }
        }
        e.x_after = x[i];
        e.profit = fx;
        e.evaluation = out.evaluations;
        if (cfg.record) out.schedule.push_back(e);
    }
    out.budget_exhausted = spent();
    return out;
}

Gradient gradient(const world::TxSequence& seq, const VariableRef& var, const Signed& delta,
                  const SequenceProfit& f) {
    ProfitSample base = f(seq);
    Gradient g;
    g.delta = delta;
    Signed v = Signed(read_variable(seq, var)) + delta;
    if (delta == 0 || v < Signed(var.lo) || v > Signed(var.hi)) return g;
    world::TxSequence moved = seq;
    write_variable(moved, var, to_amount(v));
    ProfitSample p = f(moved);
    if ((p.dead_mask & ~base.dead_mask) != 0) return g;
    g.defined = true;
    g.diff = p.profit - base.profit;
    return g;
}

SgdResult sgd(const world::TxSequence& seq, const SequenceProfit& f,
              const std::set<std::size_t>& culprit_txs, const SgdConfig& cfg, actions::Rng& rng,
              const world::WorldState* state) {
    SgdResult res;
    res.vars = extract_variables(seq, state);
    std::vector<Domain> domains;
    std::vector<Amount> x0;
    for (const auto& r : res.vars) {
        Domain d;
        d.lo = r.lo;
        d.hi = r.hi;
        d.additive = r.additive();
        d.favored = culprit_txs.count(r.tx_index()) != 0;
        domains.push_back(d);
        x0.push_back(read_variable(seq, r));
    }

    std::uint64_t base_mask = 0;
    bool have_base = false;
    Objective obj = [&](const std::vector<Amount>& x) -> std::optional<Signed> {
        world::TxSequence s = seq;
        for (std::size_t i = 0; i < x.size(); ++i) write_variable(s, res.vars[i], x[i]);
        ProfitSample p = f(s);
        if (!have_base) {
            base_mask = p.dead_mask;
            have_base = true;
        } else if ((p.dead_mask & ~base_mask) != 0) {
            return std::nullopt;
        }
        return p.profit;
    };

    SgdOutcome o = optimize(domains, x0, obj, cfg, rng);
    res.best_profit = o.best_profit;
    res.best_seq = seq;
    for (std::size_t i = 0; i < o.best_x.size(); ++i) write_variable(res.best_seq, res.vars[i], o.best_x[i]);
    res.evaluations = o.evaluations;
    res.budget_exhausted = o.budget_exhausted;
    res.schedule = std::move(o.schedule);
    res.convergence = std::move(o.convergence);
    return res;
}

}  // namespace pofuzz::maximizer
