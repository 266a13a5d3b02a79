#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracles {

const Int& word_limit() {
    static const Int limit = Int(1) << 256;
    return limit;
}

std::optional<Int> cp_out(const Int& in, const Int& reserve_in, const Int& reserve_out) {
    if (reserve_in == 0 || reserve_out == 0) return std::nullopt;
    const Int with_fee = in * 997;
    const Int num = with_fee * reserve_out;
    const Int den = reserve_in * 1000 + with_fee;
    if (with_fee >= word_limit() || num >= word_limit() || den >= word_limit()) return std::nullopt;
    return num / den;
}

namespace {

Int pow2_real(double t) {
    // floor(2^t) for t >= 0 with 52 bits of mantissa
    const double e = std::floor(t);
    const double mant = std::exp2(t - e);
    Int m = Int(static_cast<std::uint64_t>(std::ldexp(mant, 52)));
    const long shift = static_cast<long>(e) - 52;
    if (shift >= 0) return m << shift;
    return m >> (-shift);
}

}  // namespace

MintOptimum public_mint(const Int& pool_token, const Int& pool_pricing) {
    MintOptimum best;
    // supply must stay below 2^256 after the mint
    const Int cap = word_limit() - 1 - pool_token;
    auto profit = [&](const Int& m) -> Int {
        ++best.evaluations;
        if (m == 0 || m > cap) return Int(0);
        auto out = cp_out(m, pool_token, pool_pricing);
        return out ? *out : Int(0);
    };
    auto consider = [&](const Int& m) {
        Int p = profit(m);
        if (p > best.profit) {
            best.profit = p;
            best.amount = m;
        }
        return p;
    };

    const double phi = (std::sqrt(5.0) - 1) / 2;
    double a = 0, b = 256;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    Int fc = consider(pow2_real(c)), fd = consider(pow2_real(d));
    for (int i = 0; i < 200 && b - a > 1e-9; ++i) {
        // ties move left: the profit is a plateau followed by an overflow cliff
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = consider(pow2_real(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = consider(pow2_real(d));
        }
    }
    for (int k = 0; k <= 256 * 16; ++k) consider(pow2_real(k / 16.0));
    return best;
}

BuyOptimum zero_cost_buy(const Int& inventory, const Int& unit, std::uint64_t max_calls,
                         const Int& pool_token, const Int& pool_pricing) {
    BuyOptimum best;
    for (std::uint64_t c = 1; c <= max_calls; ++c) {
        const Int n = std::min<Int>(unit - 1, inventory / c);
        if (n == 0) break;
        auto out = cp_out(n * c, pool_token, pool_pricing);
        if (out && *out > best.profit) {
            best.profit = *out;
            best.calls = c;
            best.per_call = n;
        }
    }
    return best;
}

FeeOptimum fee_transfer(const Int& balance, unsigned rate_permille, const Int& pool_token,
                        const Int& pool_pricing) {
    auto debit = [&](const Int& s) { return s + s * rate_permille / 1000; };
    Int s = balance * 1000 / (1000 + rate_permille);
    while (debit(s + 1) <= balance) ++s;
    while (s > 0 && debit(s) > balance) --s;
    FeeOptimum r;
    r.sell = s;
    auto out = cp_out(s, pool_token, pool_pricing);
    r.profit = out ? *out : Int(0);
    return r;
}

Int vault_profit(const Int& v, const Int& d) {
    const Int balance = 1 + d;
    const Int victim_shares = v * 1 / balance;
    const Int redeemed = (balance + v) * 1 / (1 + victim_shares);
    return redeemed - balance;
}

VaultOptimum rounding_vault(const Int& v, const Int& attacker_balance) {
    VaultOptimum best;
    best.profit = -1;
    for (Int d = 0; d <= 2 * v; ++d) {
        if (1 + d > attacker_balance) break;
        Int p = vault_profit(v, d);
        if (p > best.profit) {
            best.profit = p;
            best.donation = d;
        }
    }
    return best;
}

std::optional<Int> burn_profit(const BurnMarket& m, BurnPricing pricing, unsigned pct, const Int& burn) {
    // after the buy
    Int usd = m.attacker_usd;
    Int end = 0;
    Int eu_end = m.end_usd_end, eu_usd = m.end_usd_usd;
    Int ew_end = m.end_wbnb_end, ew_wbnb = m.end_wbnb_wbnb;

    const Int in = usd * pct / 100;
    if (in > 0) {
        auto out = cp_out(in, eu_usd, eu_end);
        if (!out || *out == 0) return std::nullopt;
        usd -= in;
        end = *out;
        eu_usd += in;
        eu_end -= *out;
    }

    // burn from the pool matching the pricing token, then sync
    Int& pool_end = pricing == BurnPricing::Usd ? eu_end : ew_end;
    if (burn > pool_end) return std::nullopt;
    pool_end -= burn;

    if (pricing == BurnPricing::Usd) {
        Int final_usd = usd;
        if (end > 0) {
            auto q = cp_out(end, eu_end, eu_usd);
            if (q && *q > 0) final_usd += *q;
        }
        return final_usd - m.attacker_usd;
    }

    // WBNB liquidation: END sells directly; USD goes USD -> END first and
    // the END is sold on in the same pass when END comes later in address
    // order, otherwise in the second pass
    auto value_in_wbnb = [](Int usd_bal, Int end_bal, Int eu_e, Int eu_u, Int ew_e, Int ew_w, bool usd_first) {
        Int wbnb = 0;
        auto sell_end = [&] {
            if (end_bal == 0) return;
            auto q = cp_out(end_bal, ew_e, ew_w);
            if (!q || *q == 0) return;
            wbnb += *q;
            ew_e += end_bal;
            ew_w -= *q;
            end_bal = 0;
        };
        auto sell_usd = [&] {
            if (usd_bal == 0) return;
            auto q = cp_out(usd_bal, eu_u, eu_e);
            if (!q || *q == 0) return;
            end_bal += *q;
            eu_u += usd_bal;
            eu_e -= *q;
            usd_bal = 0;
        };
        if (usd_first) {
            sell_usd();
            sell_end();
        } else {
            sell_end();
            sell_usd();
        }
        sell_end();
        return wbnb;
    };
    const Int initial = value_in_wbnb(m.attacker_usd, 0, m.end_usd_end, m.end_usd_usd, m.end_wbnb_end,
                                      m.end_wbnb_wbnb, m.usd_before_end);
    const Int final_value = value_in_wbnb(usd, end, eu_end, eu_usd, ew_end, ew_wbnb, m.usd_before_end);
    return final_value - initial;
}

BurnOptimum public_burn(const BurnMarket& m, BurnPricing pricing) {
    BurnOptimum best;
    bool any = false;
    unsigned best_f = 0;
    auto pool_end_after_buy = [&](unsigned pct) -> Int {
        if (pricing == BurnPricing::Wbnb) return m.end_wbnb_end;
        const Int in = m.attacker_usd * pct / 100;
        auto out = cp_out(in, m.end_usd_usd, m.end_usd_end);
        return m.end_usd_end - (out ? *out : Int(0));
    };
    auto consider = [&](unsigned pct, const Int& b) {
        auto p = burn_profit(m, pricing, pct, b);
        if (p && (!any || *p > best.profit)) {
            any = true;
            best.profit = *p;
            best.pct = pct;
            best.burn = b;
            return true;
        }
        return false;
    };

    for (unsigned pct = 1; pct <= 100; ++pct) {
        const Int pool = pool_end_after_buy(pct);
        for (unsigned f = 0; f <= 1000; ++f) {
            if (consider(pct, pool * f / 1000)) best_f = f;
        }
    }

    // refine: neighbouring percentages, the whole cell at 2000 points, and
    // the top 2000 integers of the cell (profit rises with the burn)
    const unsigned p_lo = best.pct > 2 ? best.pct - 2 : 1;
    const unsigned p_hi = std::min(100u, best.pct + 2);
    const unsigned f_lo = best_f > 0 ? best_f - 1 : 0;
    const unsigned f_hi = std::min(1000u, best_f + 1);
    for (unsigned pct = p_lo; pct <= p_hi; ++pct) {
        const Int pool = pool_end_after_buy(pct);
        const Int lo = pool * f_lo / 1000;
        const Int hi = pool * f_hi / 1000;
        for (int k = 0; k <= 2000; ++k) consider(pct, lo + (hi - lo) * k / 2000);
        for (Int b = hi > 2000 ? Int(hi - 2000) : Int(0); b <= hi; ++b) consider(pct, b);
    }
    return best;
}

}  // namespace oracles
