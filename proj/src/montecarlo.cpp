#include "lstamm/montecarlo.hpp"

#include "lstamm/errors.hpp"
#include "lstamm/metrics.hpp"
#include "lstamm/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <variant>

namespace lstamm {
namespace {

template <class F>
double pairwise_sum(std::size_t begin, std::size_t end, const F& term) {
    const std::size_t n = end - begin;
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += term(i);
        return s;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, const F& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2 * threads) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
}

}  // namespace

McEstimate summarize(std::span<const double> samples, double closed_form) {
    McEstimate e;
    e.n_paths = samples.size();
    e.closed_form = closed_form;
    if (samples.empty()) throw DomainError("no samples");
    const double n = static_cast<double>(samples.size());
    const double ref = samples[0];
    e.mean = ref + pairwise_sum(0, samples.size(), [&](std::size_t i) { return samples[i] - ref; }) / n;
    if (samples.size() > 1) {
        const double ss = pairwise_sum(0, samples.size(), [&](std::size_t i) {
            const double dev = samples[i] - e.mean;
            return dev * dev;
        });
        e.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    if (e.std_error > 0.0) {
        e.z_score = (e.mean - closed_form) / e.std_error;
    } else if (e.mean != closed_form) {
        e.z_score = std::copysign(std::numeric_limits<double>::infinity(), e.mean - closed_form);
    }
    return e;
}

RequiredReturnEstimates estimate_expected_rr(FamilyTag family, double staking_rate, double sigma, double t,
                                             std::size_t n_paths, std::uint64_t seed, unsigned threads) {
    if (family != FamilyTag::ConstantProduct) {
        throw DomainError("closed-form expectations exist only for the constant-product family");
    }
    if (n_paths < 2) throw DomainError("need at least two paths");
    if (!std::isfinite(sigma) || sigma < 0.0) throw DomainError("sigma must be >= 0");
    if (!std::isfinite(t) || t < 0.0) throw DomainError("t must be >= 0");

    std::vector<double> lvh(n_paths);
    std::vector<double> lvs(n_paths);
    const double sqrt_t = std::sqrt(t);
    parallel_for(n_paths, threads, [&](std::size_t i) {
        RandomStream rng(seed, i);
        const double b = sqrt_t * rng.next_normal();
        lvh[i] = cpmm_rr_lvh_closed(staking_rate, sigma, t, b);
        lvs[i] = cpmm_rr_lvs_closed(staking_rate, sigma, t, b);
    });
    const ExpectedReturns expected = cpmm_expected_rr(staking_rate, sigma, t);
    return {summarize(lvh, expected.e_lvh), summarize(lvs, expected.e_lvs)};
}

namespace {

constexpr double kAlignTolerance = 1e-12;

struct Ledger {
    double fee_lst = 0.0;
    double fee_underlying = 0.0;
    double arbitrage_profit = 0.0;
};

// Price band inside which no fee-paying arbitrage is profitable.
std::pair<double, double> no_arbitrage_band(double price, double fee_rate) {
    return {price * (1.0 - fee_rate), price / (1.0 - fee_rate)};
}

double align_target(double spot, double price, double fee_rate) {
    const auto [lo, hi] = no_arbitrage_band(price, fee_rate);
    if (spot < lo) return lo;
    if (spot > hi) return hi;
    return spot;
}

// Concentrated position, trades on sqrt price directly.
struct ClmmAligner {
    ClmmPosition position;
    double fee_rate;
    double pool_price;
    Holdings holdings;

    void step(double price, Ledger& ledger) {
        double target = align_target(pool_price, price, fee_rate);
        target = std::clamp(target, position.lower_price, position.upper_price);
        if (target == pool_price) return;
        const Holdings next = clmm_holdings(position, target);
        const double net_lst_in = next.lst - holdings.lst;
        const double net_under_in = next.underlying - holdings.underlying;
        if (net_under_in > 0.0) {
            const double gross = net_under_in / (1.0 - fee_rate);
            ledger.fee_underlying += gross - net_under_in;
            ledger.arbitrage_profit += -net_lst_in * price - gross;
        } else if (net_lst_in > 0.0) {
            const double gross = net_lst_in / (1.0 - fee_rate);
            ledger.fee_lst += gross - net_lst_in;
            ledger.arbitrage_profit += -net_under_in - gross * price;
        }
        holdings = next;
        pool_price = target;
    }
};

// Everything else goes through swap(); the trade size is found by bisection
// on the post-trade spot price, except for the zero-fee constant product
// where the aligned reserves are closed form.
struct PoolAligner {
    PoolState state;

    double spot() const { return spot_price(state); }

    void step(double price, Ledger& ledger) {
        const double spot_now = spot();
        const double target = align_target(spot_now, price, state.fee_rate);
        if (std::abs(target - spot_now) <= kAlignTolerance * target) return;

        if (family_tag(state.family) == FamilyTag::ConstantProduct && state.fee_rate == 0.0) {
            const double l = std::sqrt(state.reserves[0]) * std::sqrt(state.reserves[1]);
            const Holdings next = cpmm_holdings(l, target);
            const double dx = next.lst - state.reserves[0];
            const double dy = next.underlying - state.reserves[1];
            ledger.arbitrage_profit += -(dx * price + dy);
            state.reserves = {next.lst, next.underlying};
            return;
        }

        const bool buy_lst = spot_now < target;
        const std::size_t in = buy_lst ? 1 : 0;
        const std::size_t out = buy_lst ? 0 : 1;
        auto overshoot = [&](double amount) {
            const double s = swap(state, in, out, amount).spot_price_after;
            return buy_lst ? s - target : target - s;
        };

        double lo = 0.0;
        double hi = state.reserves[in] * 1e-6;
        for (int i = 0; i < 200 && overshoot(hi) < 0.0; ++i) {
            lo = hi;
            hi *= 2.0;
        }
        double amount = hi;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (!(mid > lo && mid < hi)) break;
            const double over = overshoot(mid);
            amount = mid;
            if (std::abs(over) <= kAlignTolerance * target) break;
            if (over < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }

        const SwapQuote q = swap(state, in, out, amount);
        const double in_price = buy_lst ? 1.0 : price;
        const double out_price = buy_lst ? price : 1.0;
        ledger.arbitrage_profit += q.amount_out * out_price - q.amount_in * in_price;
        if (state.fee_mode == FeeMode::FeesAccruedSeparately) {
            (buy_lst ? ledger.fee_underlying : ledger.fee_lst) += q.fee_paid;
        }
        state.reserves = q.new_reserves;
    }
};

}  // namespace

LpSimulation simulate_lp_path(const PoolState& pool0, const PricePath& path) {
    pool0.validate();
    if (pool0.reserves.size() != 2) throw DomainError("simulation supports two-token pools");
    if (path.prices.empty() || path.prices.size() != path.times.size()) {
        throw DomainError("price path is empty or malformed");
    }
    const double p0 = path.prices[0];
    const double spot0 = spot_price(pool0);
    if (std::abs(spot0 - p0) > 1e-9 * p0) {
        throw DomainError("pool spot price must equal the path price at t = 0");
    }

    const Holdings initial{pool0.reserves[0], pool0.reserves[1]};
    std::variant<ClmmAligner, PoolAligner> aligner = PoolAligner{pool0};
    if (const auto* c = std::get_if<ConcentratedLiquidity>(&pool0.family)) {
        const double l = clmm_liquidity(initial.lst, initial.underlying, c->lower_price, c->upper_price);
        aligner = ClmmAligner{{l, c->lower_price, c->upper_price}, pool0.fee_rate, spot0, initial};
    }

    LpSimulation sim;
    Ledger ledger;
    const std::size_t n = path.prices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double price = path.prices[i];
        Holdings h;
        double pool_price = 0.0;
        std::visit(
            [&](auto& a) {
                if (i > 0) a.step(price, ledger);
                if constexpr (std::is_same_v<std::decay_t<decltype(a)>, ClmmAligner>) {
                    h = a.holdings;
                    pool_price = a.pool_price;
                } else {
                    h = {a.state.reserves[0], a.state.reserves[1]};
                    pool_price = a.spot();
                }
            },
            aligner);
        const BenchmarkValues v = benchmark_values(initial, h, p0, price, path.times[i]);
        sim.times.push_back(path.times[i]);
        sim.prices.push_back(price);
        sim.pool_prices.push_back(pool_price);
        sim.lst_reserve.push_back(h.lst);
        sim.underlying_reserve.push_back(h.underlying);
        sim.v_lp.push_back(v.v_lp);
        sim.v_lp_with_fees.push_back(v.v_lp + ledger.fee_lst * price + ledger.fee_underlying);
        sim.v_hold.push_back(v.v_hold);
        sim.v_lst.push_back(v.v_lst);
        sim.arbitrage_profit.push_back(ledger.arbitrage_profit);
    }
    return sim;
}

}  // namespace lstamm
