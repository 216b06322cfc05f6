#include "lstamm/backtest.hpp"

#include "lstamm/cfmm.hpp"
#include "lstamm/errors.hpp"
#include "lstamm/price_process.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lstamm {
namespace {

void require_daily(std::span<const Date> dates, const std::string& what) {
    if (dates.empty()) throw DomainError(what + ": no data");
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (!(dates[i - 1] < dates[i])) throw DomainError(what + ": dates must be strictly increasing");
    }
    const auto gaps = missing_day_ranges(dates);
    if (gaps.empty()) return;
    std::string msg = what + ": missing days";
    for (const auto& g : gaps) msg += " " + g;
    throw DomainError(msg);
}

std::chrono::year_month month_of(Date d) {
    const std::chrono::year_month_day ymd{d};
    return {ymd.year(), ymd.month()};
}

}  // namespace

std::vector<double> staker_series(std::span<const Date> dates, std::span<const DatedValue> rates) {
    std::vector<double> out(dates.size(), 1.0);
    if (rates.empty() || dates.empty()) return out;
    std::map<Date, double> by_date;
    for (const auto& r : rates) by_date[r.date] = r.value;
    std::vector<std::string> missing;
    double log_growth = 0.0;
    for (std::size_t i = 1; i < dates.size(); ++i) {
        const auto it = by_date.find(dates[i]);
        if (it == by_date.end()) {
            missing.push_back(format_date(dates[i]));
            continue;
        }
        log_growth += it->second / kDaysPerYear;
        out[i] = std::exp(log_growth);
    }
    if (!missing.empty()) {
        std::string msg = "staking rates missing for";
        for (const auto& m : missing) msg += " " + m;
        throw DomainError(msg);
    }
    return out;
}

WealthSeries curve_lp_wealth(std::span<const CurveSnapshot> snapshots, const CurveBacktestOptions& options) {
    std::vector<Date> dates;
    dates.reserve(snapshots.size());
    for (const auto& s : snapshots) dates.push_back(s.date);
    require_daily(dates, "curve snapshots");
    for (const auto& s : snapshots) {
        if (!(s.reserves[0] > 0.0 && s.reserves[1] > 0.0)) throw DomainError("reserves must be > 0");
        if (!(s.lp_token_supply > 0.0)) throw DomainError("lp_token_supply must be > 0");
        if (!(s.lst_price > 0.0)) throw DomainError("lst_price must be > 0");
    }

    WealthSeries w;
    w.dates = dates;
    w.staker = staker_series(dates, options.staking_rates);
    // Balance growth of a rebasing token; reward LSTs carry it in the price.
    const std::vector<double> growth =
        options.kind == PoolLstKind::Rebase ? w.staker : std::vector<double>(dates.size(), 1.0);

    auto token_value = [](const CurveSnapshot& s) {
        return (s.reserves[0] * s.lst_price + s.reserves[1]) / s.lp_token_supply;
    };
    const CurveSnapshot& first = snapshots.front();
    const double v0 = token_value(first);
    // Token amounts behind one unit of capital on day 0.
    const double x0 = first.reserves[0] / (first.lp_token_supply * v0);
    const double y0 = first.reserves[1] / (first.lp_token_supply * v0);
    const double lst_units = x0 + y0 / first.lst_price;

    double rewards = 0.0;
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        const CurveSnapshot& s = snapshots[i];
        const double lp = i == 0 ? 1.0 : token_value(s) / v0;
        if (i > 0) rewards += s.crv_reward_value / v0;
        w.lp.push_back(lp);
        w.lp_plus_rewards.push_back(lp + rewards);
        w.hold.push_back(i == 0 ? 1.0 : x0 * s.lst_price * growth[i] + y0);
        w.lst.push_back(i == 0 ? 1.0 : lst_units * s.lst_price * growth[i]);
    }
    return w;
}

void ClmmBacktestConfig::validate() const {
    if (!std::isfinite(fee_rate) || fee_rate < 0.0 || fee_rate >= 1.0) throw DomainError("fee_rate must lie in [0, 1)");
    if (!(lower_factor > 0.0 && lower_factor < upper_factor && std::isfinite(upper_factor))) {
        throw DomainError("range factors need 0 < lower_factor < upper_factor");
    }
    if (!(lower_factor <= 1.0 && upper_factor >= 1.0)) {
        throw DomainError("range factors must bracket the open price");
    }
    if (!std::isfinite(gas_per_rebalance) || gas_per_rebalance < 0.0) {
        throw DomainError("gas_per_rebalance must be >= 0");
    }
}

std::array<double, 2> event_fee(const SwapEvent& event, double fee_rate, double position_liquidity) {
    if (!(event.active_liquidity > 0.0)) return {0.0, 0.0};
    const double share = std::min(1.0, position_liquidity / event.active_liquidity);
    return {fee_rate * event.amount_in[0] * share, fee_rate * event.amount_in[1] * share};
}

ClmmBacktestResult clmm_backtest(std::span<const SwapEvent> events, std::span<const DatedValue> daily_prices,
                                 std::span<const DatedValue> staking_rates, const ClmmBacktestConfig& config) {
    config.validate();
    std::vector<Date> dates;
    for (const auto& p : daily_prices) {
        if (!(p.value > 0.0) || !std::isfinite(p.value)) throw DomainError("daily prices must be > 0");
        dates.push_back(p.date);
    }
    require_daily(dates, "daily prices");
    for (std::size_t k = 1; k < events.size(); ++k) {
        if (events[k].timestamp < events[k - 1].timestamp) throw DomainError("swap events must be time-sorted");
    }

    ClmmBacktestResult out;
    WealthSeries& w = out.wealth;
    w.dates = dates;
    w.staker = staker_series(dates, staking_rates);

    const double p0 = daily_prices.front().value;
    ClmmPosition position;
    double hold_x = 0.0;
    double hold_y = 0.0;
    std::array<double, 2> fees{0.0, 0.0};
    double realized_fees = 0.0;

    // Puts `wealth` into a fresh range around `price`; HOLD takes the same
    // composition, scaled to its own wealth.
    auto open = [&](Date date, double price, double wealth, double hold_wealth) {
        position.lower_price = price * config.lower_factor;
        position.upper_price = price * config.upper_factor;
        position.liquidity = 1.0;
        const Holdings unit = clmm_holdings(position, price);
        const double unit_value = unit.lst * price + unit.underlying;
        position.liquidity = wealth / unit_value;
        hold_x = unit.lst / unit_value * hold_wealth;
        hold_y = unit.underlying / unit_value * hold_wealth;
        out.resets.push_back({date, price, position.lower_price, position.upper_price, position.liquidity, wealth});
    };
    auto lp_value = [&](double price) {
        const Holdings h = clmm_holdings(position, price);
        return h.lst * price + h.underlying + fees[0] * price + fees[1];
    };

    open(dates.front(), p0, 1.0, 1.0);
    w.lp.push_back(1.0);
    w.hold.push_back(1.0);
    w.lst.push_back(1.0);
    out.fees.push_back(0.0);

    std::size_t k = 0;
    while (k < events.size() && events[k].date() <= dates.front()) ++k;

    for (std::size_t i = 1; i < dates.size(); ++i) {
        const double prev = daily_prices[i - 1].value;
        const bool month_change = month_of(dates[i]) != month_of(dates[i - 1]);
        const bool exited = prev < position.lower_price || prev > position.upper_price;
        if (month_change || (config.recenter_on_exit && exited)) {
            realized_fees += fees[0] * prev + fees[1];
            const double wealth = lp_value(prev) - config.gas_per_rebalance;
            if (!(wealth > 0.0)) throw DomainError("gas deductions exhausted the position");
            fees = {0.0, 0.0};
            open(dates[i], prev, wealth, hold_x * prev + hold_y);
        }
        for (; k < events.size() && events[k].date() == dates[i]; ++k) {
            const SwapEvent& e = events[k];
            if (!(e.active_liquidity > 0.0)) {
                ++out.skipped_events;
                continue;
            }
            if (e.pool_price < position.lower_price || e.pool_price > position.upper_price) {
                ++out.out_of_range_events;
                continue;
            }
            const auto f = event_fee(e, config.fee_rate, position.liquidity);
            fees[0] += f[0];
            fees[1] += f[1];
            ++out.applied_events;
        }
        const double price = daily_prices[i].value;
        w.lp.push_back(lp_value(price));
        w.hold.push_back(hold_x * price + hold_y);
        w.lst.push_back(price / p0);
        out.fees.push_back(realized_fees + fees[0] * price + fees[1]);
    }
    w.lp_plus_rewards = w.lp;
    return out;
}

}  // namespace lstamm
