#pragma once

// Historical replay of LST pools. Every wealth series is in units of the
// underlying and normalized to an initial capital of 1.

#include "lstamm/csv.hpp"
#include "lstamm/ingest.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace lstamm {

struct WealthSeries {
    std::vector<Date> dates;
    std::vector<double> lp;
    std::vector<double> lp_plus_rewards;
    std::vector<double> hold;
    std::vector<double> lst;
    std::vector<double> staker;  // compounded staking rate, independent of pool data

    std::size_t size() const noexcept { return dates.size(); }
};

/// Staker wealth from daily annualized rates: element 0 is 1 and day i grows
/// by e^{rate_i/365}, where rate_i is the rate dated day i. An empty rate
/// list means a zero rate; otherwise every day after the first must be
/// covered (DomainError listing the missing days).
std::vector<double> staker_series(std::span<const Date> dates, std::span<const DatedValue> rates);

enum class PoolLstKind { Reward, Rebase };

struct CurveBacktestOptions {
    PoolLstKind kind = PoolLstKind::Reward;
    // Daily staking rates. Feed the staker series and, for rebase pools,
    // the daily balance growth of the HOLD and LST portfolios.
    std::vector<DatedValue> staking_rates;
};

/// LP-token value (r0 * lst_price + r1) / supply, normalized to day 0.
/// lp_plus_rewards adds the cumulative crv reward per LP token (rewards of
/// day 0 are not counted); HOLD keeps the day-0 token amounts behind one
/// unit of capital, LST converts them all into the LST at the day-0 price.
/// Snapshots must be sorted and daily-contiguous (DomainError otherwise).
WealthSeries curve_lp_wealth(std::span<const CurveSnapshot> snapshots, const CurveBacktestOptions& options = {});

struct ClmmBacktestConfig {
    double fee_rate = 0.0005;
    double lower_factor = 0.9975;  // range bounds relative to the month-open price
    double upper_factor = 1.0075;
    double gas_per_rebalance = 0.0;  // flat deduction, in underlying, per reset
    bool recenter_on_exit = false;   // re-center as soon as a daily close leaves the range

    void validate() const;
};

struct ClmmReset {
    Date date;  // first day the new range is active
    double open_price = 0.0;
    double lower_price = 0.0;
    double upper_price = 0.0;
    double liquidity = 0.0;
    double wealth = 0.0;  // capital deployed into the new range
};

struct ClmmBacktestResult {
    WealthSeries wealth;
    std::vector<double> fees;  // cumulative fee value at each close, in underlying
    std::vector<ClmmReset> resets;
    std::size_t applied_events = 0;
    std::size_t out_of_range_events = 0;
    std::size_t skipped_events = 0;  // zero active liquidity
};

/// Fee owed to a position of liquidity L for one in-range swap, per input
/// token: fee_rate * amount_in * min(1, L / active_liquidity). Zero for
/// events without active liquidity.
std::array<double, 2> event_fee(const SwapEvent& event, double fee_rate, double position_liquidity);

/// Replays a concentrated position that opens at the close of the first
/// price day and is re-opened at every UTC month change, at the previous
/// day's close, with range [P * lower_factor, P * upper_factor]. Accrued
/// fees are reinvested at each reset. Events dated after the first day and
/// inside the price range are applied; HOLD is re-based on the position's
/// composition at each reset, LST is bought once at the first close.
ClmmBacktestResult clmm_backtest(std::span<const SwapEvent> events, std::span<const DatedValue> daily_prices,
                                 std::span<const DatedValue> staking_rates = {},
                                 const ClmmBacktestConfig& config = {});

enum class MaLabel { Green, Yellow, Red };
enum class LpSeries { Lp, LpPlusRewards };

std::string_view to_string(MaLabel label) noexcept;
std::string_view to_string(LpSeries series) noexcept;

struct MaClassification {
    int window = 7;
    LpSeries series = LpSeries::Lp;
    std::vector<Date> dates;  // day i of the series for i >= window
    std::vector<MaLabel> labels;
    std::vector<double> lp_return;  // wealth[i] / wealth[i - window] - 1
    std::vector<double> hold_return;
    std::vector<double> lst_return;
};

/// Labels every day that has a full trailing window. Green: LP return >=
/// both HOLD and LST returns; Yellow: >= HOLD only; Red otherwise.
/// Window must be 7 or 30 and the series at least that long.
MaClassification moving_average_classification(const WealthSeries& series, int window,
                                               LpSeries lp_series = LpSeries::Lp);

}  // namespace lstamm
