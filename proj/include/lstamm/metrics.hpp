#pragma once

// Benchmark portfolios and required fee returns for LST liquidity.
//
// All values are in units of the underlying. A required return rr is the fee
// return an LP needs to match a benchmark: rr = benchmark / V_LP - 1, as a
// fraction.

#include "lstamm/cfmm.hpp"

namespace lstamm {

struct BenchmarkValues {
    double v_lp = 0.0;
    double v_hold = 0.0;
    double v_lst = 0.0;
    double at_time = 0.0;
};

struct RequiredReturns {
    double rr_lvh = 0.0;
    double rr_lvs = 0.0;
};

struct ExpectedReturns {
    double e_lvh = 0.0;
    double e_lvs = 0.0;
};

struct ClmmSymmetricValues {
    double v_lp = 0.0;
    double v_lst = 0.0;
    double v_hold_adjusted = 0.0;  // HOLD of a 50-50 split of the initial value
};

/// V_LP = x_t P_t + y_t, V_HOLD = x_0 P_t + y_0, V_LST = (x_0 + y_0/P_0) P_t.
BenchmarkValues benchmark_values(const Holdings& initial, const Holdings& current, double initial_price,
                                 double price, double at_time = 0.0);

RequiredReturns required_returns(const BenchmarkValues& values);

/// Path-wise constant-product required returns given B(t).
double cpmm_rr_lvs_closed(double staking_rate, double sigma, double t, double brownian);
double cpmm_rr_lvh_closed(double staking_rate, double sigma, double t, double brownian);

/// Expectations of the path-wise forms under the drifted GBM.
ExpectedReturns cpmm_expected_rr(double staking_rate, double sigma, double t);

/// Position with range [P0 e^{-d}, P0 e^{rT + d}], symmetric (in log price)
/// around the ideal move from P0 to P0 e^{rT}.
ClmmPosition clmm_symmetric_position(double liquidity, double initial_price, double staking_rate,
                                     double horizon, double width);

/// Terminal values of that position when the price follows the ideal path.
ClmmSymmetricValues clmm_symmetric_values(double liquidity, double initial_price, double staking_rate,
                                          double horizon, double width);

/// rr_LVH = cosh(rT/2) - 1 (against the adjusted HOLD), rr_LVS = e^{rT/2} - 1.
/// Independent of the range width.
RequiredReturns clmm_required_returns(double staking_rate, double horizon);

/// Holdings-based required returns of any concentrated position between two
/// prices; valid when the price leaves the range (holdings are pinned at the
/// boundary composition).
RequiredReturns position_required_returns(const ClmmPosition& position, double initial_price,
                                          double price);

/// Rebase-LST pool at a stable price: rr_LVH = 0 and
/// rr_LVS = 2e^{rt}/(1 + e^{rt}) - 1 = (e^{rt} - 1)/(e^{rt} + 1).
RequiredReturns rebase_required_returns(double staking_rate, double t);

/// volume * fee_rate / liquidity. For concentrated pools pass only the
/// in-range liquidity.
double fee_return(double volume, double fee_rate, double liquidity_in_pool);

/// Volume needed for a fee return of `target_return`.
double required_volume(double target_return, double fee_rate, double liquidity_in_pool);

}  // namespace lstamm
