#pragma once

// Monte Carlo checks of the constant-product expectations and an
// arbitrage-aligned LP simulation along a price path.

#include "lstamm/cfmm.hpp"
#include "lstamm/price_process.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lstamm {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    double closed_form = 0.0;
    double z_score = 0.0;  // (mean - closed_form) / std_error; 0 when std_error == 0
};

struct RequiredReturnEstimates {
    McEstimate lvh;
    McEstimate lvs;
};

/// Sample mean and standard error, order independent: pairwise summation of
/// deviations from the first sample.
McEstimate summarize(std::span<const double> samples, double closed_form);

/// Samples B(t) ~ N(0, t) once per path (stream (seed, path)) and averages
/// the path-wise required returns. Only FamilyTag::ConstantProduct has
/// closed forms; other families throw DomainError. Results do not depend
/// on `threads`.
RequiredReturnEstimates estimate_expected_rr(FamilyTag family, double staking_rate, double sigma, double t,
                                             std::size_t n_paths, std::uint64_t seed,
                                             unsigned threads = 1);

struct LpSimulation {
    std::vector<double> times;
    std::vector<double> prices;       // external price P(t)
    std::vector<double> pool_prices;  // pool spot after alignment
    std::vector<double> lst_reserve;
    std::vector<double> underlying_reserve;
    std::vector<double> v_lp;            // reserves valued at P(t)
    std::vector<double> v_lp_with_fees;  // plus separately accrued fees
    std::vector<double> v_hold;
    std::vector<double> v_lst;
    std::vector<double> arbitrage_profit;  // cumulative, valued at P(t) of each trade
};

/// Replays `path` against a pool owned by a single LP. At every step an
/// arbitrageur trades the pool to the external price (zero fee) or to the
/// nearest edge of the no-arbitrage band [P(1-f), P/(1-f)]. Concentrated
/// positions pin at the boundary composition once the price leaves their
/// range; their fees are always accrued separately.
LpSimulation simulate_lp_path(const PoolState& pool0, const PricePath& path);

}  // namespace lstamm
