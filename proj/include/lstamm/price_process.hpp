#pragma once

// LST price trajectories in units of the underlying. Time is measured in
// years; the daily grid uses dt = 1/365.

#include <cstdint>
#include <span>
#include <vector>

namespace lstamm {

inline constexpr double kDaysPerYear = 365.0;

struct GbmParams {
    double initial_price = 1.0;
    double staking_rate = 0.0;  // annualized drift r
    double volatility = 0.0;    // sigma per sqrt(year)

    void validate() const;
};

struct PricePath {
    std::vector<double> times;
    std::vector<double> prices;
    std::vector<double> brownian;  // B(t) at each time; empty for deterministic paths
};

struct RebaseSchedule {
    std::vector<double> daily_multipliers;

    /// Product of all multipliers.
    double compounded() const;
    /// Running balance growth: element 0 is 1, element i the product of
    /// the first i multipliers.
    std::vector<double> cumulative() const;
};

/// {0, 1/365, ..., days/365}.
std::vector<double> daily_grid(std::size_t days);

/// P(t) = P(0) e^{rt}. Requires volatility == 0 (MisuseError otherwise).
PricePath ideal_path(const GbmParams& params, std::span<const double> times);

/// Exact GBM sampling, P(t) = P(0) exp((r - sigma^2/2) t + sigma B(t)), from
/// independent Gaussian increments of B. Reproducible per (seed, path_index).
PricePath sample_gbm(const GbmParams& params, std::span<const double> times, std::uint64_t seed,
                     std::uint64_t path_index = 0);

/// Daily balance growth factors e^{rate/365} for a series of annualized rates.
RebaseSchedule rebase_schedule(std::span<const double> annualized_rates);

}  // namespace lstamm
