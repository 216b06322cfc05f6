#include "lstamm/price_process.hpp"

#include "lstamm/errors.hpp"
#include "lstamm/random.hpp"

#include <cmath>

namespace lstamm {
namespace {

void check_times(std::span<const double> times) {
    if (times.empty()) throw DomainError("time grid is empty");
    if (times[0] != 0.0) throw DomainError("time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !(times[i] > times[i - 1])) {
            throw DomainError("time grid must be finite and strictly increasing");
        }
    }
}

}  // namespace

void GbmParams::validate() const {
    if (!std::isfinite(initial_price) || initial_price <= 0.0) {
        throw DomainError("initial price must be > 0");
    }
    if (!std::isfinite(staking_rate)) throw DomainError("staking rate must be finite");
    if (!std::isfinite(volatility) || volatility < 0.0) throw DomainError("volatility must be >= 0");
}

double RebaseSchedule::compounded() const {
    double out = 1.0;
    for (double m : daily_multipliers) out *= m;
    return out;
}

std::vector<double> RebaseSchedule::cumulative() const {
    std::vector<double> out;
    out.reserve(daily_multipliers.size() + 1);
    out.push_back(1.0);
    for (double m : daily_multipliers) out.push_back(out.back() * m);
    return out;
}

std::vector<double> daily_grid(std::size_t days) {
    std::vector<double> out(days + 1);
    for (std::size_t i = 0; i <= days; ++i) out[i] = static_cast<double>(i) / kDaysPerYear;
    return out;
}

PricePath ideal_path(const GbmParams& params, std::span<const double> times) {
    params.validate();
    if (params.volatility != 0.0) throw MisuseError("ideal_path requires zero volatility");
    check_times(times);
    PricePath path;
    path.times.assign(times.begin(), times.end());
    path.prices.reserve(times.size());
    for (double t : times) path.prices.push_back(params.initial_price * std::exp(params.staking_rate * t));
    return path;
}

PricePath sample_gbm(const GbmParams& params, std::span<const double> times, std::uint64_t seed,
                     std::uint64_t path_index) {
    params.validate();
    check_times(times);
    if (params.volatility == 0.0) return ideal_path(params, times);

    const double drift = params.staking_rate - 0.5 * params.volatility * params.volatility;
    RandomStream rng(seed, path_index);
    PricePath path;
    path.times.assign(times.begin(), times.end());
    path.prices.resize(times.size());
    path.brownian.resize(times.size());
    path.prices[0] = params.initial_price;
    path.brownian[0] = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        path.brownian[i] = path.brownian[i - 1] + std::sqrt(dt) * rng.next_normal();
        path.prices[i] =
            params.initial_price * std::exp(drift * times[i] + params.volatility * path.brownian[i]);
    }
    return path;
}

RebaseSchedule rebase_schedule(std::span<const double> annualized_rates) {
    RebaseSchedule schedule;
    schedule.daily_multipliers.reserve(annualized_rates.size());
    for (double rate : annualized_rates) {
        if (!std::isfinite(rate)) throw DomainError("staking rates must be finite");
        schedule.daily_multipliers.push_back(std::exp(rate / kDaysPerYear));
    }
    return schedule;
}

}  // namespace lstamm
