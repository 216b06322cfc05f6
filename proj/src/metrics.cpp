#include "lstamm/metrics.hpp"

#include "lstamm/errors.hpp"

#include <cmath>

namespace lstamm {
namespace {

void check_price(double p) {
    if (!std::isfinite(p) || p <= 0.0) throw DomainError("prices must be finite and > 0");
}

void check_time(double t) {
    if (!std::isfinite(t) || t < 0.0) throw DomainError("time must be finite and >= 0");
}

// (e^{a} + e^{-a})/2 - 1 written so that a symmetric pair of exponents
// evaluates identically in the path-wise and expected forms.
double half_sum_expm1(double a, double b) { return 0.5 * (std::expm1(a) + std::expm1(b)); }

double cpmm_exponent(double r, double sigma, double t, double brownian) {
    return (0.5 * r - 0.25 * sigma * sigma) * t + 0.5 * sigma * brownian;
}

}  // namespace

BenchmarkValues benchmark_values(const Holdings& initial, const Holdings& current, double initial_price,
                                 double price, double at_time) {
    check_price(initial_price);
    check_price(price);
    BenchmarkValues v;
    v.v_lp = current.lst * price + current.underlying;
    v.v_hold = initial.lst * price + initial.underlying;
    v.v_lst = (initial.lst + initial.underlying / initial_price) * price;
    v.at_time = at_time;
    return v;
}

RequiredReturns required_returns(const BenchmarkValues& values) {
    if (!(values.v_lp > 0.0)) throw DomainError("V_LP must be > 0");
    return {values.v_hold / values.v_lp - 1.0, values.v_lst / values.v_lp - 1.0};
}

double cpmm_rr_lvs_closed(double staking_rate, double sigma, double t, double brownian) {
    check_time(t);
    return std::expm1(cpmm_exponent(staking_rate, sigma, t, brownian));
}

double cpmm_rr_lvh_closed(double staking_rate, double sigma, double t, double brownian) {
    check_time(t);
    const double a = cpmm_exponent(staking_rate, sigma, t, brownian);
    return half_sum_expm1(a, (-0.5 * staking_rate + 0.25 * sigma * sigma) * t - 0.5 * sigma * brownian);
}

ExpectedReturns cpmm_expected_rr(double staking_rate, double sigma, double t) {
    check_time(t);
    const double s2 = sigma * sigma;
    const double up = (0.5 * staking_rate - 0.125 * s2) * t;
    const double down = (-0.5 * staking_rate + 0.375 * s2) * t;
    return {half_sum_expm1(up, down), std::expm1(up)};
}

ClmmPosition clmm_symmetric_position(double liquidity, double initial_price, double staking_rate,
                                     double horizon, double width) {
    check_price(initial_price);
    if (!std::isfinite(width) || width < 0.0) throw DomainError("range width d must be >= 0");
    ClmmPosition pos{liquidity, initial_price * std::exp(-width),
                     initial_price * std::exp(staking_rate * horizon + width)};
    pos.validate();
    return pos;
}

ClmmSymmetricValues clmm_symmetric_values(double liquidity, double initial_price, double staking_rate,
                                          double horizon, double width) {
    check_price(initial_price);
    if (!std::isfinite(width) || width < 0.0) throw DomainError("range width d must be >= 0");
    if (!std::isfinite(horizon) || horizon <= 0.0) throw DomainError("horizon T must be > 0");
    if (!std::isfinite(liquidity) || liquidity <= 0.0) throw DomainError("liquidity must be > 0");

    const double half_rt = 0.5 * staking_rate * horizon;
    const double half_d = 0.5 * width;
    const double scale = liquidity * std::sqrt(initial_price);
    // 2 - e^{-rT/2-d/2} - e^{-d/2}, the initial value per unit of L*sqrt(P0).
    const double initial = -std::expm1(-half_rt - half_d) - std::expm1(-half_d);
    const double growth = std::exp(staking_rate * horizon);

    ClmmSymmetricValues v;
    // 2e^{rT/2} - e^{rT/2-d/2} - e^{-d/2}
    v.v_lp = scale * (std::exp(half_rt) * -std::expm1(-half_d) + (std::expm1(half_rt) - std::expm1(-half_d)));
    v.v_lst = scale * initial * growth;
    v.v_hold_adjusted = scale * 0.5 * initial * (1.0 + growth);
    return v;
}

RequiredReturns clmm_required_returns(double staking_rate, double horizon) {
    check_time(horizon);
    const double half_rt = 0.5 * staking_rate * horizon;
    return {half_sum_expm1(half_rt, -half_rt), std::expm1(half_rt)};
}

RequiredReturns position_required_returns(const ClmmPosition& position, double initial_price,
                                          double price) {
    const Holdings initial = clmm_holdings(position, initial_price);
    const Holdings current = clmm_holdings(position, price);
    return required_returns(benchmark_values(initial, current, initial_price, price));
}

RequiredReturns rebase_required_returns(double staking_rate, double t) {
    check_time(t);
    const double g = std::expm1(staking_rate * t);
    return {0.0, g / (g + 2.0)};
}

double fee_return(double volume, double fee_rate, double liquidity_in_pool) {
    if (!(liquidity_in_pool > 0.0)) throw DomainError("liquidity in pool must be > 0");
    return volume * fee_rate / liquidity_in_pool;
}

double required_volume(double target_return, double fee_rate, double liquidity_in_pool) {
    if (!(liquidity_in_pool > 0.0)) throw DomainError("liquidity in pool must be > 0");
    if (!(fee_rate > 0.0)) throw DomainError("fee rate must be > 0");
    return target_return * liquidity_in_pool / fee_rate;
}

}  // namespace lstamm
