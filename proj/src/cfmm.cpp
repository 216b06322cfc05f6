#include "lstamm/cfmm.hpp"

#include "curve_detail.hpp"
#include "lstamm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lstamm {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void check_swap_args(const PoolState& state, std::size_t in_index, std::size_t out_index,
                     double amount_in) {
    state.validate();
    const std::size_t n = state.reserves.size();
    if (in_index >= n || out_index >= n) throw DomainError("token index out of range");
    if (in_index == out_index) throw DomainError("swap needs distinct token indices");
    if (!positive_finite(amount_in)) throw DomainError("amount_in must be finite and > 0");
}

SwapQuote finish(const PoolState& state, std::size_t in_index, std::size_t out_index,
                 double amount_in, double amount_out, double out_balance) {
    SwapQuote q;
    q.amount_in = amount_in;
    q.fee_paid = state.fee_rate * amount_in;
    q.amount_out = amount_out;
    q.new_reserves = state.reserves;
    const double kept = state.fee_mode == FeeMode::FeesToPool ? amount_in : amount_in - q.fee_paid;
    q.new_reserves[in_index] += kept;
    q.new_reserves[out_index] = out_balance;
    PoolState after = state;
    after.reserves = q.new_reserves;
    q.spot_price_after = spot_price(after);
    return q;
}

// Both constant-product families trade on virtual reserves X*Y = L^2.
SwapQuote product_swap(const PoolState& state, std::size_t in_index, std::size_t out_index,
                       double amount_in, double virtual_in, double virtual_out) {
    const double net = amount_in * (1.0 - state.fee_rate);
    const double out = virtual_out * net / (virtual_in + net);
    const double real_out = state.reserves[out_index];
    if (!(out < real_out)) {
        throw InsufficientLiquidity("swap output " + std::to_string(out) +
                                    " exhausts the out-side reserve " + std::to_string(real_out));
    }
    return finish(state, in_index, out_index, amount_in, out, real_out - out);
}

constexpr double kGuardUlps = 8.0;

SwapQuote curve_swap(const PoolState& state, std::size_t in_index, std::size_t out_index,
                     double amount_in) {
    const double d = curve_solve_d(state.family, state.reserves);
    const double net = amount_in * (1.0 - state.fee_rate);
    std::vector<double> trial = state.reserves;
    trial[in_index] += net;
    const double out_balance = curve_solve_balance(state.family, trial, out_index, d);
    const double old_balance = state.reserves[out_index];
    if (!(out_balance > 0.0)) throw InsufficientLiquidity("swap exhausts the out-side reserve");
    // Round in the pool's favour: the two solves carry errors of a few ulps
    // of D, enough for a zero-fee round trip to come out marginally ahead.
    const double guard = kGuardUlps * std::numeric_limits<double>::epsilon() * d;
    const double out = std::max(0.0, old_balance - out_balance - guard);
    return finish(state, in_index, out_index, amount_in, out, old_balance - out);
}

}  // namespace

FamilyTag family_tag(const CurveFamily& family) noexcept {
    return std::visit(overloaded{
                          [](const ConstantProduct&) { return FamilyTag::ConstantProduct; },
                          [](const ConcentratedLiquidity&) { return FamilyTag::ConcentratedLiquidity; },
                          [](const Stableswap&) { return FamilyTag::Stableswap; },
                          [](const Cryptoswap&) { return FamilyTag::Cryptoswap; },
                      },
                      family);
}

std::string_view to_string(FamilyTag tag) noexcept {
    switch (tag) {
        case FamilyTag::ConstantProduct: return "ConstantProduct";
        case FamilyTag::ConcentratedLiquidity: return "ConcentratedLiquidity";
        case FamilyTag::Stableswap: return "Stableswap";
        case FamilyTag::Cryptoswap: return "Cryptoswap";
    }
    return "Unknown";
}

void validate_family(const CurveFamily& family) {
    std::visit(overloaded{
                   [](const ConstantProduct&) {},
                   [](const ConcentratedLiquidity& c) {
                       if (!positive_finite(c.lower_price) || !positive_finite(c.upper_price) ||
                           !(c.lower_price < c.upper_price)) {
                           throw DomainError("concentrated range needs 0 < lower_price < upper_price");
                       }
                   },
                   [](const Stableswap& s) {
                       if (!positive_finite(s.amplification)) {
                           throw DomainError("Stableswap amplification must be > 0");
                       }
                   },
                   [](const Cryptoswap& c) {
                       if (!positive_finite(c.amplification)) {
                           throw DomainError("Cryptoswap amplification must be > 0");
                       }
                       if (!positive_finite(c.gamma)) throw DomainError("Cryptoswap gamma must be > 0");
                   },
               },
               family);
}

void PoolState::validate() const {
    validate_family(family);
    if (reserves.size() < 2) throw DomainError("a pool needs at least two tokens");
    const FamilyTag tag = family_tag(family);
    if ((tag == FamilyTag::ConstantProduct || tag == FamilyTag::ConcentratedLiquidity) &&
        reserves.size() != 2) {
        throw DomainError("constant-product pools hold exactly two tokens");
    }
    for (double x : reserves) {
        if (!positive_finite(x)) throw DomainError("reserves of an active pool must be > 0");
    }
    if (!std::isfinite(fee_rate) || fee_rate < 0.0 || fee_rate >= 1.0) {
        throw DomainError("fee_rate must lie in [0, 1)");
    }
}

void ClmmPosition::validate() const {
    if (!positive_finite(liquidity)) throw DomainError("position liquidity must be > 0");
    validate_family(ConcentratedLiquidity{lower_price, upper_price});
}

Holdings cpmm_holdings(double liquidity, double price) {
    if (!positive_finite(liquidity)) throw DomainError("liquidity must be > 0");
    if (!positive_finite(price)) throw DomainError("price must be > 0");
    const double sp = std::sqrt(price);
    return {liquidity / sp, liquidity * sp};
}

Holdings clmm_holdings(const ClmmPosition& position, double price) {
    position.validate();
    if (!positive_finite(price)) throw DomainError("price must be > 0");
    const double sa = std::sqrt(position.lower_price);
    const double sb = std::sqrt(position.upper_price);
    const double l = position.liquidity;
    if (price <= position.lower_price) return {l * (1.0 / sa - 1.0 / sb), 0.0};
    if (price >= position.upper_price) return {0.0, l * (sb - sa)};
    const double sp = std::sqrt(price);
    return {l * (1.0 / sp - 1.0 / sb), l * (sp - sa)};
}

double clmm_liquidity(double lst, double underlying, double lower_price, double upper_price) {
    validate_family(ConcentratedLiquidity{lower_price, upper_price});
    if (!(lst >= 0.0) || !(underlying >= 0.0) || !std::isfinite(lst) || !std::isfinite(underlying) ||
        (lst == 0.0 && underlying == 0.0)) {
        throw DomainError("holdings must be nonnegative and not both zero");
    }
    const double sa = std::sqrt(lower_price);
    const double sb = std::sqrt(upper_price);
    // a*L^2 - b*L - x*y = 0 with a = 1 - sqrt(p_a/p_b), b = x*sqrt(p_a) + y/sqrt(p_b).
    const double a = 1.0 - sa / sb;
    const double b = lst * sa + underlying / sb;
    const double c = lst * underlying;
    return (b + std::sqrt(b * b + 4.0 * a * c)) / (2.0 * a);
}

double pool_invariant(const PoolState& state) {
    state.validate();
    return std::visit(overloaded{
                          [&](const ConstantProduct&) {
                              return std::sqrt(state.reserves[0]) * std::sqrt(state.reserves[1]);
                          },
                          [&](const ConcentratedLiquidity& c) {
                              return clmm_liquidity(state.reserves[0], state.reserves[1],
                                                    c.lower_price, c.upper_price);
                          },
                          [&](const auto&) { return curve_solve_d(state.family, state.reserves); },
                      },
                      state.family);
}

SwapQuote swap(const PoolState& state, std::size_t in_index, std::size_t out_index,
               double amount_in) {
    check_swap_args(state, in_index, out_index, amount_in);
    return std::visit(
        overloaded{
            [&](const ConstantProduct&) {
                return product_swap(state, in_index, out_index, amount_in,
                                    state.reserves[in_index], state.reserves[out_index]);
            },
            [&](const ConcentratedLiquidity& c) {
                const double l = clmm_liquidity(state.reserves[0], state.reserves[1],
                                                c.lower_price, c.upper_price);
                const double vx = state.reserves[0] + l / std::sqrt(c.upper_price);
                const double vy = state.reserves[1] + l * std::sqrt(c.lower_price);
                return in_index == 0 ? product_swap(state, 0, 1, amount_in, vx, vy)
                                     : product_swap(state, 1, 0, amount_in, vy, vx);
            },
            [&](const auto&) { return curve_swap(state, in_index, out_index, amount_in); },
        },
        state.family);
}

SwapQuote stableswap_swap(const PoolState& state, std::size_t in_index, std::size_t out_index,
                          double amount_in) {
    if (family_tag(state.family) != FamilyTag::Stableswap) {
        throw DomainError("stableswap_swap called on a non-Stableswap pool");
    }
    return swap(state, in_index, out_index, amount_in);
}

SwapQuote cryptoswap_swap(const PoolState& state, std::size_t in_index, std::size_t out_index,
                          double amount_in) {
    if (family_tag(state.family) != FamilyTag::Cryptoswap) {
        throw DomainError("cryptoswap_swap called on a non-Cryptoswap pool");
    }
    return swap(state, in_index, out_index, amount_in);
}

double spot_price(const PoolState& state) {
    state.validate();
    return std::visit(overloaded{
                          [&](const ConstantProduct&) { return state.reserves[1] / state.reserves[0]; },
                          [&](const ConcentratedLiquidity& c) {
                              const double l = clmm_liquidity(state.reserves[0], state.reserves[1],
                                                              c.lower_price, c.upper_price);
                              return (state.reserves[1] + l * std::sqrt(c.lower_price)) /
                                     (state.reserves[0] + l / std::sqrt(c.upper_price));
                          },
                          [&](const auto&) {
                              return detail::curve_spot_price(state.family, state.reserves);
                          },
                      },
                      state.family);
}

}  // namespace lstamm
