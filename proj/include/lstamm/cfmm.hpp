#pragma once

// Swap, liquidity and spot-price math for the four CFMM families used for
// LST liquidity: constant product, concentrated liquidity, Stableswap and
// Cryptoswap.
//
// Conventions: token 0 is the LST, token 1 the underlying. Prices are
// quoted as units of token 1 per unit of token 0. All arithmetic is double
// precision; on-chain fixed point is not emulated.

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace lstamm {

struct ConstantProduct {};

struct ConcentratedLiquidity {
    double lower_price = 0.0;
    double upper_price = 0.0;
};

struct Stableswap {
    double amplification = 0.0;
};

struct Cryptoswap {
    double amplification = 0.0;
    double gamma = 0.0;
};

using CurveFamily = std::variant<ConstantProduct, ConcentratedLiquidity, Stableswap, Cryptoswap>;

enum class FamilyTag { ConstantProduct, ConcentratedLiquidity, Stableswap, Cryptoswap };

FamilyTag family_tag(const CurveFamily& family) noexcept;
std::string_view to_string(FamilyTag tag) noexcept;

// Throws DomainError unless A > 0 (and gamma > 0), or 0 < p_a < p_b.
void validate_family(const CurveFamily& family);

enum class FeeMode {
    FeesToPool,             // Curve-style: the whole input, fee included, stays in the reserves
    FeesAccruedSeparately,  // Uniswap-style: the fee is withheld from the reserves
};

struct PoolState {
    std::vector<double> reserves;
    double fee_rate = 0.0;
    FeeMode fee_mode = FeeMode::FeesAccruedSeparately;
    CurveFamily family = ConstantProduct{};

    // Active pool: N >= 2 finite, strictly positive reserves, fee_rate in
    // [0, 1), a valid family, and N == 2 for the constant-product families.
    void validate() const;
};

struct Holdings {
    double lst = 0.0;
    double underlying = 0.0;
};

struct ClmmPosition {
    double liquidity = 0.0;
    double lower_price = 0.0;
    double upper_price = 0.0;

    void validate() const;
};

struct SwapQuote {
    double amount_in = 0.0;
    double amount_out = 0.0;
    double fee_paid = 0.0;  // in units of the input token
    std::vector<double> new_reserves;
    double spot_price_after = 0.0;
};

/// Holdings of a full-range constant-product position: x = L/sqrt(P), y = L*sqrt(P).
Holdings cpmm_holdings(double liquidity, double price);

/// Holdings of a concentrated position. Below the range everything sits in
/// the LST, above it everything sits in the underlying.
Holdings clmm_holdings(const ClmmPosition& position, double price);

/// Liquidity L of real holdings (x, y) inside [p_a, p_b], i.e. the positive
/// root of (x + L/sqrt(p_b))(y + L*sqrt(p_a)) = L^2.
double clmm_liquidity(double lst, double underlying, double lower_price, double upper_price);

/// Stableswap D for the given reserves (any N >= 2).
double stableswap_solve_d(std::span<const double> reserves, double amplification);

/// Cryptoswap D for the given reserves (any N >= 2).
double cryptoswap_solve_d(std::span<const double> reserves, double amplification, double gamma);

/// D of a Stableswap or Cryptoswap family; DomainError for the others.
double curve_solve_d(const CurveFamily& family, std::span<const double> reserves);

/// The balance of token `index` that puts `reserves` (with that entry
/// ignored) back on the level set D of a Curve family.
double curve_solve_balance(const CurveFamily& family, std::span<const double> reserves,
                           std::size_t index, double d);

/// |LHS - RHS| / (sum of term magnitudes) of the two-sided Curve invariant.
double curve_relative_residual(const CurveFamily& family, std::span<const double> reserves,
                               double d);

/// Family invariant as a scalar: L for the constant-product families, D for
/// the Curve families. Zero-fee swaps leave it unchanged.
double pool_invariant(const PoolState& state);

/// Exact swap of amount_in of token in_index for token out_index. The fee is
/// charged on the input: fee_paid = fee_rate * amount_in.
SwapQuote swap(const PoolState& state, std::size_t in_index, std::size_t out_index,
               double amount_in);

SwapQuote stableswap_swap(const PoolState& state, std::size_t in_index, std::size_t out_index,
                          double amount_in);
SwapQuote cryptoswap_swap(const PoolState& state, std::size_t in_index, std::size_t out_index,
                          double amount_in);

/// -dy/dx along the level curve through the current reserves, i.e. the
/// marginal price of token 0 in units of token 1.
double spot_price(const PoolState& state);

}  // namespace lstamm
