#include "lstamm/errors.hpp"
#include "lstamm/metrics.hpp"
#include "lstamm/montecarlo.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lstamm;
using testing_support::rel_err;

TEST(Summarize, MeanAndStandardError) {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const McEstimate e = summarize(x, 2.0);
    EXPECT_DOUBLE_EQ(e.mean, 2.5);
    EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(5.0 / 3.0 / 4.0));
    EXPECT_DOUBLE_EQ(e.z_score, 0.5 / e.std_error);
    EXPECT_EQ(e.n_paths, 4u);

    const std::vector<double> same(7, 0.1);
    const McEstimate flat = summarize(same, 0.1);
    EXPECT_EQ(flat.mean, 0.1);
    EXPECT_EQ(flat.std_error, 0.0);
    EXPECT_EQ(flat.z_score, 0.0);
}

TEST(EstimateExpectedRr, ZeroVolatilityIsExact) {
    const RequiredReturnEstimates e = estimate_expected_rr(FamilyTag::ConstantProduct, 0.04, 0.0, 1.0, 1000, 1);
    EXPECT_EQ(e.lvs.std_error, 0.0);
    EXPECT_EQ(e.lvs.mean, std::expm1(0.02));
    EXPECT_EQ(e.lvs.mean, e.lvs.closed_form);
    EXPECT_EQ(e.lvh.mean, e.lvh.closed_form);
    EXPECT_EQ(e.lvs.z_score, 0.0);
}

TEST(EstimateExpectedRr, WithinThreeStandardErrors) {
    const RequiredReturnEstimates e = estimate_expected_rr(FamilyTag::ConstantProduct, 0.04, 0.05, 1.0, 100000, 1);
    EXPECT_LE(std::abs(e.lvs.z_score), 3.0);
    EXPECT_LE(std::abs(e.lvh.z_score), 3.0);
    const ExpectedReturns closed = cpmm_expected_rr(0.04, 0.05, 1.0);
    EXPECT_EQ(e.lvs.closed_form, closed.e_lvs);
    EXPECT_EQ(e.lvh.closed_form, closed.e_lvh);
}

TEST(EstimateExpectedRr, StandardErrorScalesWithPaths) {
    const auto small = estimate_expected_rr(FamilyTag::ConstantProduct, 0.04, 0.05, 1.0, 20000, 9);
    const auto large = estimate_expected_rr(FamilyTag::ConstantProduct, 0.04, 0.05, 1.0, 40000, 9);
    const double ratio = large.lvs.std_error / small.lvs.std_error;
    EXPECT_NEAR(ratio, 1.0 / std::sqrt(2.0), 0.2 / std::sqrt(2.0));
}

TEST(EstimateExpectedRr, IndependentOfThreadCount) {
    const auto one = estimate_expected_rr(FamilyTag::ConstantProduct, 0.04, 0.1, 2.0, 5001, 17, 1);
    const auto four = estimate_expected_rr(FamilyTag::ConstantProduct, 0.04, 0.1, 2.0, 5001, 17, 4);
    EXPECT_EQ(one.lvs.mean, four.lvs.mean);
    EXPECT_EQ(one.lvs.std_error, four.lvs.std_error);
    EXPECT_EQ(one.lvh.mean, four.lvh.mean);
}

TEST(EstimateExpectedRr, RejectsUnsupportedInput) {
    EXPECT_THROW(estimate_expected_rr(FamilyTag::Stableswap, 0.04, 0.05, 1.0, 100, 1), DomainError);
    EXPECT_THROW(estimate_expected_rr(FamilyTag::ConstantProduct, 0.04, 0.05, 1.0, 1, 1), DomainError);
}

namespace {

PoolState cpmm_pool(double liquidity, double price, double fee) {
    const Holdings h = cpmm_holdings(liquidity, price);
    return {{h.lst, h.underlying}, fee, FeeMode::FeesAccruedSeparately, ConstantProduct{}};
}

}  // namespace

TEST(SimulateLpPath, ConstantPriceKeepsValue) {
    const auto grid = daily_grid(20);
    const PricePath path = ideal_path({1.5, 0.0, 0.0}, grid);
    const LpSimulation sim = simulate_lp_path(cpmm_pool(10.0, 1.5, 0.003), path);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_DOUBLE_EQ(sim.v_lp[i], sim.v_lp[0]);
        EXPECT_DOUBLE_EQ(sim.v_hold[i], sim.v_lp[i]);
        EXPECT_EQ(sim.arbitrage_profit[i], 0.0);
    }
}

TEST(SimulateLpPath, CpmmIdealPathMatchesClosedForm) {
    const PricePath path = ideal_path({1.0, 0.04, 0.0}, daily_grid(365));
    const LpSimulation sim = simulate_lp_path(cpmm_pool(1.0, 1.0, 0.0), path);
    const RequiredReturns rr = required_returns({sim.v_lp.back(), sim.v_hold.back(), sim.v_lst.back(), 1.0});
    EXPECT_LE(rel_err(rr.rr_lvs, std::expm1(0.02)), 1e-10);
    EXPECT_LE(rel_err(rr.rr_lvh, std::cosh(0.02) - 1.0), 1e-8);
}

TEST(SimulateLpPath, ZeroFeeCpmmTracksAnalyticHoldings) {
    const PricePath path = sample_gbm({1.0, 0.04, 0.6}, daily_grid(365), 5);
    const LpSimulation sim = simulate_lp_path(cpmm_pool(2.0, 1.0, 0.0), path);
    for (std::size_t i = 0; i < path.prices.size(); ++i) {
        const Holdings h = cpmm_holdings(2.0, path.prices[i]);
        EXPECT_LE(rel_err(sim.lst_reserve[i], h.lst), 1e-10);
        EXPECT_LE(rel_err(sim.underlying_reserve[i], h.underlying), 1e-10);
    }
}

TEST(SimulateLpPath, FeeBandAndProfitAllFamilies) {
    const double fee = 0.003;
    const PricePath path = sample_gbm({1.0, 0.04, 0.3}, daily_grid(120), 12);
    const ClmmPosition pos{5.0, 0.7, 1.4};
    const Holdings ch = clmm_holdings(pos, 1.0);
    const std::vector<PoolState> pools{
        cpmm_pool(5.0, 1.0, fee),
        {{ch.lst, ch.underlying}, fee, FeeMode::FeesAccruedSeparately, ConcentratedLiquidity{0.7, 1.4}},
        {{5.0, 5.0}, fee, FeeMode::FeesToPool, Stableswap{20.0}},
        {{5.0, 5.0}, fee, FeeMode::FeesToPool, Cryptoswap{50.0, 0.05}},
    };
    for (const PoolState& pool : pools) {
        const LpSimulation sim = simulate_lp_path(pool, path);
        const bool concentrated = family_tag(pool.family) == FamilyTag::ConcentratedLiquidity;
        for (std::size_t i = 0; i < path.prices.size(); ++i) {
            const double p = path.prices[i];
            const bool pinned = concentrated && (p < 0.7 || p > 1.4);
            if (!pinned) {
                EXPECT_GE(sim.pool_prices[i], p * (1.0 - fee) / (1.0 + 1e-9));
                EXPECT_LE(sim.pool_prices[i], p / (1.0 - fee) * (1.0 + 1e-9));
            }
            EXPECT_GE(sim.arbitrage_profit[i], 0.0);
            if (i > 0) {
                EXPECT_GE(sim.arbitrage_profit[i], sim.arbitrage_profit[i - 1] - 1e-12);
            }
            EXPECT_GE(sim.v_lp_with_fees[i], sim.v_lp[i]);
        }
    }
}

TEST(SimulateLpPath, ConcentratedPinsOutsideRange) {
    // Price leaves the range upward and stays out.
    const PricePath path = ideal_path({1.0, 2.0, 0.0}, daily_grid(100));
    const ClmmPosition pos{5.0, 0.9, 1.2};
    const Holdings h = clmm_holdings(pos, 1.0);
    const LpSimulation sim =
        simulate_lp_path({{h.lst, h.underlying}, 0.0, FeeMode::FeesAccruedSeparately, ConcentratedLiquidity{0.9, 1.2}},
                         path);
    const Holdings top = clmm_holdings(pos, 1.2);
    EXPECT_NEAR(sim.lst_reserve.back(), 0.0, 1e-12);
    EXPECT_LE(rel_err(sim.underlying_reserve.back(), top.underlying), 1e-10);
    EXPECT_LE(rel_err(sim.v_lp.back(), top.underlying), 1e-10);
}

TEST(SimulateLpPath, RequiresMatchingInitialPrice) {
    const PricePath path = ideal_path({2.0, 0.0, 0.0}, daily_grid(3));
    EXPECT_THROW(simulate_lp_path(cpmm_pool(1.0, 1.0, 0.0), path), DomainError);
}
