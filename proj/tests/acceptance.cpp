// Acceptance run: one PASS/FAIL line per criterion. With --criterion N only
// that criterion runs; the exit status is non-zero if any printed line fails.

#include "commands.hpp"
#include "lstamm/backtest.hpp"
#include "lstamm/cfmm.hpp"
#include "lstamm/errors.hpp"
#include "lstamm/ingest.hpp"
#include "lstamm/metrics.hpp"
#include "lstamm/montecarlo.hpp"
#include "lstamm/price_process.hpp"
#include "lstamm/suitability.hpp"
#include "oracles/curve_oracle.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace lstamm;
using testing_support::log_uniform;
using testing_support::rel_err;
using testing_support::scaled_err;
using testing_support::uniform;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = LSTAMM_FIXTURES;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Date day(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}};
}

constexpr double kRates[] = {0.01, 0.04, 0.08};
constexpr double kHorizons[] = {0.25, 1.0};
constexpr double kWidths[] = {1e-3, 1e-2, 1e-1, 1.0};

// Returns near zero are compared with scaled_err: relative above 1,
// absolute below. The pure relative error is reported alongside.
Outcome clmm_grid(bool lvh) {
    double worst_scaled = 0.0;
    double worst_rel = 0.0;
    for (double r : kRates) {
        for (double t : kHorizons) {
            const double expected = lvh ? std::cosh(r * t / 2.0) - 1.0 : std::expm1(r * t / 2.0);
            for (double d : kWidths) {
                const ClmmSymmetricValues v = clmm_symmetric_values(1.0, 1.0, r, t, d);
                const double got = (lvh ? v.v_hold_adjusted : v.v_lst) / v.v_lp - 1.0;
                worst_scaled = std::max(worst_scaled, scaled_err(got, expected));
                worst_rel = std::max(worst_rel, rel_err(got, expected));
            }
        }
    }
    return {worst_scaled <= 1e-12, fmt("max scaled err %.3g (max rel err %.3g) over 24 cases", worst_scaled, worst_rel)};
}

Outcome c1() { return clmm_grid(false); }
Outcome c2() { return clmm_grid(true); }

Outcome c3() {
    std::mt19937_64 rng(20240521);
    double worst = 0.0;
    double worst_rel = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double r = uniform(rng, 0.0, 0.1);
        const double sigma = uniform(rng, 0.0, 0.2);
        const double t = uniform(rng, 1e-6, 2.0);
        const PricePath path = sample_gbm({1.0, r, sigma}, std::vector{0.0, t}, rng(), 0);
        const double b = path.brownian.empty() ? 0.0 : path.brownian[1];
        const double p = path.prices[1];
        const RequiredReturns rr =
            required_returns(benchmark_values(cpmm_holdings(1.0, 1.0), cpmm_holdings(1.0, p), 1.0, p, t));
        for (auto [closed, got] : {std::pair{cpmm_rr_lvs_closed(r, sigma, t, b), rr.rr_lvs},
                                   std::pair{cpmm_rr_lvh_closed(r, sigma, t, b), rr.rr_lvh}}) {
            worst = std::max(worst, scaled_err(closed, got));
            worst_rel = std::max(worst_rel, rel_err(closed, got));
        }
    }
    return {worst <= 1e-12, fmt("max scaled err %.3g (max rel err %.3g) over 1000 paths", worst, worst_rel)};
}

Outcome c4() {
    const auto e = estimate_expected_rr(FamilyTag::ConstantProduct, 0.04, 0.05, 1.0, 100000, 1);
    const auto zero = estimate_expected_rr(FamilyTag::ConstantProduct, 0.04, 0.0, 1.0, 1000, 1);
    const bool exact = zero.lvs.mean == std::expm1(0.02) && zero.lvs.std_error == 0.0;
    const bool pass = std::abs(e.lvs.z_score) <= 3.0 && std::abs(e.lvh.z_score) <= 3.0 && exact;
    return {pass, fmt("z_lvs %.3f z_lvh %.3f, sigma=0 mean %s e^{rt/2}-1", e.lvs.z_score, e.lvh.z_score,
                      exact ? "==" : "!=")};
}

PoolState random_pool(std::mt19937_64& rng, int family) {
    const double x = log_uniform(rng, 1e-3, 1e9);
    const double y = family >= 2 ? x * log_uniform(rng, 1e-2, 1e2) : log_uniform(rng, 1e-3, 1e9);
    switch (family) {
        case 0: return {{x, y}, 0.0, FeeMode::FeesAccruedSeparately, ConstantProduct{}};
        case 1: {
            const double p = y / x;
            return {{x, y},
                    0.0,
                    FeeMode::FeesAccruedSeparately,
                    ConcentratedLiquidity{p * log_uniform(rng, 0.2, 0.999), p * log_uniform(rng, 1.001, 5.0)}};
        }
        case 2: return {{x, y}, 0.0, FeeMode::FeesToPool, Stableswap{log_uniform(rng, 1.0, 1e4)}};
        default:
            return {{x, y}, 0.0, FeeMode::FeesToPool,
                    Cryptoswap{log_uniform(rng, 1.0, 1e7), log_uniform(rng, 1e-4, 0.1)}};
    }
}

Outcome c5() {
    double sym = 0.0;
    for (double c : {1e-3, 1.0, 100.0, 12345.678, 1e9}) {
        for (std::size_t n : {2u, 3u}) {
            const std::vector<double> x(n, c);
            const double target = static_cast<double>(n) * c;
            sym = std::max(sym, rel_err(stableswap_solve_d(x, 30.0), target));
            sym = std::max(sym, rel_err(cryptoswap_solve_d(x, 2e5, 0.01), target));
        }
    }

    std::mt19937_64 rng(5);
    double oracle_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 2 + rng() % 2;
        std::vector<double> x(n);
        const double base = log_uniform(rng, 1e-3, 1e9);
        for (double& v : x) v = base * log_uniform(rng, 1e-3, 1e3);
        const bool crypto = i % 2 == 1;
        const double a = log_uniform(rng, 0.1, 1e6);
        const double gamma = log_uniform(rng, 1e-4, 0.5);
        const CurveFamily family = crypto ? CurveFamily{Cryptoswap{a, gamma}} : CurveFamily{Stableswap{a}};
        const oracle::CurveParams p{a, crypto ? gamma : 0.0L};
        oracle_err = std::max(oracle_err, rel_err(curve_solve_d(family, x), oracle::solve_d(p, x)));
    }

    double invariant_err = 0.0;
    double round_trip_gain = 0.0;
    for (int family = 0; family < 4; ++family) {
        for (int i = 0; i < 250; ++i) {
            const PoolState pool = random_pool(rng, family);
            const double amount = pool.reserves[0] * uniform(rng, 1e-6, 0.3);
            try {
                const SwapQuote there = swap(pool, 0, 1, amount);
                PoolState mid = pool;
                mid.reserves = there.new_reserves;
                invariant_err = std::max(invariant_err, rel_err(pool_invariant(pool), pool_invariant(mid)));
                if (!(there.amount_out > 0.0)) continue;
                const SwapQuote back = swap(mid, 1, 0, there.amount_out);
                round_trip_gain = std::max(round_trip_gain, back.amount_out / amount - 1.0);
            } catch (const InsufficientLiquidity&) {
                // concentrated ranges can run dry
            }
        }
    }
    const bool pass = sym <= 1e-12 && oracle_err <= 1e-9 && invariant_err <= 1e-9 && round_trip_gain <= 1e-12;
    return {pass, fmt("symmetric %.3g, oracle %.3g, invariant %.3g, round-trip gain %.3g", sym, oracle_err,
                      invariant_err, round_trip_gain)};
}

Outcome c6() {
    double worst = 0.0;
    bool lvh_zero = true;
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            const double r = 0.1 * i / 100.0;
            const double t = 2.0 * j / 100.0;
            const RequiredReturns rr = rebase_required_returns(r, t);
            // (e^{rt} - 1)/(e^{rt} + 1) = tanh(rt/2), without the cancellation near 0
            lvh_zero = lvh_zero && rr.rr_lvh == 0.0;
            worst = std::max(worst, rel_err(rr.rr_lvs, std::tanh(r * t / 2.0)));
        }
    }
    return {lvh_zero && worst <= 1e-12, fmt("rr_lvh %s 0, max rel err %.3g over 101x101 grid",
                                            lvh_zero ? "==" : "!=", worst)};
}

Outcome c7() {
    const std::vector<SuitabilityRow> expected{
        {LstKind::Rebase, CounterAsset::Underlying, {{FamilyTag::Stableswap, false}}},
        {LstKind::Rebase, CounterAsset::RebaseLst, {{FamilyTag::Stableswap, false}}},
        {LstKind::Reward, CounterAsset::Underlying,
         {{FamilyTag::Cryptoswap, false}, {FamilyTag::ConcentratedLiquidity, true}}},
        {LstKind::Reward, CounterAsset::RewardLst,
         {{FamilyTag::Cryptoswap, false}, {FamilyTag::ConcentratedLiquidity, false}}},
    };
    const auto got = suitability_table();
    bool same = got.size() == expected.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) {
        same = got[i].lst_kind == expected[i].lst_kind && got[i].counter_asset == expected[i].counter_asset &&
               got[i].amms == expected[i].amms;
    }
    return {same, fmt("%zu rows", got.size())};
}

WealthSeries synthetic_wealth() {
    std::vector<std::string> warnings;
    const auto snaps = read_curve_daily(kFixtures / "synthetic_cpmm/curve_daily.csv", {}, warnings);
    const auto rates =
        read_dated_values(kFixtures / "synthetic_cpmm/staking_rates.csv", Schema::StakingRates, {}, warnings);
    return curve_lp_wealth(snaps, {PoolLstKind::Reward, rates});
}

Outcome c8a() {
    const WealthSeries w = synthetic_wealth();
    const double gap = w.lst.back() / w.lp.back() - 1.0;
    const double err = std::abs(gap - std::expm1(0.02));
    return {err <= 1e-6, fmt("%zu days, gap %.12f vs %.12f, abs err %.3g", w.size(), gap, std::expm1(0.02), err)};
}

Outcome c8b() {
    const WealthSeries w = synthetic_wealth();
    std::string detail;
    bool pass = true;
    for (int window : {7, 30}) {
        const MaClassification c = moving_average_classification(w, window);
        std::size_t counts[3] = {0, 0, 0};
        for (MaLabel l : c.labels) ++counts[static_cast<int>(l)];
        pass = pass && counts[static_cast<int>(MaLabel::Yellow)] == c.labels.size();
        detail += fmt("%sw=%d: %zu green, %zu yellow, %zu red", detail.empty() ? "" : "; ", window, counts[0],
                      counts[1], counts[2]);
    }
    return {pass, detail};
}

Outcome c9() {
    std::vector<std::string> warnings;
    const auto prices = read_dated_values(kFixtures / "clmm/daily_prices.csv", Schema::DailyPrices, {}, warnings);
    const ClmmBacktestResult res = clmm_backtest({}, prices);
    bool bounds = res.resets.size() == 3;
    for (const ClmmReset& reset : res.resets) {
        // The open price is the close of the day before the reset.
        const auto it = std::find_if(prices.begin(), prices.end(), [&](const DatedValue& v) {
            return v.date + std::chrono::days{1} == reset.date;
        });
        const double open = reset.date == prices.front().date ? prices.front().value : it->value;
        bounds = bounds && reset.open_price == open && reset.lower_price == open * 0.9975 &&
                 reset.upper_price == open * 1.0075;
    }

    const std::vector<DatedValue> flat{{day(2024, 3, 10), 1.0}, {day(2024, 3, 11), 1.0}, {day(2024, 3, 12), 1.0}};
    const double l = clmm_backtest({}, flat).resets[0].liquidity;
    SwapEvent e;
    e.timestamp = 1710115200;  // 2024-03-11
    e.amount_in = {0.0, 3.0};
    e.amount_out = {2.99, 0.0};
    e.active_liquidity = l;
    e.pool_price = 1.0;
    const ClmmBacktestResult one = clmm_backtest(std::vector{e}, flat);
    const double fee = one.fees.back();
    const bool sole = one.applied_events == 1 && fee == 0.0005 * 3.0;
    return {bounds && sole, fmt("%zu resets with exact bounds: %s; sole-LP fee %.17g vs %.17g", res.resets.size(),
                                bounds ? "yes" : "no", fee, 0.0005 * 3.0)};
}

std::string run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "lstamm");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str();
}

std::string slurp_dir(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        all += f.filename().string() + "\n" + s.str();
    }
    return all;
}

Outcome c10() {
    const std::vector<std::string> mc{"mc-verify", "--paths", "20000", "--seed", "42"};
    const bool mc_same = run_cli(mc) == run_cli(mc);
    bool bt_same = true;
    std::size_t files = 0;
    for (const char* fixture : {"synthetic_cpmm", "clmm", "rebase_curve"}) {
        std::string outputs[2];
        for (int k = 0; k < 2; ++k) {
            const fs::path dir = fs::temp_directory_path() / fmt("lstamm_acceptance_%s_%d", fixture, k);
            fs::remove_all(dir);
            run_cli({"backtest", "--input", (kFixtures / fixture).string(), "--output", dir.string()});
            outputs[k] = slurp_dir(dir);
            files += k == 0 ? static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), {})) : 0;
        }
        bt_same = bt_same && !outputs[0].empty() && outputs[0] == outputs[1];
    }
    return {mc_same && bt_same && files > 0,
            fmt("mc-verify identical: %s; backtest identical over %zu files: %s", mc_same ? "yes" : "no", files,
                bt_same ? "yes" : "no")};
}

struct Criterion {
    int number;
    const char* label;
    const char* title;
    double time_limit;  // seconds; 0 means none
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "1", "CLMM rr_lvs independent of width", 1.0, c1},
        {2, "2", "CLMM rr_lvh = cosh(rT/2) - 1", 1.0, c2},
        {3, "3", "CPMM path-wise closed forms", 5.0, c3},
        {4, "4", "CPMM expectations by Monte Carlo", 10.0, c4},
        {5, "5", "Curve invariant solvers", 10.0, c5},
        {6, "6", "Rebase required returns", 0.0, c6},
        {7, "7", "Suitability matrix", 0.0, c7},
        {8, "8a", "Synthetic backtest LP-vs-LST gap", 2.0, c8a},
        {8, "8b", "Synthetic backtest classified Yellow", 2.0, c8b},
        {9, "9", "CLMM monthly resets and fee accrual", 0.0, c9},
        {10, "10", "Deterministic outputs", 0.0, c10},
    };

    bool all = true;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.number != only) continue;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit == 0.0 || secs < c.time_limit;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::cout << "criterion " << c.label << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << " | "
                  << o.detail << " | " << fmt("%.3f s", secs);
        if (c.time_limit > 0.0) std::cout << fmt(" (limit %.0f s%s)", c.time_limit, in_time ? "" : ", exceeded");
        std::cout << "\n";
    }
    return all ? 0 : 1;
}
