#pragma once

// File ingestion for historical backtests. Token 0 is the LST, token 1 the
// underlying; amounts are whole-token decimals, liquidity is in
// sqrt(token0 * token1) units, prices are underlying per LST.
//
//   CurveDaily     date,reserve_0,reserve_1,lp_token_supply,lst_price,crv_reward_per_lp_token
//   UniswapEvents  timestamp_unix,amount0_in,amount1_in,amount0_out,amount1_out,active_liquidity,pool_price
//   StakingRates   date,annualized_rate
//   RewardSeries   date,reward_per_lp_token
//   DailyPrices    date,lst_price

#include "lstamm/csv.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lstamm {

enum class Schema { CurveDaily, UniswapEvents, StakingRates, RewardSeries, DailyPrices };

std::string_view to_string(Schema schema) noexcept;

struct CurveSnapshot {
    Date date;
    std::array<double, 2> reserves{};
    double lp_token_supply = 0.0;
    double lst_price = 0.0;
    double crv_reward_value = 0.0;  // per LP token, in underlying
};

struct SwapEvent {
    std::int64_t timestamp = 0;  // unix seconds, UTC
    std::array<double, 2> amount_in{};
    std::array<double, 2> amount_out{};
    double active_liquidity = 0.0;
    double pool_price = 0.0;

    Date date() const;
};

struct DatedValue {
    Date date;
    double value = 0.0;
};

struct IngestOptions {
    bool strict = false;  // out-of-order rows are an error instead of a warning
};

struct FileSummary {
    std::string file;
    Schema schema;
    std::size_t rows = 0;
    std::optional<Date> first;
    std::optional<Date> last;
};

struct BacktestBundle {
    std::vector<CurveSnapshot> curve_daily;
    std::vector<SwapEvent> events;
    std::vector<DatedValue> staking_rates;
    std::vector<DatedValue> rewards;
    std::vector<DatedValue> daily_prices;
    std::vector<std::string> warnings;
    std::vector<FileSummary> files;
};

struct IngestRequest {
    std::optional<std::filesystem::path> curve_daily;
    std::optional<std::filesystem::path> uniswap_events;
    std::optional<std::filesystem::path> staking_rates;
    std::optional<std::filesystem::path> rewards;
    std::optional<std::filesystem::path> daily_prices;
};

// Single-file readers. Rows come back sorted (by date or timestamp); a
// reordering appends a warning, or throws under options.strict.
std::vector<CurveSnapshot> read_curve_daily(const std::filesystem::path& path, const IngestOptions& options,
                                            std::vector<std::string>& warnings);
std::vector<SwapEvent> read_uniswap_events(const std::filesystem::path& path, const IngestOptions& options,
                                           std::vector<std::string>& warnings);
std::vector<DatedValue> read_dated_values(const std::filesystem::path& path, Schema schema,
                                          const IngestOptions& options, std::vector<std::string>& warnings);

/// Reads every requested file, validates schemas, daily contiguity and date
/// alignment (staking rates, rewards and prices must cover the pool's days).
BacktestBundle ingest(const IngestRequest& request, const IngestOptions& options = {});

}  // namespace lstamm
