#include "lstamm/ingest.hpp"

#include "lstamm/errors.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace lstamm {
namespace {

using namespace std::string_view_literals;

constexpr std::array kCurveColumns = {"date"sv,     "reserve_0"sv, "reserve_1"sv, "lp_token_supply"sv,
                                      "lst_price"sv, "crv_reward_per_lp_token"sv};
constexpr std::array kEventColumns = {"timestamp_unix"sv, "amount0_in"sv,       "amount1_in"sv, "amount0_out"sv,
                                      "amount1_out"sv,    "active_liquidity"sv, "pool_price"sv};
constexpr std::array kRateColumns = {"date"sv, "annualized_rate"sv};
constexpr std::array kRewardColumns = {"date"sv, "reward_per_lp_token"sv};
constexpr std::array kPriceColumns = {"date"sv, "lst_price"sv};

double positive(const CsvTable& t, const CsvRow& r, std::size_t c) {
    const double v = parse_number(t, r, c);
    if (!(v > 0.0)) throw SchemaError(t.file, r.line, c + 1, "column '" + t.header[c] + "' must be > 0");
    return v;
}

double nonnegative(const CsvTable& t, const CsvRow& r, std::size_t c) {
    const double v = parse_number(t, r, c);
    if (!(v >= 0.0)) throw SchemaError(t.file, r.line, c + 1, "column '" + t.header[c] + "' must be >= 0");
    return v;
}

// Sorts rows by key (stable). Out-of-order input is a warning, or an error
// under strict mode; duplicate keys are always an error.
template <class Row, class Key>
void sort_rows(const CsvTable& table, std::vector<Row>& rows, std::vector<std::size_t>& lines, Key key,
               const IngestOptions& options, std::vector<std::string>& warnings, bool unique) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (key(rows[i]) < key(rows[i - 1])) {
            if (options.strict) throw SchemaError(table.file, lines[i], 1, "rows out of order (strict mode)");
            warnings.push_back(table.file + ": rows out of order, sorted");
            std::vector<std::size_t> idx(rows.size());
            for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return key(rows[a]) < key(rows[b]); });
            std::vector<Row> sorted;
            std::vector<std::size_t> sorted_lines;
            for (std::size_t k : idx) {
                sorted.push_back(rows[k]);
                sorted_lines.push_back(lines[k]);
            }
            rows = std::move(sorted);
            lines = std::move(sorted_lines);
            break;
        }
    }
    if (!unique) return;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(key(rows[i - 1]) < key(rows[i]))) {
            throw SchemaError(table.file, lines[i], 1, "duplicate date");
        }
    }
}

void require_contiguous(const std::string& file, std::span<const Date> dates) {
    const auto gaps = missing_day_ranges(dates);
    if (gaps.empty()) return;
    std::string msg = "dates are not daily-contiguous; missing days:";
    for (const auto& g : gaps) msg += " " + g;
    throw SchemaError(file, 0, 0, msg);
}

std::string compress(std::span<const Date> days) {
    std::string out;
    std::size_t i = 0;
    while (i < days.size()) {
        std::size_t j = i;
        while (j + 1 < days.size() && days[j + 1] - days[j] == std::chrono::days{1}) ++j;
        if (!out.empty()) out += ' ';
        out += i == j ? format_date(days[i]) : format_date(days[i]) + ".." + format_date(days[j]);
        i = j + 1;
    }
    return out;
}

void require_cover(const std::string& file, std::span<const Date> required, std::span<const DatedValue> have,
                   const std::string& what) {
    std::set<Date> available;
    for (const auto& v : have) available.insert(v.date);
    std::vector<Date> missing;
    for (Date d : required) {
        if (!available.contains(d)) missing.push_back(d);
    }
    if (!missing.empty()) {
        throw SchemaError(file, 0, 0, what + " do not cover pool days: " + compress(missing));
    }
}

FileSummary summary_of(const std::string& file, Schema schema, std::size_t rows, std::optional<Date> first,
                       std::optional<Date> last) {
    return {file, schema, rows, first, last};
}

}  // namespace

std::string_view to_string(Schema schema) noexcept {
    switch (schema) {
        case Schema::CurveDaily: return "CurveDaily";
        case Schema::UniswapEvents: return "UniswapEvents";
        case Schema::StakingRates: return "StakingRates";
        case Schema::RewardSeries: return "RewardSeries";
        case Schema::DailyPrices: return "DailyPrices";
    }
    return "Unknown";
}

Date SwapEvent::date() const {
    const auto secs = std::chrono::sys_seconds{std::chrono::seconds{timestamp}};
    return std::chrono::floor<std::chrono::days>(secs);
}

std::vector<CurveSnapshot> read_curve_daily(const std::filesystem::path& path, const IngestOptions& options,
                                            std::vector<std::string>& warnings) {
    const CsvTable table = read_csv(path, kCurveColumns);
    std::vector<CurveSnapshot> rows;
    std::vector<std::size_t> lines;
    for (const auto& r : table.rows) {
        CurveSnapshot s;
        s.date = parse_date(table, r, 0);
        s.reserves = {positive(table, r, 1), positive(table, r, 2)};
        s.lp_token_supply = positive(table, r, 3);
        s.lst_price = positive(table, r, 4);
        s.crv_reward_value = nonnegative(table, r, 5);
        rows.push_back(s);
        lines.push_back(r.line);
    }
    sort_rows(table, rows, lines, [](const CurveSnapshot& s) { return s.date; }, options, warnings, true);
    std::vector<Date> dates;
    for (const auto& s : rows) dates.push_back(s.date);
    require_contiguous(table.file, dates);
    return rows;
}

std::vector<SwapEvent> read_uniswap_events(const std::filesystem::path& path, const IngestOptions& options,
                                           std::vector<std::string>& warnings) {
    const CsvTable table = read_csv(path, kEventColumns);
    std::vector<SwapEvent> rows;
    std::vector<std::size_t> lines;
    for (const auto& r : table.rows) {
        SwapEvent e;
        e.timestamp = parse_integer(table, r, 0);
        e.amount_in = {nonnegative(table, r, 1), nonnegative(table, r, 2)};
        e.amount_out = {nonnegative(table, r, 3), nonnegative(table, r, 4)};
        e.active_liquidity = nonnegative(table, r, 5);
        e.pool_price = positive(table, r, 6);
        rows.push_back(e);
        lines.push_back(r.line);
    }
    sort_rows(table, rows, lines, [](const SwapEvent& e) { return e.timestamp; }, options, warnings, false);
    return rows;
}

std::vector<DatedValue> read_dated_values(const std::filesystem::path& path, Schema schema,
                                          const IngestOptions& options, std::vector<std::string>& warnings) {
    std::span<const std::string_view> columns;
    switch (schema) {
        case Schema::StakingRates: columns = kRateColumns; break;
        case Schema::RewardSeries: columns = kRewardColumns; break;
        case Schema::DailyPrices: columns = kPriceColumns; break;
        default: throw DomainError("not a dated-value schema: " + std::string(to_string(schema)));
    }
    const CsvTable table = read_csv(path, columns);
    std::vector<DatedValue> rows;
    std::vector<std::size_t> lines;
    for (const auto& r : table.rows) {
        DatedValue v;
        v.date = parse_date(table, r, 0);
        switch (schema) {
            case Schema::StakingRates: v.value = parse_number(table, r, 1); break;
            case Schema::RewardSeries: v.value = nonnegative(table, r, 1); break;
            default: v.value = positive(table, r, 1); break;
        }
        rows.push_back(v);
        lines.push_back(r.line);
    }
    sort_rows(table, rows, lines, [](const DatedValue& v) { return v.date; }, options, warnings, true);
    if (schema != Schema::RewardSeries) {
        std::vector<Date> dates;
        for (const auto& v : rows) dates.push_back(v.date);
        require_contiguous(table.file, dates);
    }
    return rows;
}

BacktestBundle ingest(const IngestRequest& request, const IngestOptions& options) {
    BacktestBundle b;
    auto dated_summary = [&](const std::filesystem::path& p, Schema s, const std::vector<DatedValue>& rows) {
        b.files.push_back(summary_of(p.string(), s, rows.size(), rows.front().date, rows.back().date));
    };

    if (request.curve_daily) {
        b.curve_daily = read_curve_daily(*request.curve_daily, options, b.warnings);
        b.files.push_back(summary_of(request.curve_daily->string(), Schema::CurveDaily, b.curve_daily.size(),
                                     b.curve_daily.front().date, b.curve_daily.back().date));
    }
    if (request.uniswap_events) {
        b.events = read_uniswap_events(*request.uniswap_events, options, b.warnings);
        b.files.push_back(summary_of(request.uniswap_events->string(), Schema::UniswapEvents, b.events.size(),
                                     b.events.front().date(), b.events.back().date()));
    }
    if (request.staking_rates) {
        b.staking_rates = read_dated_values(*request.staking_rates, Schema::StakingRates, options, b.warnings);
        dated_summary(*request.staking_rates, Schema::StakingRates, b.staking_rates);
    }
    if (request.rewards) {
        b.rewards = read_dated_values(*request.rewards, Schema::RewardSeries, options, b.warnings);
        dated_summary(*request.rewards, Schema::RewardSeries, b.rewards);
    }
    if (request.daily_prices) {
        b.daily_prices = read_dated_values(*request.daily_prices, Schema::DailyPrices, options, b.warnings);
        dated_summary(*request.daily_prices, Schema::DailyPrices, b.daily_prices);
    } else if (!b.events.empty()) {
        // Close-of-day pool price, carried forward over days without swaps.
        const Date first = b.events.front().date();
        const Date last = b.events.back().date();
        std::size_t k = 0;
        double price = b.events.front().pool_price;
        for (Date d = first; d <= last; d += std::chrono::days{1}) {
            while (k < b.events.size() && b.events[k].date() <= d) price = b.events[k++].pool_price;
            b.daily_prices.push_back({d, price});
        }
        b.warnings.push_back("daily LST prices derived from swap events (close-of-day pool price)");
    }

    // Pool days: the Curve snapshots, else the daily price grid.
    std::vector<Date> pool_days;
    std::string pool_file;
    if (!b.curve_daily.empty()) {
        for (const auto& s : b.curve_daily) pool_days.push_back(s.date);
        pool_file = request.curve_daily->string();
    } else {
        for (const auto& p : b.daily_prices) pool_days.push_back(p.date);
        pool_file = request.daily_prices ? request.daily_prices->string()
                                         : request.uniswap_events ? request.uniswap_events->string() : "";
    }
    if (pool_days.empty()) throw SchemaError("<request>", 0, 0, "no pool data (CurveDaily or UniswapEvents) given");

    if (request.staking_rates) require_cover(request.staking_rates->string(), pool_days, b.staking_rates, "staking rates");
    if (request.daily_prices && !b.curve_daily.empty()) {
        require_cover(request.daily_prices->string(), pool_days, b.daily_prices, "daily prices");
    }
    if (request.rewards) {
        std::vector<Date> outside;
        for (const auto& r : b.rewards) {
            if (r.date < pool_days.front() || r.date > pool_days.back()) outside.push_back(r.date);
        }
        if (!outside.empty()) {
            throw SchemaError(request.rewards->string(), 0, 0, "reward dates outside the pool range: " + compress(outside));
        }
    }
    if (!b.events.empty() && request.daily_prices) {
        if (b.events.front().date() < pool_days.front() || b.events.back().date() > pool_days.back()) {
            b.warnings.push_back("swap events outside the daily price range are ignored");
        }
    }
    return b;
}

}  // namespace lstamm
