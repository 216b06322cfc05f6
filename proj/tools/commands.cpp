#include "commands.hpp"

#include "lstamm/backtest.hpp"
#include "lstamm/cfmm.hpp"
#include "lstamm/errors.hpp"
#include "lstamm/ingest.hpp"
#include "lstamm/metrics.hpp"
#include "lstamm/montecarlo.hpp"
#include "lstamm/price_process.hpp"
#include "lstamm/suitability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace lstamm::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// ---- output helpers ----

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string num(double v) { return format_double(v); }

void write_csv(std::ostream& os, const json& config, const Table& t) {
    os << "# config: " << config.dump() << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
        os << '\n';
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

// Sends content to --output when given, else to stdout.
void emit(const std::string& output, std::ostream& out, const std::string& content) {
    if (output.empty()) {
        out << content;
    } else {
        write_file(output, content);
    }
}

std::string csv_text(const json& config, const Table& t) {
    std::ostringstream os;
    write_csv(os, config, t);
    return os.str();
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---- pool construction ----

CurveFamily make_family(const std::string& name, double amplification, double gamma, double lower, double upper) {
    if (name == "cpmm") return ConstantProduct{};
    if (name == "clmm") return ConcentratedLiquidity{lower, upper};
    if (name == "stableswap") return Stableswap{amplification};
    return Cryptoswap{amplification, gamma};
}

FeeMode default_fee_mode(const CurveFamily& family) {
    const FamilyTag tag = family_tag(family);
    return tag == FamilyTag::Stableswap || tag == FamilyTag::Cryptoswap ? FeeMode::FeesToPool
                                                                         : FeeMode::FeesAccruedSeparately;
}

// Curve pool with lst reserve x whose spot price equals `price`: bisection
// in log(y), spot being increasing in the underlying reserve.
PoolState curve_pool_at(const CurveFamily& family, double x, double price, double fee_rate) {
    PoolState pool{{x, x * price}, fee_rate, FeeMode::FeesToPool, family};
    if (spot_price(pool) == price) return pool;
    auto log_gap = [&](double log_y) {
        pool.reserves[1] = std::exp(log_y);
        return std::log(spot_price(pool)) - std::log(price);
    };
    double lo = std::log(x * price) - 1.0;
    double hi = std::log(x * price) + 1.0;
    for (int i = 0; i < 60 && log_gap(lo) > 0.0; ++i) lo -= 1.0;
    for (int i = 0; i < 60 && log_gap(hi) < 0.0; ++i) hi += 1.0;
    if (log_gap(lo) > 0.0 || log_gap(hi) < 0.0) throw DomainError("cannot place the pool at the initial price");
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (log_gap(mid) < 0.0 ? lo : hi) = mid;
    }
    pool.reserves[1] = std::exp(0.5 * (lo + hi));
    return pool;
}

// ---- subcommands ----

struct RequiredReturnsArgs {
    std::vector<double> rates{0.0, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1};
    double horizon = 1.0;
    double sigma = 0.0;
    std::vector<std::string> families{"cpmm", "clmm", "rebase"};
    std::string format = "csv";
    std::string output;
};

int required_returns_cmd(const RequiredReturnsArgs& a, std::ostream& out) {
    if (a.rates.empty()) throw DomainError("--staking-rate grid is empty");
    for (double r : a.rates) {
        if (!std::isfinite(r)) throw DomainError("staking rates must be finite");
    }
    if (!std::isfinite(a.horizon) || a.horizon < 0.0) throw DomainError("--horizon must be >= 0");
    if (!std::isfinite(a.sigma) || a.sigma < 0.0) throw DomainError("--sigma must be >= 0");

    json config = {{"command", "required-returns"}, {"staking_rates", a.rates}, {"horizon", a.horizon},
                   {"sigma", a.sigma}, {"families", a.families}};
    Table t{{"family", "staking_rate", "horizon", "rr_lvh", "rr_lvs"}, {}};
    json rows = json::array();
    for (const auto& family : a.families) {
        for (double r : a.rates) {
            RequiredReturns rr;
            if (family == "cpmm") {
                const ExpectedReturns e = cpmm_expected_rr(r, a.sigma, a.horizon);
                rr = {e.e_lvh, e.e_lvs};
            } else if (family == "clmm") {
                rr = clmm_required_returns(r, a.horizon);
            } else {
                rr = rebase_required_returns(r, a.horizon);
            }
            t.rows.push_back({family, num(r), num(a.horizon), num(rr.rr_lvh), num(rr.rr_lvs)});
            rows.push_back({{"family", family}, {"staking_rate", r}, {"horizon", a.horizon},
                            {"rr_lvh", rr.rr_lvh}, {"rr_lvs", rr.rr_lvs}});
        }
    }
    if (a.format == "json") {
        emit(a.output, out, json_text({{"config", config}, {"rows", rows}}));
    } else {
        emit(a.output, out, csv_text(config, t));
    }
    return kOk;
}

struct McArgs {
    double rate = 0.04;
    double sigma = 0.05;
    double horizon = 1.0;
    std::size_t paths = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double z_limit = 4.0;
    std::string output;
};

json estimate_json(const McEstimate& e, double z_limit) {
    return {{"mean", e.mean},
            {"std_error", e.std_error},
            {"closed_form", e.closed_form},
            {"z_score", std::isfinite(e.z_score) ? json(e.z_score) : json(e.z_score > 0 ? "inf" : "-inf")},
            {"pass", std::abs(e.z_score) <= z_limit}};
}

int mc_verify_cmd(const McArgs& a, std::ostream& out, std::ostream& err) {
    const RequiredReturnEstimates est =
        estimate_expected_rr(FamilyTag::ConstantProduct, a.rate, a.sigma, a.horizon, a.paths, a.seed, a.threads);
    // threads is left out of the config: results do not depend on it.
    json config = {{"command", "mc-verify"}, {"family", "cpmm"},   {"staking_rate", a.rate}, {"sigma", a.sigma},
                   {"horizon", a.horizon},   {"paths", a.paths},   {"seed", a.seed},         {"z_limit", a.z_limit}};
    const bool pass = std::abs(est.lvh.z_score) <= a.z_limit && std::abs(est.lvs.z_score) <= a.z_limit;
    json report = {{"config", config},
                   {"rr_lvh", estimate_json(est.lvh, a.z_limit)},
                   {"rr_lvs", estimate_json(est.lvs, a.z_limit)},
                   {"pass", pass}};
    emit(a.output, out, json_text(report));
    if (!pass) {
        err << "verification failed: |z| exceeds " << a.z_limit << '\n';
        return kVerificationFailed;
    }
    return kOk;
}

struct SimulateArgs {
    std::string family = "cpmm";
    double rate = 0.04;
    double sigma = 0.0;
    double horizon = 1.0;
    double initial_price = 1.0;
    double liquidity = 1.0;
    double fee_rate = 0.0;
    double amplification = 100.0;
    double gamma = 0.01;
    double width = 0.1;
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string output;
};

int simulate_cmd(const SimulateArgs& a, std::ostream& out) {
    const GbmParams params{a.initial_price, a.rate, a.sigma};
    params.validate();
    if (!std::isfinite(a.horizon) || a.horizon <= 0.0) throw DomainError("--horizon must be > 0");
    if (!(a.liquidity > 0.0) || !std::isfinite(a.liquidity)) throw DomainError("--liquidity must be > 0");
    const auto days = static_cast<std::size_t>(std::llround(a.horizon * kDaysPerYear));
    if (days == 0) throw DomainError("--horizon is shorter than one day");

    const std::vector<double> times = daily_grid(days);
    const PricePath path = sample_gbm(params, times, a.seed);

    PoolState pool;
    if (a.family == "cpmm") {
        const Holdings h = cpmm_holdings(a.liquidity, a.initial_price);
        pool = {{h.lst, h.underlying}, a.fee_rate, FeeMode::FeesAccruedSeparately, ConstantProduct{}};
    } else if (a.family == "clmm") {
        const ClmmPosition pos =
            clmm_symmetric_position(a.liquidity, a.initial_price, a.rate, times.back(), a.width);
        const Holdings h = clmm_holdings(pos, a.initial_price);
        pool = {{h.lst, h.underlying}, a.fee_rate, FeeMode::FeesAccruedSeparately,
                ConcentratedLiquidity{pos.lower_price, pos.upper_price}};
    } else {
        const CurveFamily family = make_family(a.family, a.amplification, a.gamma, 0.0, 0.0);
        pool = curve_pool_at(family, a.liquidity / std::sqrt(a.initial_price), a.initial_price, a.fee_rate);
    }
    const LpSimulation sim = simulate_lp_path(pool, path);

    json config = {{"command", "simulate"}, {"family", a.family},   {"staking_rate", a.rate},
                   {"sigma", a.sigma},      {"horizon", a.horizon}, {"days", days},
                   {"initial_price", a.initial_price}, {"liquidity", a.liquidity}, {"fee_rate", a.fee_rate},
                   {"seed", a.seed}};
    if (a.family == "clmm") config["width"] = a.width;
    if (a.family == "stableswap" || a.family == "cryptoswap") config["amplification"] = a.amplification;
    if (a.family == "cryptoswap") config["gamma"] = a.gamma;
    config["initial_reserves"] = pool.reserves;

    if (a.format == "json") {
        json j = {{"config", config},
                  {"time", sim.times},
                  {"price", sim.prices},
                  {"pool_price", sim.pool_prices},
                  {"lst_reserve", sim.lst_reserve},
                  {"underlying_reserve", sim.underlying_reserve},
                  {"v_lp", sim.v_lp},
                  {"v_lp_with_fees", sim.v_lp_with_fees},
                  {"v_hold", sim.v_hold},
                  {"v_lst", sim.v_lst},
                  {"arbitrage_profit", sim.arbitrage_profit}};
        emit(a.output, out, json_text(j));
        return kOk;
    }
    Table t{{"time", "price", "pool_price", "lst_reserve", "underlying_reserve", "v_lp", "v_lp_with_fees", "v_hold",
             "v_lst", "arbitrage_profit"},
            {}};
    for (std::size_t i = 0; i < sim.times.size(); ++i) {
        t.rows.push_back({num(sim.times[i]), num(sim.prices[i]), num(sim.pool_prices[i]), num(sim.lst_reserve[i]),
                          num(sim.underlying_reserve[i]), num(sim.v_lp[i]), num(sim.v_lp_with_fees[i]),
                          num(sim.v_hold[i]), num(sim.v_lst[i]), num(sim.arbitrage_profit[i])});
    }
    emit(a.output, out, csv_text(config, t));
    return kOk;
}

struct BacktestArgs {
    std::string input;
    std::string curve_daily;
    std::string events;
    std::string staking_rates;
    std::string rewards;
    std::string prices;
    std::string output;
    std::string pool = "auto";
    std::string pool_kind = "reward";
    std::optional<int> window;
    bool strict = false;
    double fee_rate = 0.0005;
    double lower_factor = 0.9975;
    double upper_factor = 1.0075;
    double gas = 0.0;
    bool recenter_on_exit = false;
};

std::vector<std::string> date_strings(std::span<const Date> dates) {
    std::vector<std::string> out;
    for (Date d : dates) out.push_back(format_date(d));
    return out;
}

// Explicit path, else the conventional file name inside --input if present.
std::optional<fs::path> resolve(const std::string& explicit_path, const std::string& dir, const char* name) {
    if (!explicit_path.empty()) return fs::path(explicit_path);
    if (dir.empty()) return std::nullopt;
    const fs::path p = fs::path(dir) / name;
    if (fs::exists(p)) return p;
    return std::nullopt;
}

void write_wealth(const fs::path& dir, const json& config, const WealthSeries& w, const std::vector<double>* fees) {
    Table t{{"date", "lp", "lp_plus_rewards", "hold", "lst", "staker"}, {}};
    if (fees) t.columns.push_back("fees");
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::vector<std::string> row{format_date(w.dates[i]), num(w.lp[i]), num(w.lp_plus_rewards[i]),
                                     num(w.hold[i]),          num(w.lst[i]), num(w.staker[i])};
        if (fees) row.push_back(num((*fees)[i]));
        t.rows.push_back(std::move(row));
    }
    write_file(dir / "wealth.csv", csv_text(config, t));
    json j = {{"config", config},        {"dates", date_strings(w.dates)}, {"lp", w.lp},
              {"lp_plus_rewards", w.lp_plus_rewards}, {"hold", w.hold}, {"lst", w.lst}, {"staker", w.staker}};
    if (fees) j["fees"] = *fees;
    write_file(dir / "wealth.json", json_text(j));
}

void write_classification(const fs::path& dir, json config, const WealthSeries& w, int window) {
    const MaClassification lp = moving_average_classification(w, window, LpSeries::Lp);
    const MaClassification rw = moving_average_classification(w, window, LpSeries::LpPlusRewards);
    config["window"] = window;
    Table t{{"date", "lp_return", "hold_return", "lst_return", "label", "lp_plus_rewards_return", "label_with_rewards"},
            {}};
    std::vector<std::string> labels;
    std::vector<std::string> labels_rw;
    for (std::size_t i = 0; i < lp.labels.size(); ++i) {
        labels.emplace_back(to_string(lp.labels[i]));
        labels_rw.emplace_back(to_string(rw.labels[i]));
        t.rows.push_back({format_date(lp.dates[i]), num(lp.lp_return[i]), num(lp.hold_return[i]),
                          num(lp.lst_return[i]), labels.back(), num(rw.lp_return[i]), labels_rw.back()});
    }
    const std::string stem = "ma" + std::to_string(window);
    write_file(dir / (stem + ".csv"), csv_text(config, t));
    json j = {{"config", config},
              {"window", window},
              {"dates", date_strings(lp.dates)},
              {"lp_return", lp.lp_return},
              {"hold_return", lp.hold_return},
              {"lst_return", lp.lst_return},
              {"labels", labels},
              {"lp_plus_rewards_return", rw.lp_return},
              {"labels_with_rewards", labels_rw}};
    write_file(dir / (stem + ".json"), json_text(j));
}

int backtest_cmd(const BacktestArgs& a, std::ostream& out, std::ostream& err) {
    if (!a.input.empty() && !fs::is_directory(a.input)) {
        throw SchemaError(a.input, 0, 0, "input directory does not exist");
    }
    IngestRequest request;
    request.curve_daily = resolve(a.curve_daily, a.input, "curve_daily.csv");
    request.uniswap_events = resolve(a.events, a.input, "uniswap_events.csv");
    request.staking_rates = resolve(a.staking_rates, a.input, "staking_rates.csv");
    request.rewards = resolve(a.rewards, a.input, "rewards.csv");
    request.daily_prices = resolve(a.prices, a.input, "daily_prices.csv");

    std::string pool = a.pool;
    if (pool == "auto") pool = request.curve_daily ? "curve" : "clmm";
    if (pool == "curve") {
        request.uniswap_events.reset();
        request.daily_prices.reset();
        if (!request.curve_daily) throw SchemaError("<input>", 0, 0, "no CurveDaily file found");
    } else {
        request.curve_daily.reset();
        request.rewards.reset();
        if (!request.uniswap_events && !request.daily_prices) {
            throw SchemaError("<input>", 0, 0, "no UniswapEvents or DailyPrices file found");
        }
    }
    const BacktestBundle bundle = ingest(request, IngestOptions{a.strict});
    for (const auto& w : bundle.warnings) err << "warning: " << w << '\n';

    json files = json::array();
    for (const auto& f : bundle.files) {
        files.push_back({{"file", f.file},
                         {"schema", std::string(to_string(f.schema))},
                         {"rows", f.rows},
                         {"first", f.first ? format_date(*f.first) : ""},
                         {"last", f.last ? format_date(*f.last) : ""}});
    }
    json config = {{"command", "backtest"}, {"pool", pool}, {"strict", a.strict}, {"files", files}};

    WealthSeries wealth;
    json summary = {{"warnings", bundle.warnings}};
    std::optional<ClmmBacktestResult> clmm;
    if (pool == "curve") {
        config["pool_kind"] = a.pool_kind;
        std::vector<CurveSnapshot> snapshots = bundle.curve_daily;
        if (request.rewards) {
            // A reward series replaces the per-row reward column; absent days pay nothing.
            std::map<Date, double> by_date;
            for (const auto& r : bundle.rewards) by_date[r.date] = r.value;
            for (auto& s : snapshots) {
                const auto it = by_date.find(s.date);
                s.crv_reward_value = it == by_date.end() ? 0.0 : it->second;
            }
        }
        CurveBacktestOptions options;
        options.kind = a.pool_kind == "rebase" ? PoolLstKind::Rebase : PoolLstKind::Reward;
        options.staking_rates = bundle.staking_rates;
        wealth = curve_lp_wealth(snapshots, options);
    } else {
        ClmmBacktestConfig cfg{a.fee_rate, a.lower_factor, a.upper_factor, a.gas, a.recenter_on_exit};
        config["fee_rate"] = cfg.fee_rate;
        config["lower_factor"] = cfg.lower_factor;
        config["upper_factor"] = cfg.upper_factor;
        config["gas_per_rebalance"] = cfg.gas_per_rebalance;
        config["recenter_on_exit"] = cfg.recenter_on_exit;
        clmm = clmm_backtest(bundle.events, bundle.daily_prices, bundle.staking_rates, cfg);
        wealth = clmm->wealth;
        json resets = json::array();
        for (const auto& r : clmm->resets) {
            resets.push_back({{"date", format_date(r.date)},
                              {"open_price", r.open_price},
                              {"lower_price", r.lower_price},
                              {"upper_price", r.upper_price},
                              {"liquidity", r.liquidity},
                              {"wealth", r.wealth}});
        }
        summary["resets"] = resets;
        summary["applied_events"] = clmm->applied_events;
        summary["out_of_range_events"] = clmm->out_of_range_events;
        summary["skipped_events"] = clmm->skipped_events;
        if (clmm->skipped_events > 0) {
            err << "warning: skipped " << clmm->skipped_events << " events with zero active liquidity\n";
        }
    }

    std::vector<int> windows;
    if (a.window) {
        windows.push_back(*a.window);
    } else {
        for (int w : {7, 30}) {
            if (wealth.size() >= static_cast<std::size_t>(w)) {
                windows.push_back(w);
            } else {
                err << "warning: series too short for the " << w << "-day window\n";
            }
        }
    }

    const fs::path dir(a.output);
    fs::create_directories(dir);
    write_wealth(dir, config, wealth, clmm ? &clmm->fees : nullptr);
    for (int w : windows) write_classification(dir, config, wealth, w);
    summary["config"] = config;
    summary["days"] = wealth.size();
    summary["terminal"] = {{"lp", wealth.lp.back()},   {"lp_plus_rewards", wealth.lp_plus_rewards.back()},
                           {"hold", wealth.hold.back()}, {"lst", wealth.lst.back()},
                           {"staker", wealth.staker.back()}};
    write_file(dir / "summary.json", json_text(summary));
    out << "wrote " << (dir / "wealth.csv").string() << '\n';
    for (int w : windows) out << "wrote " << (dir / ("ma" + std::to_string(w) + ".csv")).string() << '\n';
    return kOk;
}

struct SwapArgs {
    std::string family = "cpmm";
    std::vector<double> reserves;
    double amplification = 100.0;
    double gamma = 0.01;
    double lower_price = 0.0;
    double upper_price = 0.0;
    double fee_rate = 0.0;
    std::string fee_mode = "default";
    std::size_t in_index = 0;
    std::size_t out_index = 1;
    double amount_in = 0.0;
    std::string output;
};

int swap_quote_cmd(const SwapArgs& a, std::ostream& out) {
    PoolState pool;
    pool.reserves = a.reserves;
    pool.fee_rate = a.fee_rate;
    pool.family = make_family(a.family, a.amplification, a.gamma, a.lower_price, a.upper_price);
    pool.fee_mode = a.fee_mode == "pool"       ? FeeMode::FeesToPool
                    : a.fee_mode == "separate" ? FeeMode::FeesAccruedSeparately
                                               : default_fee_mode(pool.family);
    const double spot_before = spot_price(pool);
    const double invariant_before = pool_invariant(pool);
    const SwapQuote q = swap(pool, a.in_index, a.out_index, a.amount_in);
    PoolState after = pool;
    after.reserves = q.new_reserves;

    json config = {{"command", "swap-quote"},
                   {"family", a.family},
                   {"reserves", a.reserves},
                   {"fee_rate", a.fee_rate},
                   {"fee_mode", pool.fee_mode == FeeMode::FeesToPool ? "pool" : "separate"},
                   {"in_index", a.in_index},
                   {"out_index", a.out_index},
                   {"amount_in", a.amount_in}};
    if (a.family == "clmm") {
        config["lower_price"] = a.lower_price;
        config["upper_price"] = a.upper_price;
    }
    if (a.family == "stableswap" || a.family == "cryptoswap") config["amplification"] = a.amplification;
    if (a.family == "cryptoswap") config["gamma"] = a.gamma;
    json j = {{"config", config},
              {"amount_in", q.amount_in},
              {"amount_out", q.amount_out},
              {"fee_paid", q.fee_paid},
              {"new_reserves", q.new_reserves},
              {"spot_price_before", spot_before},
              {"spot_price_after", q.spot_price_after},
              {"invariant_before", invariant_before},
              {"invariant_after", pool_invariant(after)}};
    emit(a.output, out, json_text(j));
    return kOk;
}

int suitability_cmd(const std::string& format, const std::string& output, std::ostream& out) {
    json config = {{"command", "suitability"}};
    Table t{{"lst_kind", "counter_asset", "amm", "rebalancing_required"}, {}};
    json rows = json::array();
    for (const auto& row : suitability_table()) {
        for (const auto& amm : row.amms) {
            const std::string kind(to_string(row.lst_kind));
            const std::string counter(to_string(row.counter_asset));
            const std::string family(to_string(amm.family));
            t.rows.push_back({kind, counter, family, amm.rebalancing_required ? "true" : "false"});
            rows.push_back({{"lst_kind", kind},
                            {"counter_asset", counter},
                            {"amm", family},
                            {"rebalancing_required", amm.rebalancing_required}});
        }
    }
    if (format == "json") {
        emit(output, out, json_text({{"config", config}, {"rows", rows}}));
    } else {
        emit(output, out, csv_text(config, t));
    }
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"LST liquidity lab: swap math, required returns, Monte Carlo checks and backtests", "lstamm"};
    app.require_subcommand(1);

    const auto families = CLI::IsMember({"cpmm", "clmm", "stableswap", "cryptoswap"});
    const auto formats = CLI::IsMember({"csv", "json"});

    RequiredReturnsArgs rr;
    auto* rr_cmd = app.add_subcommand("required-returns", "Tabulate rr_LVH and rr_LVS per family and staking rate");
    rr_cmd->add_option("--staking-rate", rr.rates, "Annualized staking rates (grid)")->delimiter(',')->capture_default_str();
    rr_cmd->add_option("--horizon", rr.horizon, "Horizon in years")->capture_default_str();
    rr_cmd->add_option("--sigma", rr.sigma, "Volatility for the constant-product expectation")->capture_default_str();
    rr_cmd->add_option("--family", rr.families, "Families: cpmm, clmm, rebase")
        ->delimiter(',')
        ->check(CLI::IsMember({"cpmm", "clmm", "rebase"}))
        ->capture_default_str();
    rr_cmd->add_option("--format", rr.format, "csv or json")->check(formats)->capture_default_str();
    rr_cmd->add_option("--output", rr.output, "Output file (default stdout)");

    McArgs mc;
    auto* mc_cmd = app.add_subcommand("mc-verify", "Monte Carlo check of the constant-product expectations");
    mc_cmd->add_option("--staking-rate", mc.rate, "Annualized staking rate")->capture_default_str();
    mc_cmd->add_option("--sigma", mc.sigma, "Volatility")->check(CLI::NonNegativeNumber)->capture_default_str();
    mc_cmd->add_option("--horizon", mc.horizon, "Horizon in years")->check(CLI::NonNegativeNumber)->capture_default_str();
    mc_cmd->add_option("--paths", mc.paths, "Number of paths")->check(CLI::Range(2, 100000000))->capture_default_str();
    mc_cmd->add_option("--seed", mc.seed, "Random seed")->capture_default_str();
    mc_cmd->add_option("--threads", mc.threads, "Worker threads (results do not depend on it)")
        ->check(CLI::Range(1, 1024))
        ->capture_default_str();
    mc_cmd->add_option("--z-limit", mc.z_limit, "Fail when |z| exceeds this")->check(CLI::PositiveNumber)->capture_default_str();
    mc_cmd->add_option("--output", mc.output, "Output file (default stdout)");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Arbitrage-aligned LP replay along a sampled GBM path");
    sim_cmd->add_option("--family", sim.family, "cpmm, clmm, stableswap or cryptoswap")->check(families)->capture_default_str();
    sim_cmd->add_option("--staking-rate", sim.rate, "Annualized staking rate")->capture_default_str();
    sim_cmd->add_option("--sigma", sim.sigma, "Volatility")->capture_default_str();
    sim_cmd->add_option("--horizon", sim.horizon, "Horizon in years (daily grid)")->capture_default_str();
    sim_cmd->add_option("--initial-price", sim.initial_price, "Initial LST price")->capture_default_str();
    sim_cmd->add_option("--liquidity", sim.liquidity, "Initial liquidity scale")->capture_default_str();
    sim_cmd->add_option("--fee-rate", sim.fee_rate, "Swap fee rate")->capture_default_str();
    sim_cmd->add_option("--amplification", sim.amplification, "Curve amplification A")->capture_default_str();
    sim_cmd->add_option("--gamma", sim.gamma, "Cryptoswap gamma")->capture_default_str();
    sim_cmd->add_option("--width", sim.width, "Concentrated range half-width d (log price)")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
    sim_cmd->add_option("--format", sim.format, "csv or json")->check(formats)->capture_default_str();
    sim_cmd->add_option("--output", sim.output, "Output file (default stdout)");

    BacktestArgs bt;
    int window = 0;
    auto* bt_cmd = app.add_subcommand("backtest", "Historical replay from CSV files");
    bt_cmd->add_option("--input", bt.input, "Directory with curve_daily.csv, uniswap_events.csv, ...");
    bt_cmd->add_option("--curve-daily", bt.curve_daily, "CurveDaily file");
    bt_cmd->add_option("--events", bt.events, "UniswapEvents file");
    bt_cmd->add_option("--staking-rates", bt.staking_rates, "StakingRates file");
    bt_cmd->add_option("--rewards", bt.rewards, "RewardSeries file");
    bt_cmd->add_option("--prices", bt.prices, "DailyPrices file");
    bt_cmd->add_option("--output", bt.output, "Output directory")->required();
    bt_cmd->add_option("--pool", bt.pool, "auto, curve or clmm")
        ->check(CLI::IsMember({"auto", "curve", "clmm"}))
        ->capture_default_str();
    bt_cmd->add_option("--pool-kind", bt.pool_kind, "Curve pool LST kind: reward or rebase")
        ->check(CLI::IsMember({"reward", "rebase"}))
        ->capture_default_str();
    auto* window_opt = bt_cmd->add_option("--window", window, "Classification window (7 or 30); default both")
                           ->check(CLI::IsMember({7, 30}));
    bt_cmd->add_flag("--strict", bt.strict, "Out-of-order rows are an error");
    bt_cmd->add_option("--fee-rate", bt.fee_rate, "Concentrated pool fee rate")->capture_default_str();
    bt_cmd->add_option("--lower-factor", bt.lower_factor, "Range lower bound / month-open price")->capture_default_str();
    bt_cmd->add_option("--upper-factor", bt.upper_factor, "Range upper bound / month-open price")->capture_default_str();
    bt_cmd->add_option("--gas-per-rebalance", bt.gas, "Flat cost per reset, in underlying")->capture_default_str();
    bt_cmd->add_flag("--recenter-on-exit", bt.recenter_on_exit, "Re-center when a daily close leaves the range");

    SwapArgs sw;
    auto* sw_cmd = app.add_subcommand("swap-quote", "Quote one swap as JSON");
    sw_cmd->add_option("--family", sw.family, "cpmm, clmm, stableswap or cryptoswap")->check(families)->capture_default_str();
    sw_cmd->add_option("--reserves", sw.reserves, "Pool reserves")->delimiter(',')->required();
    sw_cmd->add_option("--amplification", sw.amplification, "Curve amplification A")->capture_default_str();
    sw_cmd->add_option("--gamma", sw.gamma, "Cryptoswap gamma")->capture_default_str();
    sw_cmd->add_option("--lower-price", sw.lower_price, "Concentrated range lower price");
    sw_cmd->add_option("--upper-price", sw.upper_price, "Concentrated range upper price");
    sw_cmd->add_option("--fee-rate", sw.fee_rate, "Swap fee rate")->capture_default_str();
    sw_cmd->add_option("--fee-mode", sw.fee_mode, "pool, separate or default (by family)")
        ->check(CLI::IsMember({"pool", "separate", "default"}))
        ->capture_default_str();
    sw_cmd->add_option("--in-index", sw.in_index, "Input token index")->capture_default_str();
    sw_cmd->add_option("--out-index", sw.out_index, "Output token index")->capture_default_str();
    sw_cmd->add_option("--amount-in", sw.amount_in, "Input amount")->required();
    sw_cmd->add_option("--output", sw.output, "Output file (default stdout)");

    std::string suit_format = "csv";
    std::string suit_output;
    auto* suit_cmd = app.add_subcommand("suitability", "Print the LST pair / AMM suitability table");
    suit_cmd->add_option("--format", suit_format, "csv or json")->check(formats)->capture_default_str();
    suit_cmd->add_option("--output", suit_output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*rr_cmd) return required_returns_cmd(rr, out);
        if (*mc_cmd) return mc_verify_cmd(mc, out, err);
        if (*sim_cmd) return simulate_cmd(sim, out);
        if (*bt_cmd) {
            if (window_opt->count() > 0) bt.window = window;
            return backtest_cmd(bt, out, err);
        }
        if (*sw_cmd) return swap_quote_cmd(sw, out);
        if (*suit_cmd) return suitability_cmd(suit_format, suit_output, out);
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return kUsageError;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace lstamm::cli
