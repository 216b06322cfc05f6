#!/usr/bin/env python3
"""Regenerates the CSV fixtures in this directory. Deterministic; rerun after
changing a generator and re-freeze the golden outputs."""
import datetime as dt
import math
import pathlib

HERE = pathlib.Path(__file__).resolve().parent


def days(start, n):
    d0 = dt.date.fromisoformat(start)
    return [d0 + dt.timedelta(days=i) for i in range(n)]


def write(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for r in rows:
            f.write(",".join(x if isinstance(x, str) else repr(x) for x in r) + "\n")


def synthetic_cpmm():
    # sigma = 0 constant-product pool: P_i = e^{r i/365}, L = 1000, one LP
    # token per unit of L, price tracked exactly by the pool.
    r, liquidity = 0.04, 1000.0
    out = HERE / "synthetic_cpmm"
    dates = days("2023-01-01", 366)
    rows = []
    for i, d in enumerate(dates):
        p = math.exp(r * i / 365)
        rows.append([d.isoformat(), liquidity / math.sqrt(p), liquidity * math.sqrt(p), liquidity, p, 0.0])
    write(out / "curve_daily.csv",
          ["date", "reserve_0", "reserve_1", "lp_token_supply", "lst_price", "crv_reward_per_lp_token"], rows)
    write(out / "staking_rates.csv", ["date", "annualized_rate"], [[d.isoformat(), r] for d in dates])


def clmm():
    out = HERE / "clmm"
    dates = days("2024-01-25", 41)
    prices = [1.1 * math.exp(0.04 * i / 365) * (1.0 + 0.001 * math.sin(i)) for i in range(len(dates))]
    write(out / "daily_prices.csv", ["date", "lst_price"], [[d.isoformat(), p] for d, p in zip(dates, prices)])
    write(out / "staking_rates.csv", ["date", "annualized_rate"], [[d.isoformat(), 0.035] for d in dates])
    events = []
    epoch = dt.datetime(1970, 1, 1, tzinfo=dt.timezone.utc)
    for i, d in enumerate(dates):
        base = int((dt.datetime(d.year, d.month, d.day, tzinfo=dt.timezone.utc) - epoch).total_seconds())
        prev = prices[i - 1] if i else prices[0]
        for k, hour in enumerate((8, 14, 20)):
            w = hour / 24.0
            price = prev + (prices[i] - prev) * w
            amount = 10.0 + (i * 7 + k * 3) % 11
            if (i + k) % 2 == 0:
                row = [base + hour * 3600, amount, 0.0, 0.0, amount * price * 0.9995, 5000.0, price]
            else:
                row = [base + hour * 3600, 0.0, amount, amount / price * 0.9995, 0.0, 5000.0, price]
            events.append(row)
    # Swap with no recorded active liquidity; skipped by the replay.
    events.insert(10, [events[10][0] - 60, 1.0, 0.0, 0.0, 1.0, 0.0, prices[3]])
    write(out / "uniswap_events.csv",
          ["timestamp_unix", "amount0_in", "amount1_in", "amount0_out", "amount1_out", "active_liquidity",
           "pool_price"], events)


def rebase_curve():
    # stETH-like pool: price near 1, balances rebasing, CRV rewards.
    out = HERE / "rebase_curve"
    dates = days("2024-02-20", 40)
    rate = 0.032
    rows = []
    for i, d in enumerate(dates):
        g = math.exp(rate * i / 365)
        p = 0.999 + 0.0005 * math.cos(i / 3.0)
        r0 = 5000.0 * g * (1.0 + 0.01 * math.sin(i / 5.0))
        r1 = 5100.0 * (1.0 - 0.01 * math.sin(i / 5.0))
        supply = 10050.0 + 2.0 * i
        rows.append([d.isoformat(), r0, r1, supply, p, 2e-5])
    write(out / "curve_daily.csv",
          ["date", "reserve_0", "reserve_1", "lp_token_supply", "lst_price", "crv_reward_per_lp_token"], rows)
    write(out / "staking_rates.csv", ["date", "annualized_rate"],
          [[d.isoformat(), rate + 0.001 * math.sin(i)] for i, d in enumerate(dates)])
    write(out / "rewards.csv", ["date", "reward_per_lp_token"],
          [[d.isoformat(), 1.5e-4] for i, d in enumerate(dates) if i % 7 == 3])


def invalid():
    out = HERE / "invalid"
    out.mkdir(parents=True, exist_ok=True)
    (out / "empty.csv").write_text("")
    curve_header = "date,reserve_0,reserve_1,lp_token_supply,lst_price,crv_reward_per_lp_token\n"
    (out / "bad_header.csv").write_text("date,reserve0,reserve_1,lp_token_supply,lst_price,crv\n"
                                        "2024-01-01,1,1,1,1,0\n")
    (out / "out_of_order.csv").write_text(curve_header +
                                          "2024-01-01,100,100,100,1,0\n"
                                          "2024-01-03,100,101,100,1.01,0\n"
                                          "2024-01-02,100,100.5,100,1.005,0\n")
    (out / "gap.csv").write_text(curve_header +
                                 "2024-01-01,100,100,100,1,0\n"
                                 "2024-01-02,100,100,100,1,0\n"
                                 "2024-01-05,100,100,100,1,0\n"
                                 "2024-01-06,100,100,100,1,0\n"
                                 "2024-01-08,100,100,100,1,0\n")
    (out / "negative_reserve.csv").write_text(curve_header +
                                              "2024-01-01,100,100,100,1,0\n"
                                              "2024-01-02,100,-3,100,1,0\n")
    (out / "duplicate.csv").write_text(curve_header +
                                       "2024-01-01,100,100,100,1,0\n"
                                       "2024-01-01,100,100,100,1,0\n")
    (out / "short_rates.csv").write_text("date,annualized_rate\n2024-01-01,0.04\n2024-01-02,0.04\n")
    (out / "curve_3day.csv").write_text(curve_header +
                                        "2024-01-01,100,100,100,1,0\n"
                                        "2024-01-02,100,100,100,1,0\n"
                                        "2024-01-03,100,100,100,1,0\n")


if __name__ == "__main__":
    synthetic_cpmm()
    clmm()
    rebase_curve()
    invalid()
