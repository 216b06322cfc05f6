#include "curve_detail.hpp"
#include "lstamm/cfmm.hpp"
#include "lstamm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace lstamm {
namespace {

constexpr int kMaxIterations = 255;
constexpr double kResidualTolerance = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// K as a function of K0 = prod(x) * N^N / D^N. Stableswap uses K = A*K0,
// Cryptoswap K = A*K0*gamma^2/(gamma + 1 - K0)^2.
struct Amplifier {
    double a = 0.0;
    double gamma = 0.0;  // zero selects the Stableswap form

    double k(double k0) const {
        if (gamma == 0.0) return a * k0;
        const double g = gamma + 1.0 - k0;
        return a * k0 * gamma * gamma / (g * g);
    }

    double dk(double k0) const {
        if (gamma == 0.0) return a;
        const double g = gamma + 1.0 - k0;
        return a * gamma * gamma * (gamma + 1.0 + k0) / (g * g * g);
    }
};

Amplifier amplifier_of(const CurveFamily& family) {
    validate_family(family);
    if (const auto* s = std::get_if<Stableswap>(&family)) return {s->amplification, 0.0};
    if (const auto* c = std::get_if<Cryptoswap>(&family)) return {c->amplification, c->gamma};
    throw DomainError("not a Curve family: " + std::string(to_string(family_tag(family))));
}

void check_reserves(std::span<const double> reserves) {
    if (reserves.size() < 2) throw DomainError("Curve pools need at least two tokens");
    for (double x : reserves) {
        if (!std::isfinite(x) || x <= 0.0) throw DomainError("Curve reserves must be finite and > 0");
    }
}

double int_pow(double base, std::size_t n) {
    double out = 1.0;
    for (std::size_t i = 0; i < n; ++i) out *= base;
    return out;
}

// The two-sided invariant K*D^(N-1)*S + P = K*D^N + (D/N)^N, evaluated on
// reserves already scaled so that all quantities are O(1).
struct Evaluation {
    double value = 0.0;       // LHS - RHS
    double scale = 0.0;       // sum of term magnitudes
    double derivative = 0.0;  // d(value)/d(d)
};

Evaluation evaluate(const Amplifier& amp, std::span<const double> x, double d) {
    const std::size_t n = x.size();
    const double nd = static_cast<double>(n);
    double prod = 1.0;
    double sum = 0.0;
    for (double v : x) {
        prod *= v;
        sum += v;
    }
    const double d_n1 = int_pow(d, n - 1);
    const double d_n = d_n1 * d;
    const double k0 = prod * int_pow(nd, n) / d_n;
    const double k = amp.k(k0);
    const double pow_term = int_pow(d / nd, n);

    Evaluation e;
    e.value = k * d_n1 * (sum - d) + (prod - pow_term);
    e.scale = std::abs(k * d_n1 * sum) + prod + std::abs(k * d_n) + pow_term;

    const double dk_dd = amp.dk(k0) * (-nd * k0 / d);
    const double d_n2 = n >= 2 ? int_pow(d, n - 2) : 0.0;
    e.derivative = dk_dd * d_n1 * (sum - d) + k * ((nd - 1.0) * d_n2 * (sum - d) - d_n1) -
                   int_pow(d / nd, n - 1);
    return e;
}

double relative(const Evaluation& e) {
    return e.scale > 0.0 ? std::abs(e.value) / e.scale : std::abs(e.value);
}

// Newton on the scaled D with a bisection fallback. The residual is positive
// at N*geometric_mean and nonpositive at the reserve sum, so the root is
// bracketed in [N*GM, S] for every valid parameter set.
double solve_d(const Amplifier& amp, std::span<const double> reserves) {
    check_reserves(reserves);
    const std::size_t n = reserves.size();
    double sum = 0.0;
    for (double v : reserves) sum += v;

    std::vector<double> x(n);
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = reserves[i] / sum;
        prod *= x[i];
    }
    double lo = std::min(1.0, static_cast<double>(n) * std::pow(prod, 1.0 / static_cast<double>(n)));
    double hi = 1.0;
    double d = 1.0;

    Evaluation e;
    for (int it = 0; it < kMaxIterations; ++it) {
        e = evaluate(amp, x, d);
        if (e.value == 0.0 || relative(e) <= kEps) break;
        if (e.value > 0.0) {
            lo = d;
        } else {
            hi = d;
        }
        double next = d - e.value / e.derivative;
        if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
        if (std::abs(next - d) <= 2.0 * kEps * d || hi - lo <= 2.0 * kEps * hi) {
            d = next;
            e = evaluate(amp, x, d);
            break;
        }
        d = next;
    }
    if (!(relative(e) <= kResidualTolerance)) {
        throw SolverError("D solver did not converge", relative(e));
    }
    return d * sum;
}

double solve_balance(const Amplifier& amp, std::span<const double> reserves, std::size_t index,
                     double d) {
    const std::size_t n = reserves.size();
    if (n < 2) throw DomainError("Curve pools need at least two tokens");
    if (index >= n) throw DomainError("token index out of range");
    if (!std::isfinite(d) || d <= 0.0) throw DomainError("D must be finite and > 0");

    std::vector<double> x(n);
    double other_prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == index) continue;
        if (!std::isfinite(reserves[i]) || reserves[i] <= 0.0) {
            throw DomainError("Curve reserves must be finite and > 0");
        }
        x[i] = reserves[i] / d;
        other_prod *= x[i];
    }
    // K0 <= 1 on the admissible branch; the residual is negative as the
    // balance goes to zero and nonnegative where K0 reaches 1.
    double lo = 0.0;
    double hi = 1.0 / (other_prod * int_pow(static_cast<double>(n), n));
    double u = reserves[index] / d;
    if (!(u > lo && u < hi)) u = 0.5 * hi;

    Evaluation e;
    for (int it = 0; it < kMaxIterations; ++it) {
        x[index] = u;
        e = evaluate(amp, x, 1.0);
        if (e.value == 0.0 || relative(e) <= kEps) break;
        if (e.value < 0.0) {
            lo = u;
        } else {
            hi = u;
        }
        const double k0 = u * other_prod * int_pow(static_cast<double>(n), n);
        double sum = 0.0;
        for (double v : x) sum += v;
        const double slope = amp.dk(k0) * (k0 / u) * (sum - 1.0) + amp.k(k0) + other_prod;
        double next = u - e.value / slope;
        if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
        if (std::abs(next - u) <= 2.0 * kEps * u || hi - lo <= 2.0 * kEps * hi) {
            u = next;
            x[index] = u;
            e = evaluate(amp, x, 1.0);
            break;
        }
        u = next;
    }
    if (!(relative(e) <= kResidualTolerance)) {
        throw SolverError("balance solver did not converge", relative(e));
    }
    return u * d;
}

}  // namespace

double stableswap_solve_d(std::span<const double> reserves, double amplification) {
    return curve_solve_d(Stableswap{amplification}, reserves);
}

double cryptoswap_solve_d(std::span<const double> reserves, double amplification, double gamma) {
    return curve_solve_d(Cryptoswap{amplification, gamma}, reserves);
}

double curve_solve_d(const CurveFamily& family, std::span<const double> reserves) {
    return solve_d(amplifier_of(family), reserves);
}

double curve_solve_balance(const CurveFamily& family, std::span<const double> reserves,
                           std::size_t index, double d) {
    return solve_balance(amplifier_of(family), reserves, index, d);
}

double curve_relative_residual(const CurveFamily& family, std::span<const double> reserves,
                               double d) {
    const Amplifier amp = amplifier_of(family);
    check_reserves(reserves);
    std::vector<double> x(reserves.begin(), reserves.end());
    for (double& v : x) v /= d;
    return relative(evaluate(amp, x, 1.0));
}

namespace detail {

double curve_spot_price(const CurveFamily& family, std::span<const double> reserves) {
    const Amplifier amp = amplifier_of(family);
    const double d = solve_d(amp, reserves);
    const std::size_t n = reserves.size();
    std::vector<double> x(n);
    double prod = 1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = reserves[i] / d;
        prod *= x[i];
        sum += x[i];
    }
    const double k0 = prod * int_pow(static_cast<double>(n), n);
    const double k = amp.k(k0);
    const double dk = amp.dk(k0);
    auto partial = [&](std::size_t i) {
        return dk * (k0 / x[i]) * (sum - 1.0) + k + prod / x[i];
    };
    return partial(0) / partial(1);
}

}  // namespace detail
}  // namespace lstamm
