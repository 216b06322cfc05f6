#include "lstamm/backtest.hpp"
#include "lstamm/errors.hpp"

#include <string>

namespace lstamm {

std::string_view to_string(MaLabel label) noexcept {
    switch (label) {
        case MaLabel::Green: return "Green";
        case MaLabel::Yellow: return "Yellow";
        case MaLabel::Red: return "Red";
    }
    return "Unknown";
}

std::string_view to_string(LpSeries series) noexcept {
    return series == LpSeries::Lp ? "lp" : "lp_plus_rewards";
}

MaClassification moving_average_classification(const WealthSeries& series, int window, LpSeries lp_series) {
    if (window != 7 && window != 30) throw DomainError("window must be 7 or 30 days");
    const std::size_t n = series.size();
    const std::vector<double>& lp = lp_series == LpSeries::Lp ? series.lp : series.lp_plus_rewards;
    if (lp.size() != n || series.hold.size() != n || series.lst.size() != n) {
        throw DomainError("wealth series have unequal lengths");
    }
    const auto w = static_cast<std::size_t>(window);
    if (n < w) {
        throw DomainError("series of " + std::to_string(n) + " days is shorter than the " + std::to_string(window) +
                          "-day window");
    }

    MaClassification out;
    out.window = window;
    out.series = lp_series;
    // Overlapping daily windows; returns are endpoint ratios.
    for (std::size_t i = w; i < n; ++i) {
        const double r_lp = lp[i] / lp[i - w] - 1.0;
        const double r_hold = series.hold[i] / series.hold[i - w] - 1.0;
        const double r_lst = series.lst[i] / series.lst[i - w] - 1.0;
        MaLabel label = MaLabel::Red;
        if (r_lp >= r_hold) label = r_lp >= r_lst ? MaLabel::Green : MaLabel::Yellow;
        out.dates.push_back(series.dates[i]);
        out.labels.push_back(label);
        out.lp_return.push_back(r_lp);
        out.hold_return.push_back(r_hold);
        out.lst_return.push_back(r_lst);
    }
    return out;
}

}  // namespace lstamm
