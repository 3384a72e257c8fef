#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "stockcast/error.hpp"
#include "stockcast/market_data.hpp"

namespace stockcast::indicators {

using market_data::PriceBar;
using market_data::PriceSeries;

// One per-day feature aligned to a PriceSeries. The first `warmup` entries
// are undefined (stored as NaN) because the window extends before the data.
struct IndicatorColumn {
    std::string name;
    std::vector<double> values;
    std::size_t warmup = 0;

    bool defined(std::size_t t) const { return t >= warmup; }
    std::size_t size() const { return values.size(); }
};

class InvalidWindow : public ValidationError {
public:
    explicit InvalidWindow(std::size_t n)
        : ValidationError("invalid indicator window n=" + std::to_string(n)) {}
};

class SeriesTooShort : public ValidationError {
public:
    SeriesTooShort(std::size_t have, std::size_t need)
        : ValidationError("series has " + std::to_string(have) + " bars, window needs " +
                          std::to_string(need)) {}
};

inline double typical_price(const PriceBar& bar) {
    return (bar.high + bar.low + bar.close) / 3.0;
}

namespace detail {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

inline double window_mean(const std::vector<double>& v, std::size_t last, std::size_t n) {
    double sum = 0.0;
    for (std::size_t k = last + 1 - n; k <= last; ++k) sum += v[k];
    return sum / double(n);
}

// Population standard deviation over v[last-n+1 .. last].
inline double window_stddev(const std::vector<double>& v, std::size_t last, std::size_t n) {
    const double mean = window_mean(v, last, n);
    double acc = 0.0;
    for (std::size_t k = last + 1 - n; k <= last; ++k) {
        const double d = v[k] - mean;
        acc += d * d;
    }
    return std::sqrt(acc / double(n));
}

} // namespace detail

// Simple moving average of the close price; defined from day n-1 on.
// Each window is summed directly, so no drift accumulates along the series.
inline IndicatorColumn sma(const PriceSeries& series, std::size_t n) {
    if (n == 0) throw InvalidWindow(n);
    if (series.size() < n) throw SeriesTooShort(series.size(), n);

    IndicatorColumn col;
    col.name = "sma" + std::to_string(n);
    col.warmup = n - 1;
    col.values.assign(series.size(), detail::kUndefined);

    const auto closes = series.closes();
    for (std::size_t t = n - 1; t < closes.size(); ++t)
        col.values[t] = detail::window_mean(closes, t, n);
    return col;
}

// Bollinger Bands. The middle band is the SMA(n) of closes; the band offset
// is m population standard deviations of the typical price over the same n
// days around the SMA(n) of typical price. The mid/offset asymmetry is the
// conventional formulation, kept as is.
inline std::tuple<IndicatorColumn, IndicatorColumn, IndicatorColumn>
bollinger(const PriceSeries& series, std::size_t n, double m) {
    if (n < 2) throw InvalidWindow(n);
    if (m <= 0) throw ValidationError("bollinger: stddev multiplier must be positive");
    if (series.size() < n) throw SeriesTooShort(series.size(), n);

    IndicatorColumn mid = sma(series, n);
    mid.name = "boll_mid";

    IndicatorColumn upper, lower;
    upper.name = "boll_up";
    lower.name = "boll_low";
    upper.warmup = lower.warmup = n - 1;
    upper.values.assign(series.size(), detail::kUndefined);
    lower.values.assign(series.size(), detail::kUndefined);

    std::vector<double> tp;
    tp.reserve(series.size());
    for (const auto& b : series.bars) tp.push_back(typical_price(b));

    for (std::size_t t = n - 1; t < tp.size(); ++t) {
        const double tp_mean = detail::window_mean(tp, t, n);
        const double offset = m * detail::window_stddev(tp, t, n);
        upper.values[t] = tp_mean + offset;
        lower.values[t] = tp_mean - offset;
    }
    return {mid, upper, lower};
}

} // namespace stockcast::indicators
