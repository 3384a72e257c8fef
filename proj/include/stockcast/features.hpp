#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stockcast/date.hpp"
#include "stockcast/error.hpp"
#include "stockcast/indicators.hpp"
#include "stockcast/linalg.hpp"
#include "stockcast/market_data.hpp"
#include "stockcast/rng.hpp"
#include "stockcast/tweet_store.hpp"

namespace stockcast::features {

using linalg::Matrix;

class CalendarMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class TooFewRows : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnfittedScaler : public ValidationError {
public:
    UnfittedScaler() : ValidationError("scaler must be fitted before transform") {}
};

class EmptySplit : public ValidationError {
public:
    using ValidationError::ValidationError;
};

inline const std::array<std::string_view, 6>& tweet_column_names() {
    static const std::array<std::string_view, 6> names = {
        "mean_compound", "tweet_count",  "sum_favorites",
        "sum_followers", "sum_retweets", "verified_ratio"};
    return names;
}

inline bool is_tweet_column(std::string_view name) {
    const auto& names = tweet_column_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

// Per-trading-day feature matrix. Columns are stored column-major; the
// first `branch1_cols` are the price+indicator block, the rest the tweet
// block. target[t] is the close of the following trading day.
struct FeatureTable {
    std::vector<Date> dates;
    std::vector<Date> target_dates;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::size_t branch1_cols = 0;
    std::vector<double> target;

    std::size_t rows() const { return dates.size(); }
    std::size_t cols() const { return columns.size(); }
    std::size_t tweet_cols() const { return cols() - branch1_cols; }

    const std::vector<double>& column(std::string_view name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return columns[i];
        throw ValidationError("no such feature column: " + std::string(name));
    }
};

struct AssembleOptions {
    bool tweet_features = true;      // include mean_compound
    bool attribute_features = true;  // include the count/ratio attribute columns
};

// Builds the aligned table. Tweet columns at row t carry the aggregate of
// the previous trading day; rows with undefined indicator values are
// dropped from the front; the final price row has no next-day close and is
// excluded.
inline FeatureTable assemble(const market_data::PriceSeries& prices,
                             const std::vector<indicators::IndicatorColumn>& indicator_cols,
                             const std::vector<tweet_store::AlignedDay>& aligned,
                             const AssembleOptions& opts = {}) {
    const std::size_t n = prices.size();
    for (const auto& col : indicator_cols)
        if (col.size() != n)
            throw CalendarMismatch("indicator \"" + col.name + "\" length " +
                                   std::to_string(col.size()) + " != series length " +
                                   std::to_string(n));
    if (opts.tweet_features || opts.attribute_features) {
        if (aligned.size() != n)
            throw CalendarMismatch("aligned aggregates length " +
                                   std::to_string(aligned.size()) + " != series length " +
                                   std::to_string(n));
        for (std::size_t i = 0; i < n; ++i)
            if (aligned[i].agg.date != prices[i].date)
                throw CalendarMismatch("aggregate date " + aligned[i].agg.date.to_string() +
                                       " != trading date " + prices[i].date.to_string());
    }

    std::size_t warmup = 0;
    for (const auto& col : indicator_cols) warmup = std::max(warmup, col.warmup);
    const std::size_t first = std::max<std::size_t>(warmup, 1);  // 1 for the tweet lag
    if (n < first + 2)
        throw TooFewRows("need at least " + std::to_string(first + 2) + " trading days, have " +
                         std::to_string(n));

    FeatureTable t;
    const std::size_t rows = n - first - 1;  // last price row has no target

    auto add_column = [&](std::string name, auto&& value_at) {
        std::vector<double> col(rows);
        for (std::size_t r = 0; r < rows; ++r) col[r] = value_at(first + r);
        t.names.push_back(std::move(name));
        t.columns.push_back(std::move(col));
    };

    add_column("open", [&](std::size_t i) { return prices[i].open; });
    add_column("high", [&](std::size_t i) { return prices[i].high; });
    add_column("low", [&](std::size_t i) { return prices[i].low; });
    add_column("close", [&](std::size_t i) { return prices[i].close; });
    add_column("volume", [&](std::size_t i) { return double(prices[i].volume); });
    for (const auto& col : indicator_cols)
        add_column(col.name, [&](std::size_t i) { return col.values[i]; });
    t.branch1_cols = t.columns.size();

    // Lag 1: the sentiment of day d-1 informs the features of day d.
    if (opts.tweet_features)
        add_column("mean_compound",
                   [&](std::size_t i) { return aligned[i - 1].agg.mean_compound; });
    if (opts.attribute_features) {
        add_column("tweet_count",
                   [&](std::size_t i) { return double(aligned[i - 1].agg.tweet_count); });
        add_column("sum_favorites",
                   [&](std::size_t i) { return double(aligned[i - 1].agg.sum_favorites); });
        add_column("sum_followers",
                   [&](std::size_t i) { return double(aligned[i - 1].agg.sum_followers); });
        add_column("sum_retweets",
                   [&](std::size_t i) { return double(aligned[i - 1].agg.sum_retweets); });
        add_column("verified_ratio",
                   [&](std::size_t i) { return aligned[i - 1].agg.verified_ratio; });
    }

    t.dates.resize(rows);
    t.target_dates.resize(rows);
    t.target.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        t.dates[r] = prices[first + r].date;
        t.target_dates[r] = prices[first + r + 1].date;
        t.target[r] = prices[first + r + 1].close;
    }
    return t;
}

enum class ScaleKind { none, minmax, standard, sigmoid_log };

inline std::string to_string(ScaleKind k) {
    switch (k) {
        case ScaleKind::none: return "none";
        case ScaleKind::minmax: return "minmax";
        case ScaleKind::standard: return "standard";
        case ScaleKind::sigmoid_log: return "sigmoid-log";
    }
    return "?";
}

inline ScaleKind scale_kind_from(std::string_view s) {
    if (s == "none") return ScaleKind::none;
    if (s == "minmax") return ScaleKind::minmax;
    if (s == "standard") return ScaleKind::standard;
    if (s == "sigmoid-log") return ScaleKind::sigmoid_log;
    throw ValidationError("unknown scale kind: " + std::string(s));
}

// minmax: a=min, b=max.  standard: a=mean, b=stddev.  sigmoid-log: a/b are
// mean/stddev of log(1+x). Degenerate columns (b collapses) map to the
// midpoint by convention.
struct ColumnScaler {
    ScaleKind kind = ScaleKind::minmax;
    double a = 0.0;
    double b = 0.0;

    double apply(double x) const {
        switch (kind) {
            case ScaleKind::none: return x;
            case ScaleKind::minmax: return a == b ? 0.5 : (x - a) / (b - a);
            case ScaleKind::standard: return b == 0.0 ? 0.0 : (x - a) / b;
            case ScaleKind::sigmoid_log: {
                const double z = b == 0.0 ? 0.0 : (std::log1p(x) - a) / b;
                return linalg::sigmoid(z);
            }
        }
        return x;
    }

    double invert(double y) const {
        switch (kind) {
            case ScaleKind::none: return y;
            case ScaleKind::minmax: return a == b ? a : a + y * (b - a);
            case ScaleKind::standard: return b == 0.0 ? a : a + y * b;
            case ScaleKind::sigmoid_log: {
                const double z = std::log(y / (1.0 - y));
                return std::expm1(a + z * b);
            }
        }
        return y;
    }
};

struct Scaler {
    std::vector<std::string> names;
    std::vector<ColumnScaler> columns;
    ColumnScaler target;
    bool fitted = false;
};

using ScaleChoices = std::map<std::string, ScaleKind, std::less<>>;

namespace detail {

inline ColumnScaler fit_column(const std::vector<double>& values, std::size_t train_rows,
                               ScaleKind kind) {
    ColumnScaler s;
    s.kind = kind;
    switch (kind) {
        case ScaleKind::none:
            break;
        case ScaleKind::minmax: {
            double lo = values[0], hi = values[0];
            for (std::size_t i = 0; i < train_rows; ++i) {
                lo = std::min(lo, values[i]);
                hi = std::max(hi, values[i]);
            }
            s.a = lo;
            s.b = hi;
            break;
        }
        case ScaleKind::standard:
        case ScaleKind::sigmoid_log: {
            double sum = 0.0;
            for (std::size_t i = 0; i < train_rows; ++i)
                sum += kind == ScaleKind::standard ? values[i] : std::log1p(values[i]);
            const double mean = sum / double(train_rows);
            double acc = 0.0;
            for (std::size_t i = 0; i < train_rows; ++i) {
                const double v =
                    kind == ScaleKind::standard ? values[i] : std::log1p(values[i]);
                acc += (v - mean) * (v - mean);
            }
            s.a = mean;
            s.b = std::sqrt(acc / double(train_rows));
            break;
        }
    }
    return s;
}

} // namespace detail

// Fit parameters come from the first `train_rows` rows only; nothing in
// the validation or test region can move them. The sentiment column is
// already in [-1, 1] and always passes through unscaled.
inline Scaler fit_scaler(const FeatureTable& table, std::size_t train_rows,
                         const ScaleChoices& choices = {}) {
    if (train_rows == 0) throw ValidationError("fit_scaler: empty training range");
    if (train_rows > table.rows())
        throw ValidationError("fit_scaler: training range exceeds table rows");

    Scaler s;
    s.names = table.names;
    ScaleKind target_kind = ScaleKind::minmax;
    for (std::size_t c = 0; c < table.cols(); ++c) {
        ScaleKind kind = ScaleKind::minmax;
        if (auto it = choices.find(table.names[c]); it != choices.end()) kind = it->second;
        if (table.names[c] == "mean_compound") kind = ScaleKind::none;
        if (table.names[c] == "close") target_kind = kind;
        s.columns.push_back(detail::fit_column(table.columns[c], train_rows, kind));
    }
    s.target = detail::fit_column(table.target, train_rows, target_kind);
    s.fitted = true;
    return s;
}

inline FeatureTable transform(const Scaler& scaler, const FeatureTable& table) {
    if (!scaler.fitted) throw UnfittedScaler();
    if (scaler.names != table.names)
        throw ValidationError("scaler was fitted on different columns");
    FeatureTable out = table;
    for (std::size_t c = 0; c < table.cols(); ++c)
        for (std::size_t r = 0; r < table.rows(); ++r)
            out.columns[c][r] = scaler.columns[c].apply(table.columns[c][r]);
    for (std::size_t r = 0; r < table.rows(); ++r)
        out.target[r] = scaler.target.apply(table.target[r]);
    return out;
}

// One training example: W consecutive rows split into the two branch
// inputs, labeled with the scaled next-day close after the window.
struct Example {
    Matrix x_price;
    Matrix x_tweet;
    double y = 0.0;
    Date target_date;
};

// Sliding windows, one example per stride step. When the table has no
// tweet columns the tweet branch still needs an input, so it receives a
// single all-zero column.
inline std::vector<Example> make_windows(const FeatureTable& table, std::size_t window,
                                         std::size_t stride = 1) {
    if (window < 1) throw ValidationError("window length must be >= 1");
    if (stride < 1) throw ValidationError("stride must be >= 1");
    if (table.rows() < window)
        throw TooFewRows("table has " + std::to_string(table.rows()) + " rows, window needs " +
                         std::to_string(window));

    const std::size_t count = (table.rows() - window) / stride + 1;
    const std::size_t tweet_cols = table.tweet_cols();
    std::vector<Example> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t begin = i * stride;
        Example ex;
        ex.x_price = Matrix(window, table.branch1_cols);
        ex.x_tweet = Matrix(window, std::max<std::size_t>(tweet_cols, 1));
        for (std::size_t t = 0; t < window; ++t) {
            for (std::size_t c = 0; c < table.branch1_cols; ++c)
                ex.x_price(t, c) = table.columns[c][begin + t];
            for (std::size_t c = 0; c < tweet_cols; ++c)
                ex.x_tweet(t, c) = table.columns[table.branch1_cols + c][begin + t];
        }
        const std::size_t last = begin + window - 1;
        ex.y = table.target[last];
        ex.target_date = table.target_dates[last];
        out.push_back(std::move(ex));
    }
    return out;
}

struct SplitFractions {
    double train = 0.63;
    double val = 0.07;
    double test = 0.30;
};

struct SplitSets {
    std::vector<Example> train, val, test;
};

// Chronological contiguous split with the test block most recent. Block
// boundaries sit at the floor of the cumulative fractions, so fractional
// remainders accrue to the training side. Train and validation are then
// shuffled in place when a seed is given; test order is preserved.
inline SplitSets split(std::vector<Example> examples, const SplitFractions& f,
                       std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
    if (f.train <= 0 || f.val <= 0 || f.test <= 0)
        throw ValidationError("split fractions must be positive");
    if (std::fabs(f.train + f.val + f.test - 1.0) > 1e-9)
        throw ValidationError("split fractions must sum to 1");

    const std::size_t n = examples.size();
    const auto train_end = std::size_t(std::floor(double(n) * f.train));
    const auto val_end = std::size_t(std::floor(double(n) * (f.train + f.val)));
    if (train_end == 0 || val_end == train_end || val_end == n)
        throw EmptySplit("split of " + std::to_string(n) + " examples leaves an empty block");

    SplitSets sets;
    sets.train.assign(examples.begin(), examples.begin() + train_end);
    sets.val.assign(examples.begin() + train_end, examples.begin() + val_end);
    sets.test.assign(examples.begin() + val_end, examples.end());

    if (shuffle_seed) {
        Rng rng(*shuffle_seed);
        rng.shuffle(sets.train);
        rng.shuffle(sets.val);
    }
    return sets;
}

// Number of leading table rows covered by the training example windows;
// this is the fit range for the scaler.
inline std::size_t train_row_count(std::size_t rows, std::size_t window, std::size_t stride,
                                   const SplitFractions& f) {
    if (rows < window) throw TooFewRows("fewer rows than window length");
    const std::size_t n = (rows - window) / stride + 1;
    const auto train_end = std::size_t(std::floor(double(n) * f.train));
    if (train_end == 0) throw EmptySplit("no training examples");
    return (train_end - 1) * stride + window;
}

// ---- serialization -------------------------------------------------------

inline std::string serialize_feature_csv(const FeatureTable& t) {
    std::string out = "date,target_date";
    for (const auto& n : t.names) {
        out += ',';
        out += n;
    }
    out += ",target\n";
    char buf[40];
    for (std::size_t r = 0; r < t.rows(); ++r) {
        out += t.dates[r].to_string();
        out += ',';
        out += t.target_dates[r].to_string();
        for (std::size_t c = 0; c < t.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), ",%.17g", t.columns[c][r]);
            out += buf;
        }
        std::snprintf(buf, sizeof(buf), ",%.17g\n", t.target[r]);
        out += buf;
    }
    return out;
}

inline FeatureTable parse_feature_csv(std::string_view text) {
    FeatureTable t;
    std::size_t pos = 0, line_no = 0;
    auto next_line = [&](std::string_view& out) -> bool {
        if (pos >= text.size()) return false;
        std::size_t nl = text.find('\n', pos);
        out = nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
        ++line_no;
        return true;
    };

    std::string_view header;
    if (!next_line(header)) throw ValidationError("feature CSV is empty");
    auto fields = market_data::detail::split_fields(header);
    if (fields.size() < 4 || fields[0] != "date" || fields[1] != "target_date" ||
        fields.back() != "target")
        throw ValidationError("feature CSV header must be date,target_date,...,target");
    for (std::size_t i = 2; i + 1 < fields.size(); ++i) t.names.emplace_back(fields[i]);
    t.columns.assign(t.names.size(), {});

    t.branch1_cols = t.names.size();
    for (std::size_t i = 0; i < t.names.size(); ++i) {
        if (is_tweet_column(t.names[i])) {
            t.branch1_cols = i;
            break;
        }
    }
    for (std::size_t i = t.branch1_cols; i < t.names.size(); ++i)
        if (!is_tweet_column(t.names[i]))
            throw ValidationError("tweet columns must form the trailing block");

    std::string_view line;
    while (next_line(line)) {
        if (line.empty()) continue;
        auto row = market_data::detail::split_fields(line);
        if (row.size() != t.names.size() + 3)
            throw ValidationError("feature CSV line " + std::to_string(line_no) +
                                  ": wrong field count");
        auto d = parse_date(row[0]);
        auto td = parse_date(row[1]);
        if (!d || !td)
            throw ValidationError("feature CSV line " + std::to_string(line_no) + ": bad date");
        t.dates.push_back(*d);
        t.target_dates.push_back(*td);
        for (std::size_t c = 0; c < t.names.size(); ++c)
            t.columns[c].push_back(std::strtod(std::string(row[2 + c]).c_str(), nullptr));
        t.target.push_back(std::strtod(std::string(row.back()).c_str(), nullptr));
    }
    return t;
}

// Key-value text; hexfloat parameters reproduce the fit bit-exactly.
inline std::string serialize_scaler(const Scaler& s) {
    if (!s.fitted) throw UnfittedScaler();
    std::string out = "stockcast-scaler 1\n";
    char buf[96];
    for (std::size_t c = 0; c < s.columns.size(); ++c) {
        std::snprintf(buf, sizeof(buf), "column %s %s %a %a\n", s.names[c].c_str(),
                      to_string(s.columns[c].kind).c_str(), s.columns[c].a, s.columns[c].b);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "target %s %a %a\n", to_string(s.target.kind).c_str(),
                  s.target.a, s.target.b);
    out += buf;
    return out;
}

inline Scaler parse_scaler(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "stockcast-scaler 1")
        throw ValidationError("unrecognized scaler file header");
    Scaler s;
    bool have_target = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        ColumnScaler cs;
        std::string kind, a, b;
        if (tag == "column") {
            std::string name;
            ls >> name >> kind >> a >> b;
            cs.kind = scale_kind_from(kind);
            cs.a = std::strtod(a.c_str(), nullptr);
            cs.b = std::strtod(b.c_str(), nullptr);
            s.names.push_back(name);
            s.columns.push_back(cs);
        } else if (tag == "target") {
            ls >> kind >> a >> b;
            cs.kind = scale_kind_from(kind);
            cs.a = std::strtod(a.c_str(), nullptr);
            cs.b = std::strtod(b.c_str(), nullptr);
            s.target = cs;
            have_target = true;
        } else {
            throw ValidationError("scaler file: unknown tag \"" + tag + "\"");
        }
    }
    if (!have_target) throw ValidationError("scaler file has no target entry");
    s.fitted = true;
    return s;
}

} // namespace stockcast::features
