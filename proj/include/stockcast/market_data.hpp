#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "stockcast/date.hpp"
#include "stockcast/error.hpp"

namespace stockcast::market_data {

// One trading day in the Yahoo Finance daily-history layout.
struct PriceBar {
    Date date;
    double open = 0;
    double high = 0;
    double low = 0;
    double close = 0;
    double adj_close = 0;
    std::uint64_t volume = 0;

    bool operator==(const PriceBar&) const = default;
};

// Bars in strictly increasing date order, no duplicates.
struct PriceSeries {
    std::vector<PriceBar> bars;

    std::size_t size() const { return bars.size(); }
    bool empty() const { return bars.empty(); }
    const PriceBar& operator[](std::size_t i) const { return bars[i]; }

    std::vector<Date> dates() const {
        std::vector<Date> out;
        out.reserve(bars.size());
        for (const auto& b : bars) out.push_back(b.date);
        return out;
    }

    std::vector<double> closes() const {
        std::vector<double> out;
        out.reserve(bars.size());
        for (const auto& b : bars) out.push_back(b.close);
        return out;
    }

    bool operator==(const PriceSeries&) const = default;
};

class MalformedHeader : public ValidationError {
public:
    explicit MalformedHeader(const std::string& got)
        : ValidationError("malformed price CSV header: \"" + got + "\"") {}
};

class MalformedRow : public ValidationError {
public:
    MalformedRow(std::size_t line, const std::string& reason)
        : ValidationError("price CSV line " + std::to_string(line) + ": " + reason),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class OhlcViolation : public ValidationError {
public:
    explicit OhlcViolation(Date date)
        : ValidationError("OHLC bounds violated on " + date.to_string()), date_(date) {}
    Date date() const { return date_; }

private:
    Date date_;
};

class DuplicateDate : public ValidationError {
public:
    explicit DuplicateDate(Date date)
        : ValidationError("duplicate date " + date.to_string()), date_(date) {}
    Date date() const { return date_; }

private:
    Date date_;
};

class EmptyRange : public ValidationError {
public:
    using ValidationError::ValidationError;
};

namespace detail {

constexpr std::string_view kHeader = "Date,Open,High,Low,Close,Adj Close,Volume";

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

// Strict finite positive decimal. Currency symbols, thousands separators,
// inf/nan and trailing junk all fail; they signal a corrupt export.
inline double parse_price(std::string_view field, std::size_t line, const char* name) {
    if (field.empty())
        throw MalformedRow(line, std::string(name) + " is empty");
    for (char c : field) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
              c == '+' || c == 'e' || c == 'E'))
            throw MalformedRow(line, std::string(name) + " contains invalid character '" +
                                         std::string(1, c) + "'");
    }
    std::string buf(field);
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(v))
        throw MalformedRow(line, std::string(name) + " is not a valid number: \"" + buf + "\"");
    if (v <= 0)
        throw MalformedRow(line, std::string(name) + " must be positive");
    return v;
}

inline std::uint64_t parse_volume(std::string_view field, std::size_t line) {
    if (field.empty()) throw MalformedRow(line, "Volume is empty");
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || p != field.data() + field.size())
        throw MalformedRow(line, "Volume is not a non-negative integer: \"" +
                                     std::string(field) + "\"");
    return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

} // namespace detail

// Parses the Yahoo daily-history export. Rows may arrive in any order; the
// result is sorted ascending by date. Every defect is reported with its
// 1-based line number.
inline PriceSeries parse_price_csv(std::string_view text) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    PriceSeries series;

    auto next_line = [&](std::string_view& out) -> bool {
        if (pos >= text.size()) return false;
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            out = detail::strip_cr(text.substr(pos));
            pos = text.size();
        } else {
            out = detail::strip_cr(text.substr(pos, nl - pos));
            pos = nl + 1;
        }
        ++line_no;
        return true;
    };

    std::string_view header;
    if (!next_line(header) || header != detail::kHeader)
        throw MalformedHeader(std::string(header));

    std::string_view line;
    while (next_line(line)) {
        if (line.empty()) continue;
        auto fields = detail::split_fields(line);
        if (fields.size() != 7)
            throw MalformedRow(line_no, "expected 7 fields, got " +
                                            std::to_string(fields.size()));
        auto date = parse_date(fields[0]);
        if (!date)
            throw MalformedRow(line_no, "Date is not YYYY-MM-DD: \"" +
                                            std::string(fields[0]) + "\"");
        PriceBar bar;
        bar.date = *date;
        bar.open = detail::parse_price(fields[1], line_no, "Open");
        bar.high = detail::parse_price(fields[2], line_no, "High");
        bar.low = detail::parse_price(fields[3], line_no, "Low");
        bar.close = detail::parse_price(fields[4], line_no, "Close");
        bar.adj_close = detail::parse_price(fields[5], line_no, "Adj Close");
        bar.volume = detail::parse_volume(fields[6], line_no);

        if (bar.low > bar.high || bar.low > std::min(bar.open, bar.close) ||
            bar.high < std::max(bar.open, bar.close))
            throw OhlcViolation(bar.date);

        series.bars.push_back(bar);
    }

    std::stable_sort(series.bars.begin(), series.bars.end(),
                     [](const PriceBar& a, const PriceBar& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < series.bars.size(); ++i)
        if (series.bars[i].date == series.bars[i - 1].date)
            throw DuplicateDate(series.bars[i].date);
    return series;
}

// Round-trip companion to parse_price_csv; %.17g keeps doubles exact.
inline std::string serialize_price_csv(const PriceSeries& series) {
    std::string out{detail::kHeader};
    out += '\n';
    char buf[128];
    for (const auto& b : series.bars) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%llu\n",
                      b.date.to_string().c_str(), b.open, b.high, b.low, b.close,
                      b.adj_close, static_cast<unsigned long long>(b.volume));
        out += buf;
    }
    return out;
}

// Bars with start <= date <= end, order preserved.
inline PriceSeries slice_by_date(const PriceSeries& series, Date start, Date end) {
    if (start > end) throw ValidationError("slice_by_date: start > end");
    PriceSeries out;
    for (const auto& b : series.bars)
        if (b.date >= start && b.date <= end) out.bars.push_back(b);
    if (out.bars.empty())
        throw EmptyRange("no bars between " + start.to_string() + " and " + end.to_string());
    return out;
}

} // namespace stockcast::market_data
