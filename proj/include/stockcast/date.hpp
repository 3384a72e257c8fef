#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "stockcast/error.hpp"

namespace stockcast {

// Calendar date, UTC, no time component. Thin wrapper over sys_days so
// ordering and day arithmetic stay cheap.
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::sys_days d) : days_(d) {}
    Date(int y, unsigned m, unsigned d)
        : days_(std::chrono::sys_days{std::chrono::year{y} / std::chrono::month{m} /
                                      std::chrono::day{d}}) {}

    std::chrono::sys_days days() const { return days_; }

    int year() const { return int(ymd().year()); }
    unsigned month() const { return unsigned(ymd().month()); }
    unsigned day() const { return unsigned(ymd().day()); }

    Date next_day() const { return Date{days_ + std::chrono::days{1}}; }

    auto operator<=>(const Date&) const = default;

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
        return buf;
    }

private:
    std::chrono::year_month_day ymd() const { return std::chrono::year_month_day{days_}; }

    std::chrono::sys_days days_{};
};

// UTC timestamp: calendar date plus seconds of day.
struct DateTime {
    Date date;
    std::int32_t seconds_of_day = 0;

    auto operator<=>(const DateTime&) const = default;

    std::string to_string() const {
        char buf[32];
        int h = seconds_of_day / 3600;
        int m = (seconds_of_day / 60) % 60;
        int s = seconds_of_day % 60;
        std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02dZ", date.to_string().c_str(), h, m, s);
        return buf;
    }
};

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

} // namespace detail

// Strict ISO-8601 `YYYY-MM-DD`. Returns nullopt on anything else,
// including calendar-invalid dates like 2021-02-30.
inline std::optional<Date> parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto y = s.substr(0, 4), m = s.substr(5, 2), d = s.substr(8, 2);
    if (!detail::all_digits(y) || !detail::all_digits(m) || !detail::all_digits(d))
        return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{detail::to_int(y)},
                                    std::chrono::month{unsigned(detail::to_int(m))},
                                    std::chrono::day{unsigned(detail::to_int(d))}};
    if (!ymd.ok()) return std::nullopt;
    return Date{std::chrono::sys_days{ymd}};
}

// ISO-8601 date or date+time: `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM:SS` (T or
// space separator), optional trailing `Z`. Fractional seconds rejected.
inline std::optional<DateTime> parse_datetime(std::string_view s) {
    if (s.size() == 10) {
        auto d = parse_date(s);
        if (!d) return std::nullopt;
        return DateTime{*d, 0};
    }
    if (s.size() != 19 && s.size() != 20) return std::nullopt;
    if (s.size() == 20) {
        if (s.back() != 'Z') return std::nullopt;
        s.remove_suffix(1);
    }
    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    auto d = parse_date(s.substr(0, 10));
    if (!d) return std::nullopt;
    auto hh = s.substr(11, 2), mm = s.substr(14, 2), ss = s.substr(17, 2);
    if (s[13] != ':' || s[16] != ':') return std::nullopt;
    if (!detail::all_digits(hh) || !detail::all_digits(mm) || !detail::all_digits(ss))
        return std::nullopt;
    int h = detail::to_int(hh), m = detail::to_int(mm), sec = detail::to_int(ss);
    if (h > 23 || m > 59 || sec > 59) return std::nullopt;
    return DateTime{*d, h * 3600 + m * 60 + sec};
}

} // namespace stockcast
