#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "stockcast/date.hpp"
#include "stockcast/error.hpp"

namespace stockcast::tweet_store {

// One post and the attributes the pipeline extracts from it.
struct TweetRecord {
    DateTime created_at;
    std::string text;
    std::int64_t favorite_count = 0;
    std::int64_t follower_count = 0;
    std::int64_t retweet_count = 0;
    bool verified = false;

    bool operator==(const TweetRecord&) const = default;
};

// Per-calendar-day reduction of TweetRecords.
struct DailyAggregate {
    Date date;
    std::int64_t tweet_count = 0;
    double mean_compound = 0.0;
    std::int64_t sum_favorites = 0;
    std::int64_t sum_followers = 0;
    std::int64_t sum_retweets = 0;
    double verified_ratio = 0.0;

    bool operator==(const DailyAggregate&) const = default;
};

// One trading day after alignment; `missing` marks days no post data
// reached (the zero aggregate is reported, never interpolated).
struct AlignedDay {
    DailyAggregate agg;
    bool missing = false;
};

class MalformedLine : public ValidationError {
public:
    MalformedLine(std::size_t line, const std::string& reason)
        : ValidationError("tweets line " + std::to_string(line) + ": " + reason),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class MissingField : public ValidationError {
public:
    MissingField(std::size_t line, const std::string& name)
        : ValidationError("tweets line " + std::to_string(line) + ": missing field \"" +
                          name + "\""),
          name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class NegativeCount : public ValidationError {
public:
    NegativeCount(std::size_t line, const std::string& field)
        : ValidationError("tweets line " + std::to_string(line) + ": field \"" + field +
                          "\" is negative"),
          field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class LengthMismatch : public ValidationError {
public:
    LengthMismatch(std::size_t records, std::size_t scores)
        : ValidationError("aggregate_daily: " + std::to_string(records) + " records vs " +
                          std::to_string(scores) + " scores") {}
};

namespace detail {

constexpr std::size_t kMaxTextCodePoints = 10000;

inline std::size_t utf8_code_points(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    return n;
}

inline bool blank(std::string_view s) {
    return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

inline std::int64_t get_count(const nlohmann::json& obj, const char* name, std::size_t line) {
    if (!obj.contains(name)) throw MissingField(line, name);
    const auto& v = obj.at(name);
    if (!v.is_number_integer())
        throw MalformedLine(line, std::string("field \"") + name + "\" is not an integer");
    const auto n = v.get<std::int64_t>();
    if (n < 0) throw NegativeCount(line, name);
    return n;
}

} // namespace detail

// One JSON object per line with fields created_at, text, favorite_count,
// follower_count, retweet_count, verified. Unknown fields are ignored.
inline std::vector<TweetRecord> parse_tweet_jsonl(std::string_view text) {
    std::vector<TweetRecord> records;
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (detail::blank(line)) continue;

        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw MalformedLine(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object()) throw MalformedLine(line_no, "not a JSON object");

        TweetRecord rec;
        if (!obj.contains("created_at")) throw MissingField(line_no, "created_at");
        if (!obj.at("created_at").is_string())
            throw MalformedLine(line_no, "created_at is not a string");
        auto dt = parse_datetime(obj.at("created_at").get<std::string>());
        if (!dt) throw MalformedLine(line_no, "created_at is not an ISO-8601 timestamp");
        rec.created_at = *dt;

        if (!obj.contains("text")) throw MissingField(line_no, "text");
        if (!obj.at("text").is_string()) throw MalformedLine(line_no, "text is not a string");
        rec.text = obj.at("text").get<std::string>();
        if (detail::blank(rec.text)) throw MalformedLine(line_no, "text is empty");
        if (detail::utf8_code_points(rec.text) > detail::kMaxTextCodePoints)
            throw MalformedLine(line_no, "text exceeds 10000 code points");

        rec.favorite_count = detail::get_count(obj, "favorite_count", line_no);
        rec.follower_count = detail::get_count(obj, "follower_count", line_no);
        rec.retweet_count = detail::get_count(obj, "retweet_count", line_no);

        if (!obj.contains("verified")) throw MissingField(line_no, "verified");
        if (!obj.at("verified").is_boolean())
            throw MalformedLine(line_no, "verified is not a boolean");
        rec.verified = obj.at("verified").get<bool>();

        records.push_back(std::move(rec));
    }
    return records;
}

inline std::string to_jsonl_line(const TweetRecord& rec) {
    nlohmann::json obj{{"created_at", rec.created_at.to_string()},
                       {"text", rec.text},
                       {"favorite_count", rec.favorite_count},
                       {"follower_count", rec.follower_count},
                       {"retweet_count", rec.retweet_count},
                       {"verified", rec.verified}};
    return obj.dump();
}

// Drops records that are byte-identical in every field, keeping the first
// occurrence. Restart replays from the collector duplicate whole pages, so
// exact equality is sufficient.
inline std::vector<TweetRecord> dedup_exact(const std::vector<TweetRecord>& records) {
    std::vector<TweetRecord> out;
    std::set<std::tuple<DateTime, std::string, std::int64_t, std::int64_t, std::int64_t, bool>>
        seen;
    for (const auto& r : records) {
        auto key = std::make_tuple(r.created_at, r.text, r.favorite_count, r.follower_count,
                                   r.retweet_count, r.verified);
        if (seen.insert(key).second) out.push_back(r);
    }
    return out;
}

// Groups by UTC calendar date. `scores` is parallel to `records`, one
// compound score per record.
inline std::vector<DailyAggregate> aggregate_daily(const std::vector<TweetRecord>& records,
                                                   const std::vector<double>& scores) {
    if (records.size() != scores.size()) throw LengthMismatch(records.size(), scores.size());
    for (double s : scores)
        if (!(s >= -1.0 && s <= 1.0))
            throw ValidationError("compound score outside [-1, 1]");

    struct Acc {
        std::int64_t count = 0;
        double compound_sum = 0.0;
        std::int64_t favorites = 0, followers = 0, retweets = 0, verified = 0;
    };
    std::map<Date, Acc> groups;
    for (std::size_t i = 0; i < records.size(); ++i) {
        Acc& a = groups[records[i].created_at.date];
        a.count += 1;
        a.compound_sum += scores[i];
        a.favorites += records[i].favorite_count;
        a.followers += records[i].follower_count;
        a.retweets += records[i].retweet_count;
        a.verified += records[i].verified ? 1 : 0;
    }

    std::vector<DailyAggregate> out;
    out.reserve(groups.size());
    for (const auto& [date, a] : groups) {
        DailyAggregate d;
        d.date = date;
        d.tweet_count = a.count;
        d.mean_compound = a.compound_sum / double(a.count);
        d.sum_favorites = a.favorites;
        d.sum_followers = a.followers;
        d.sum_retweets = a.retweets;
        d.verified_ratio = double(a.verified) / double(a.count);
        out.push_back(d);
    }
    return out;
}

// Folds each non-trading day's aggregate into the NEXT trading day: weekend
// and holiday posts influence the following session. Trading days that
// receive no data yield the zero aggregate, flagged missing. Aggregates
// dated after the final trading day belong to a session outside the
// calendar and are dropped.
inline std::vector<AlignedDay> align_to_trading_days(const std::vector<DailyAggregate>& aggs,
                                                     const std::vector<Date>& trading_dates) {
    for (std::size_t i = 1; i < trading_dates.size(); ++i)
        if (!(trading_dates[i - 1] < trading_dates[i]))
            throw ValidationError("trading dates must be strictly increasing");

    struct Acc {
        std::int64_t count = 0;
        double weighted_compound = 0.0;
        std::int64_t favorites = 0, followers = 0, retweets = 0, verified = 0;
        bool touched = false;
    };
    std::vector<Acc> accs(trading_dates.size());

    for (const auto& a : aggs) {
        auto it = std::lower_bound(trading_dates.begin(), trading_dates.end(), a.date);
        if (it == trading_dates.end()) continue;
        Acc& acc = accs[std::size_t(it - trading_dates.begin())];
        acc.touched = true;
        acc.count += a.tweet_count;
        acc.weighted_compound += a.mean_compound * double(a.tweet_count);
        acc.favorites += a.sum_favorites;
        acc.followers += a.sum_followers;
        acc.retweets += a.sum_retweets;
        acc.verified += std::llround(a.verified_ratio * double(a.tweet_count));
    }

    std::vector<AlignedDay> out(trading_dates.size());
    for (std::size_t i = 0; i < trading_dates.size(); ++i) {
        const Acc& acc = accs[i];
        AlignedDay& day = out[i];
        day.agg.date = trading_dates[i];
        day.missing = !acc.touched;
        if (acc.count > 0) {
            day.agg.tweet_count = acc.count;
            day.agg.mean_compound = acc.weighted_compound / double(acc.count);
            day.agg.sum_favorites = acc.favorites;
            day.agg.sum_followers = acc.followers;
            day.agg.sum_retweets = acc.retweets;
            day.agg.verified_ratio = double(acc.verified) / double(acc.count);
        }
    }
    return out;
}

} // namespace stockcast::tweet_store
