#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "stockcast/error.hpp"
#include "stockcast/features.hpp"
#include "stockcast/io.hpp"
#include "stockcast/trainer.hpp"

namespace stockcast::config {

// Flat `key = value` text. '#' starts a comment; blank lines are ignored.
// Later assignments win, which is how CLI flag overrides are applied.
class KeyValues {
public:
    static KeyValues parse(std::string_view text) {
        KeyValues kv;
        std::size_t pos = 0, line_no = 0;
        while (pos < text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string_view line =
                nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
            pos = nl == std::string_view::npos ? text.size() : nl + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ValidationError("config line " + std::to_string(line_no) +
                                      ": expected key = value");
            std::string key(trim(line.substr(0, eq)));
            std::string value(trim(line.substr(eq + 1)));
            if (key.empty())
                throw ValidationError("config line " + std::to_string(line_no) + ": empty key");
            kv.values_[key] = value;
        }
        return kv;
    }

    static KeyValues from_file(const std::string& path) {
        return parse(io::read_file(path));
    }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        char* end = nullptr;
        const double v = std::strtod(it->second.c_str(), &end);
        if (end != it->second.c_str() + it->second.size())
            throw ValidationError("config key \"" + key + "\" is not a number: " + it->second);
        return v;
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t used = 0;
            const auto v = std::stoll(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ValidationError("config key \"" + key + "\" is not an integer: " + it->second);
        }
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        if (it->second == "true" || it->second == "1") return true;
        if (it->second == "false" || it->second == "0") return false;
        throw ValidationError("config key \"" + key + "\" is not a boolean: " + it->second);
    }

    const std::map<std::string, std::string>& all() const { return values_; }

    // Canonical text form, used for the run-manifest config hash.
    std::string canonical() const {
        std::string out;
        for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
        return out;
    }

private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    }

    std::map<std::string, std::string> values_;
};

// Everything one pipeline run needs, resolved from the config file plus
// flag overrides.
struct RunConfig {
    // inputs
    std::string prices_path;
    std::string tweets_path;
    std::string lexicon_path;

    // features
    std::size_t sma_window = 5;
    std::size_t boll_window = 20;
    double boll_mult = 2.0;
    std::size_t window = 7;
    std::size_t stride = 1;
    bool include_tweet_features = true;
    bool include_attribute_features = true;
    features::ScaleChoices scale_choices;
    features::SplitFractions split{0.63, 0.07, 0.30};

    // network
    std::size_t hidden = 200;
    std::size_t dense = 200;

    // training
    trainer::TrainConfig train;

    // collector
    std::string query;
    std::string transport = "script";  // script | http
    std::string script_path;
    std::string http_host;
    std::string http_path = "/search";
    int budget_limit = 180;
    std::int64_t budget_window_minutes = 15;
    int max_restarts = 3;
    std::int64_t backoff_ms = 1000;

    KeyValues raw;

    static RunConfig from(const KeyValues& kv) {
        RunConfig c;
        c.raw = kv;
        c.prices_path = kv.get("prices", "");
        c.tweets_path = kv.get("tweets", "");
        c.lexicon_path = kv.get("lexicon", "");

        c.sma_window = std::size_t(kv.get_int("sma_window", 5));
        c.boll_window = std::size_t(kv.get_int("boll_window", 20));
        c.boll_mult = kv.get_double("boll_mult", 2.0);
        c.window = std::size_t(kv.get_int("window", 7));
        c.stride = std::size_t(kv.get_int("stride", 1));
        c.include_tweet_features = kv.get_bool("include_tweet_features", true);
        c.include_attribute_features = kv.get_bool("include_attribute_features", true);
        for (const auto& [key, value] : kv.all())
            if (key.rfind("scale.", 0) == 0)
                c.scale_choices[key.substr(6)] = features::scale_kind_from(value);

        c.split.train = kv.get_double("split_train", 0.63);
        c.split.val = kv.get_double("split_val", 0.07);
        c.split.test = kv.get_double("split_test", 0.30);

        c.hidden = std::size_t(kv.get_int("hidden", 200));
        c.dense = std::size_t(kv.get_int("dense", 200));

        c.train.epochs = std::size_t(kv.get_int("epochs", 100));
        c.train.learning_rate = kv.get_double("learning_rate", 0.008);
        c.train.decay = kv.get_double("decay", 0.97);
        c.train.batch_size = std::size_t(kv.get_int("batch_size", 1));
        c.train.seed = std::uint64_t(kv.get_int("seed", 0));
        c.train.dropout_p = kv.get_double("dropout", 0.2);
        c.train.window = c.window;
        c.train.clip_norm = kv.get_double("clip_norm", 5.0);

        c.query = kv.get("query", "");
        c.transport = kv.get("transport", "script");
        c.script_path = kv.get("script", "");
        c.http_host = kv.get("http_host", "");
        c.http_path = kv.get("http_path", "/search");
        c.budget_limit = int(kv.get_int("budget_limit", 180));
        c.budget_window_minutes = kv.get_int("budget_window_minutes", 15);
        c.max_restarts = int(kv.get_int("max_restarts", 3));
        c.backoff_ms = kv.get_int("backoff_ms", 1000);
        return c;
    }
};

} // namespace stockcast::config
