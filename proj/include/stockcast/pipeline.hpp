#pragma once

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stockcast/collector.hpp"
#include "stockcast/config.hpp"
#include "stockcast/features.hpp"
#include "stockcast/indicators.hpp"
#include "stockcast/io.hpp"
#include "stockcast/market_data.hpp"
#include "stockcast/neural.hpp"
#include "stockcast/sentiment.hpp"
#include "stockcast/trainer.hpp"
#include "stockcast/tweet_store.hpp"

namespace stockcast::pipeline {

using config::RunConfig;

class MissingRun : public ValidationError {
public:
    explicit MissingRun(const std::string& dir)
        : ValidationError("run directory has no metrics: " + dir) {}
};

namespace detail {

inline void require_file(const std::string& path, const char* what) {
    if (path.empty())
        throw ValidationError(std::string(what) + " path is not configured");
    if (!std::filesystem::exists(path))
        throw ValidationError(std::string(what) + " file does not exist: " + path);
}

inline std::vector<tweet_store::AlignedDay> aligned_aggregates(const RunConfig& cfg,
                                                               const std::vector<Date>& dates) {
    require_file(cfg.tweets_path, "tweets");
    require_file(cfg.lexicon_path, "lexicon");
    const auto records =
        tweet_store::dedup_exact(tweet_store::parse_tweet_jsonl(io::read_file(cfg.tweets_path)));
    const auto lexicon = sentiment::load_lexicon(cfg.lexicon_path);
    std::vector<double> compounds;
    compounds.reserve(records.size());
    for (const auto& r : records)
        compounds.push_back(sentiment::score(r.text, lexicon).compound);
    const auto aggs = tweet_store::aggregate_daily(records, compounds);
    return tweet_store::align_to_trading_days(aggs, dates);
}

inline std::string format_csv_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

struct FeaturizeResult {
    std::size_t rows = 0;
    std::size_t feature_cols = 0;
    std::size_t train_rows = 0;
};

// Builds the scaled feature table and writes features.csv + scaler.params.
inline FeaturizeResult cmd_featurize(const RunConfig& cfg, const std::string& out_dir) {
    detail::require_file(cfg.prices_path, "prices");
    const auto prices = market_data::parse_price_csv(io::read_file(cfg.prices_path));

    std::vector<indicators::IndicatorColumn> cols;
    cols.push_back(indicators::sma(prices, cfg.sma_window));
    auto [mid, up, low] = indicators::bollinger(prices, cfg.boll_window, cfg.boll_mult);
    cols.push_back(mid);
    cols.push_back(up);
    cols.push_back(low);

    std::vector<tweet_store::AlignedDay> aligned;
    features::AssembleOptions opts;
    opts.tweet_features = cfg.include_tweet_features;
    opts.attribute_features = cfg.include_attribute_features;
    if (opts.tweet_features || opts.attribute_features)
        aligned = detail::aligned_aggregates(cfg, prices.dates());

    const auto table = features::assemble(prices, cols, aligned, opts);
    const std::size_t train_rows =
        features::train_row_count(table.rows(), cfg.window, cfg.stride, cfg.split);
    const auto scaler = features::fit_scaler(table, train_rows, cfg.scale_choices);
    const auto scaled = features::transform(scaler, table);

    std::filesystem::create_directories(out_dir);
    io::write_file(out_dir + "/features.csv", features::serialize_feature_csv(scaled));
    io::write_file(out_dir + "/scaler.params", features::serialize_scaler(scaler));
    return {scaled.rows(), scaled.cols(), train_rows};
}

struct TrainCmdResult {
    std::size_t best_epoch = 0;
    double best_val_mse = 0.0;
    std::size_t n_train = 0, n_val = 0, n_test = 0;
};

namespace detail {

inline std::string curve_csv(const std::vector<trainer::EpochRecord>& records) {
    std::string out = "epoch,train_mse,val_mse,lr\n";
    for (const auto& r : records) {
        out += std::to_string(r.epoch) + "," + format_csv_value(r.train_mse) + "," +
               format_csv_value(r.val_mse) + "," + format_csv_value(r.learning_rate_used) + "\n";
    }
    return out;
}

inline features::SplitSets derive_sets(const features::FeatureTable& table,
                                       const RunConfig& cfg) {
    auto examples = features::make_windows(table, cfg.window, cfg.stride);
    return features::split(std::move(examples), cfg.split, cfg.train.seed);
}

} // namespace detail

// Trains on the featurized table and writes checkpoint.txt, curve.csv and
// manifest.kv. On divergence the last finite checkpoint and partial curve
// are still written before the error propagates.
inline TrainCmdResult cmd_train(const RunConfig& cfg, const std::string& features_path,
                                const std::string& out_dir) {
    detail::require_file(features_path, "features");
    const std::string features_text = io::read_file(features_path);
    const auto table = features::parse_feature_csv(features_text);
    auto sets = detail::derive_sets(table, cfg);

    auto params = neural::init_network(table.branch1_cols,
                                       std::max<std::size_t>(table.tweet_cols(), 1), cfg.hidden,
                                       cfg.dense, cfg.train.dropout_p, cfg.train.seed);

    std::filesystem::create_directories(out_dir);
    trainer::TrainResult result;
    try {
        result = trainer::train(cfg.train, std::move(params), sets.train, sets.val);
    } catch (const trainer::Diverged& d) {
        neural::save_checkpoint(d.last_params(), out_dir + "/checkpoint.txt");
        io::write_file(out_dir + "/curve.csv", detail::curve_csv(d.records()));
        throw;
    }

    neural::save_checkpoint(result.params, out_dir + "/checkpoint.txt");
    io::write_file(out_dir + "/curve.csv", detail::curve_csv(result.records));

    double best_val = result.records.empty() ? 0.0 : result.records.front().val_mse;
    for (const auto& r : result.records)
        if (r.epoch == result.best_epoch) best_val = r.val_mse;

    std::string manifest = "stockcast-manifest 1\n";
    manifest += "config_hash " + io::hash_hex(cfg.raw.canonical()) + "\n";
    manifest += "features_hash " + io::hash_hex(features_text) + "\n";
    manifest += "seed " + std::to_string(cfg.train.seed) + "\n";
    manifest += "rows " + std::to_string(table.rows()) + "\n";
    manifest += "feature_cols " + std::to_string(table.cols()) + "\n";
    manifest += "examples_train " + std::to_string(sets.train.size()) + "\n";
    manifest += "examples_val " + std::to_string(sets.val.size()) + "\n";
    manifest += "examples_test " + std::to_string(sets.test.size()) + "\n";
    manifest += "best_epoch " + std::to_string(result.best_epoch) + "\n";
    manifest += "best_val_mse " + detail::format_csv_value(best_val) + "\n";
    io::write_file(out_dir + "/manifest.kv", manifest);

    return {result.best_epoch, best_val, sets.train.size(), sets.val.size(), sets.test.size()};
}

struct EvaluateCmdResult {
    double test_mse_scaled = 0.0;
    double test_mse_currency = 0.0;
    std::size_t n_test = 0;
};

// Evaluates the checkpoint on the test block and writes the prediction
// series in both scaled and currency units plus metrics.kv.
inline EvaluateCmdResult cmd_evaluate(const RunConfig& cfg, const std::string& features_path,
                                      const std::string& scaler_path,
                                      const std::string& checkpoint_path,
                                      const std::string& out_dir) {
    detail::require_file(features_path, "features");
    detail::require_file(scaler_path, "scaler");
    detail::require_file(checkpoint_path, "checkpoint");

    const auto table = features::parse_feature_csv(io::read_file(features_path));
    auto sets = detail::derive_sets(table, cfg);
    const auto params = neural::load_checkpoint(checkpoint_path);
    const auto scaler = features::parse_scaler(io::read_file(scaler_path));

    const auto eval = trainer::evaluate(params, sets.test);

    std::string scaled_csv = "date,truth,prediction\n";
    std::string currency_csv = "date,truth,prediction\n";
    std::vector<double> cur_pred, cur_truth;
    for (const auto& p : eval.series) {
        scaled_csv += p.date.to_string() + "," + detail::format_csv_value(p.truth) + "," +
                      detail::format_csv_value(p.prediction) + "\n";
        const double truth_c = scaler.target.invert(p.truth);
        const double pred_c = scaler.target.invert(p.prediction);
        currency_csv += p.date.to_string() + "," + detail::format_csv_value(truth_c) + "," +
                        detail::format_csv_value(pred_c) + "\n";
        cur_truth.push_back(truth_c);
        cur_pred.push_back(pred_c);
    }
    const double mse_currency = trainer::mse(cur_pred, cur_truth);

    std::filesystem::create_directories(out_dir);
    io::write_file(out_dir + "/predictions_scaled.csv", scaled_csv);
    io::write_file(out_dir + "/predictions_currency.csv", currency_csv);
    std::string metrics = "stockcast-metrics 1\n";
    metrics += "test_mse_scaled " + detail::format_csv_value(eval.mse) + "\n";
    metrics += "test_mse_currency " + detail::format_csv_value(mse_currency) + "\n";
    metrics += "n_test " + std::to_string(eval.series.size()) + "\n";
    io::write_file(out_dir + "/metrics.kv", metrics);

    return {eval.mse, mse_currency, eval.series.size()};
}

struct Prediction {
    Date date;
    double scaled = 0.0;
    double currency = 0.0;
};

// Next-day estimate from the most recent window in the feature file.
inline Prediction cmd_predict(const RunConfig& cfg, const std::string& features_path,
                              const std::string& scaler_path,
                              const std::string& checkpoint_path) {
    detail::require_file(features_path, "features");
    detail::require_file(scaler_path, "scaler");
    detail::require_file(checkpoint_path, "checkpoint");

    const auto table = features::parse_feature_csv(io::read_file(features_path));
    const auto examples = features::make_windows(table, cfg.window, cfg.stride);
    const auto params = neural::load_checkpoint(checkpoint_path);
    const auto scaler = features::parse_scaler(io::read_file(scaler_path));

    const auto& last = examples.back();
    auto [pred, tape] =
        neural::forward(params, last.x_price, last.x_tweet, neural::Mode::eval, 0);
    return {last.target_date, pred, scaler.target.invert(pred)};
}

struct CollectCmdResult {
    std::int64_t pages = 0;
    std::int64_t records = 0;
    bool completed = false;
};

// Collection loop against an injected transport. Output and state files
// live in out_dir so an interrupted run resumes at its cursor.
inline CollectCmdResult run_collect(const RunConfig& cfg, const std::string& out_dir,
                                    collector::SearchTransport& transport,
                                    collector::Clock& clock) {
    std::filesystem::create_directories(out_dir);
    const std::string state_path = out_dir + "/collector.state";
    const std::string sink_path = out_dir + "/tweets.jsonl";

    collector::CollectorState state;
    if (auto resumed = collector::FileStateStore::load(state_path)) state = *resumed;

    collector::RateBudget budget;
    budget.limit = cfg.budget_limit;
    budget.window = std::chrono::minutes(cfg.budget_window_minutes);

    collector::JsonlFileSink sink(sink_path);
    collector::FileStateStore store(state_path);
    state = collector::supervise(transport, cfg.query, std::move(state), budget, sink, store,
                                 clock, cfg.max_restarts,
                                 collector::Duration{cfg.backoff_ms});
    return {state.pages_fetched, state.records_written, state.completed};
}

// Script-transport entry point; the CLI wires up the HTTP adapter itself.
inline CollectCmdResult cmd_collect(const RunConfig& cfg, const std::string& out_dir) {
    if (cfg.transport != "script")
        throw ValidationError("cmd_collect handles transport=script; got " + cfg.transport);
    detail::require_file(cfg.script_path, "transport script");
    auto transport = collector::ScriptedTransport::from_file(cfg.script_path);
    collector::SimClock clock;
    return run_collect(cfg, out_dir, transport, clock);
}

struct Comparison {
    double mse_a = 0.0;
    double mse_b = 0.0;
    double delta_abs = 0.0;
    double delta_pct = 0.0;
};

namespace detail {

inline double read_metric(const std::string& dir, const std::string& key) {
    const std::string path = dir + "/metrics.kv";
    if (!std::filesystem::exists(path)) throw MissingRun(dir);
    std::istringstream in(io::read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + " ", 0) == 0)
            return std::strtod(line.c_str() + key.size() + 1, nullptr);
    }
    throw MissingRun(dir);
}

} // namespace detail

// Test-MSE comparison of two evaluated runs; delta_pct is relative to run A.
inline Comparison cmd_compare(const std::string& run_a, const std::string& run_b) {
    Comparison c;
    c.mse_a = detail::read_metric(run_a, "test_mse_scaled");
    c.mse_b = detail::read_metric(run_b, "test_mse_scaled");
    c.delta_abs = c.mse_b - c.mse_a;
    c.delta_pct = c.mse_a == 0.0 ? 0.0 : 100.0 * c.delta_abs / c.mse_a;
    return c;
}

// Scores a JSONL post file; one `date,compound` row per post.
inline std::size_t cmd_score_file(const RunConfig& cfg, const std::string& out_path) {
    detail::require_file(cfg.tweets_path, "tweets");
    detail::require_file(cfg.lexicon_path, "lexicon");
    const auto records = tweet_store::parse_tweet_jsonl(io::read_file(cfg.tweets_path));
    const auto lexicon = sentiment::load_lexicon(cfg.lexicon_path);
    std::string out = "date,compound\n";
    for (const auto& r : records) {
        const auto s = sentiment::score(r.text, lexicon);
        out += r.created_at.date.to_string() + "," + detail::format_csv_value(s.compound) + "\n";
    }
    io::write_file(out_path, out);
    return records.size();
}

} // namespace stockcast::pipeline
