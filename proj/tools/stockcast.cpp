// Command-line front end wiring the pipeline: featurize, train, evaluate,
// predict, collect, compare, score-file.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stockcast/config.hpp"
#include "stockcast/http_transport.hpp"
#include "stockcast/pipeline.hpp"

namespace {

using stockcast::ValidationError;
namespace fs = std::filesystem;

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d%02d%02d-%02d%02d%02d", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

// One directory per run. An explicit --out must be fresh (collect may
// reuse its directory: that is how a run resumes). Default directories are
// timestamped under ./runs and never collide.
std::string resolve_out_dir(const std::string& flag, const std::string& command,
                            bool allow_existing) {
    if (!flag.empty()) {
        if (fs::exists(flag) && !fs::is_directory(flag))
            throw ValidationError("output path exists and is not a directory: " + flag);
        if (!allow_existing && fs::exists(flag) && !fs::is_empty(flag))
            throw ValidationError("output directory already exists and is not empty: " + flag);
        fs::create_directories(flag);
        return flag;
    }
    const std::string base = "runs/" + command + "-" + timestamp_utc();
    std::string dir = base;
    for (int i = 2; fs::exists(dir); ++i) dir = base + "-" + std::to_string(i);
    fs::create_directories(dir);
    return dir;
}

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    std::vector<std::string> overrides;

    stockcast::config::RunConfig resolve() const {
        stockcast::config::KeyValues kv;
        if (!config_path.empty()) kv = stockcast::config::KeyValues::from_file(config_path);
        for (const auto& ov : overrides) {
            const auto eq = ov.find('=');
            if (eq == std::string::npos)
                throw ValidationError("--set expects KEY=VALUE, got: " + ov);
            kv.set(ov.substr(0, eq), ov.substr(eq + 1));
        }
        if (seed >= 0) kv.set("seed", std::to_string(seed));
        return stockcast::config::RunConfig::from(kv);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stockcast: next-day stock close forecasting from prices, "
                 "technical indicators and post sentiment"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalArgs args;
    app.add_option("--config", args.config_path, "key = value configuration file");
    app.add_option("--seed", args.seed, "override the configured RNG seed");
    app.add_option("--out", args.out_dir, "output directory (must not already hold a run)");
    app.add_option("--set", args.overrides, "override a config key, KEY=VALUE (repeatable)");

    auto* featurize = app.add_subcommand("featurize", "build features.csv and scaler.params");

    std::string features_path, scaler_path, checkpoint_path;
    auto* train = app.add_subcommand("train", "train the network on a featurized table");
    train->add_option("--features", features_path, "features.csv from featurize")->required();

    auto* evaluate = app.add_subcommand("evaluate", "test-set evaluation of a checkpoint");
    evaluate->add_option("--features", features_path, "features.csv")->required();
    evaluate->add_option("--scaler", scaler_path, "scaler.params")->required();
    evaluate->add_option("--checkpoint", checkpoint_path, "checkpoint.txt")->required();

    auto* predict = app.add_subcommand("predict", "next-day estimate from the latest window");
    predict->add_option("--features", features_path, "features.csv")->required();
    predict->add_option("--scaler", scaler_path, "scaler.params")->required();
    predict->add_option("--checkpoint", checkpoint_path, "checkpoint.txt")->required();

    auto* collect = app.add_subcommand("collect", "run the rate-limited post collector");

    std::string run_a, run_b;
    auto* compare = app.add_subcommand("compare", "compare the test MSE of two evaluated runs");
    compare->add_option("run_a", run_a, "first evaluated run directory")->required();
    compare->add_option("run_b", run_b, "second evaluated run directory")->required();

    auto* score_file = app.add_subcommand("score-file",
                                          "score a JSONL post file into date,compound CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // bad flags are a validation failure
    }

    try {
        const auto cfg = args.resolve();

        if (featurize->parsed()) {
            const auto out = resolve_out_dir(args.out_dir, "featurize", false);
            const auto r = stockcast::pipeline::cmd_featurize(cfg, out);
            std::cout << "featurized " << r.rows << " rows x " << r.feature_cols
                      << " feature columns (train region: " << r.train_rows << " rows)\n"
                      << "wrote " << out << "/features.csv and " << out << "/scaler.params\n";
        } else if (train->parsed()) {
            const auto out = resolve_out_dir(args.out_dir, "train", false);
            const auto r = stockcast::pipeline::cmd_train(cfg, features_path, out);
            std::cout << "trained " << cfg.train.epochs << " epochs; best epoch "
                      << r.best_epoch << " (val MSE " << r.best_val_mse << ")\n"
                      << "split " << r.n_train << "/" << r.n_val << "/" << r.n_test
                      << " examples\n"
                      << "wrote " << out << "/checkpoint.txt, curve.csv, manifest.kv\n";
        } else if (evaluate->parsed()) {
            const auto out = resolve_out_dir(args.out_dir, "evaluate", false);
            const auto r = stockcast::pipeline::cmd_evaluate(cfg, features_path, scaler_path,
                                                             checkpoint_path, out);
            std::cout << "test MSE (scaled): " << r.test_mse_scaled
                      << "   test MSE (currency): " << r.test_mse_currency << "   n="
                      << r.n_test << "\n"
                      << "wrote " << out << "/predictions_scaled.csv, "
                      << "predictions_currency.csv, metrics.kv\n";
        } else if (predict->parsed()) {
            const auto r = stockcast::pipeline::cmd_predict(cfg, features_path, scaler_path,
                                                            checkpoint_path);
            std::cout << r.date.to_string() << " predicted close: " << r.currency
                      << " (scaled " << r.scaled << ")\n";
        } else if (collect->parsed()) {
            const auto out = resolve_out_dir(args.out_dir, "collect", true);
            stockcast::pipeline::CollectCmdResult r;
            if (cfg.transport == "http") {
                if (cfg.http_host.empty())
                    throw ValidationError("transport=http requires http_host");
                stockcast::collector::HttpSearchTransport transport(cfg.http_host,
                                                                    cfg.http_path);
                stockcast::collector::SteadyClock clock;
                r = stockcast::pipeline::run_collect(cfg, out, transport, clock);
            } else {
                r = stockcast::pipeline::cmd_collect(cfg, out);
            }
            std::cout << "collected " << r.records << " records over " << r.pages
                      << " pages into " << out << "/tweets.jsonl\n";
        } else if (compare->parsed()) {
            const auto r = stockcast::pipeline::cmd_compare(run_a, run_b);
            char line[160];
            std::snprintf(line, sizeof(line),
                          "test MSE A: %.6g\ntest MSE B: %.6g\ndelta: %+.6g (%+.1f%%)\n",
                          r.mse_a, r.mse_b, r.delta_abs, r.delta_pct);
            std::cout << line;
            if (!args.out_dir.empty()) {
                fs::create_directories(args.out_dir);
                stockcast::io::write_file(args.out_dir + "/comparison.txt", line);
            }
        } else if (score_file->parsed()) {
            const auto out = resolve_out_dir(args.out_dir, "score", false);
            const auto n = stockcast::pipeline::cmd_score_file(cfg, out + "/scores.csv");
            std::cout << "scored " << n << " posts into " << out << "/scores.csv\n";
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
