#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "stockcast/error.hpp"
#include "stockcast/features.hpp"
#include "stockcast/neural.hpp"
#include "stockcast/rng.hpp"

namespace stockcast::trainer {

using features::Example;

struct TrainConfig {
    std::size_t epochs = 100;
    double learning_rate = 0.008;
    double decay = 0.97;  // per-epoch learning-rate multiplier
    std::size_t batch_size = 1;
    std::uint64_t seed = 0;
    double dropout_p = 0.2;
    std::size_t window = 7;
    double clip_norm = 5.0;

    void validate() const {
        if (epochs < 1) throw ValidationError("epochs must be >= 1");
        if (learning_rate <= 0) throw ValidationError("learning_rate must be positive");
        if (!(decay > 0 && decay <= 1)) throw ValidationError("decay must lie in (0, 1]");
        if (batch_size < 1) throw ValidationError("batch_size must be >= 1");
        if (!(dropout_p >= 0 && dropout_p < 1))
            throw ValidationError("dropout_p must lie in [0, 1)");
        if (window < 1) throw ValidationError("window must be >= 1");
    }
};

struct EpochRecord {
    std::size_t epoch = 0;  // 1-based
    double train_mse = 0.0;
    double val_mse = 0.0;
    double learning_rate_used = 0.0;
};

class LengthMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyInput : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Training hit a non-finite loss or gradient. Carries the last finite
// parameters so the caller keeps a usable checkpoint.
class Diverged : public RuntimeError {
public:
    Diverged(std::size_t epoch, neural::NetworkParams last_params,
             std::vector<EpochRecord> records)
        : RuntimeError("training diverged at epoch " + std::to_string(epoch)),
          epoch_(epoch),
          last_params_(std::move(last_params)),
          records_(std::move(records)) {}

    std::size_t epoch() const { return epoch_; }
    const neural::NetworkParams& last_params() const { return last_params_; }
    const std::vector<EpochRecord>& records() const { return records_; }

private:
    std::size_t epoch_;
    neural::NetworkParams last_params_;
    std::vector<EpochRecord> records_;
};

inline double mse(const std::vector<double>& predictions, const std::vector<double>& truths) {
    if (predictions.empty()) throw EmptyInput("mse: empty input");
    if (predictions.size() != truths.size())
        throw LengthMismatch("mse: " + std::to_string(predictions.size()) + " vs " +
                             std::to_string(truths.size()));
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double e = predictions[i] - truths[i];
        acc += e * e;
    }
    return acc / double(predictions.size());
}

namespace detail {

inline double dataset_mse(const neural::NetworkParams& params,
                          const std::vector<Example>& examples) {
    std::vector<double> preds, truths;
    preds.reserve(examples.size());
    truths.reserve(examples.size());
    for (const auto& ex : examples) {
        auto [pred, tape] = neural::forward(params, ex.x_price, ex.x_tweet,
                                            neural::Mode::eval, 0);
        preds.push_back(pred);
        truths.push_back(ex.y);
    }
    return mse(preds, truths);
}

} // namespace detail

struct TrainResult {
    neural::NetworkParams params;  // parameters of the best-validation epoch
    std::vector<EpochRecord> records;
    std::size_t best_epoch = 0;
};

// Per epoch: seeded shuffle, forward/backward/update example by example
// (or in accumulated batches), then the learning rate decays and train and
// validation MSE are recorded with dropout disabled. Returns the
// parameters of the epoch with the lowest validation MSE.
inline TrainResult train(const TrainConfig& config, neural::NetworkParams params,
                         std::vector<Example> train_set, const std::vector<Example>& val_set) {
    config.validate();
    if (train_set.empty()) throw EmptyInput("train: empty training set");
    if (val_set.empty()) throw EmptyInput("train: empty validation set");

    Rng master(config.seed);
    double lr = config.learning_rate;

    TrainResult result;
    result.params = params;
    double best_val = std::numeric_limits<double>::infinity();
    neural::NetworkParams last_finite = params;

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        master.shuffle(train_set);

        try {
            std::size_t i = 0;
            while (i < train_set.size()) {
                const std::size_t batch = std::min(config.batch_size, train_set.size() - i);
                neural::NetworkParams grads = neural::zeros_like(params);
                for (std::size_t k = 0; k < batch; ++k) {
                    const Example& ex = train_set[i + k];
                    auto [pred, tape] = neural::forward(params, ex.x_price, ex.x_tweet,
                                                        neural::Mode::train, master.next_u64());
                    const double d_loss = 2.0 * (pred - ex.y);
                    neural::accumulate(grads, neural::backward(tape, params, d_loss));
                }
                if (batch > 1) neural::scale(grads, 1.0 / double(batch));
                neural::sgd_update(params, grads, lr, config.clip_norm);
                i += batch;
            }
        } catch (const neural::NonFiniteGradient&) {
            throw Diverged(epoch, last_finite, result.records);
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.learning_rate_used = lr;
        rec.train_mse = detail::dataset_mse(params, train_set);
        rec.val_mse = detail::dataset_mse(params, val_set);
        if (!std::isfinite(rec.train_mse) || !std::isfinite(rec.val_mse))
            throw Diverged(epoch, last_finite, result.records);
        result.records.push_back(rec);
        last_finite = params;

        if (rec.val_mse < best_val) {
            best_val = rec.val_mse;
            result.params = params;
            result.best_epoch = epoch;
        }
        lr *= config.decay;
    }
    return result;
}

struct PredictionPoint {
    Date date;
    double truth = 0.0;
    double prediction = 0.0;
};

struct EvalResult {
    double mse = 0.0;  // in scaled space
    std::vector<PredictionPoint> series;
};

// Eval-mode forward over the test examples in their given (chronological)
// order. MSE is reported in scaled space; currency conversion is the
// caller's concern via the fitted scaler.
inline EvalResult evaluate(const neural::NetworkParams& params,
                           const std::vector<Example>& test_set) {
    if (test_set.empty()) throw EmptyInput("evaluate: empty test set");
    EvalResult result;
    std::vector<double> preds, truths;
    for (const auto& ex : test_set) {
        auto [pred, tape] = neural::forward(params, ex.x_price, ex.x_tweet,
                                            neural::Mode::eval, 0);
        result.series.push_back({ex.target_date, ex.y, pred});
        preds.push_back(pred);
        truths.push_back(ex.y);
    }
    result.mse = mse(preds, truths);
    return result;
}

} // namespace stockcast::trainer
