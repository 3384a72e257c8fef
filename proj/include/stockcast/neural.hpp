#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stockcast/error.hpp"
#include "stockcast/linalg.hpp"
#include "stockcast/rng.hpp"

namespace stockcast::neural {

using linalg::Matrix;
using linalg::Vector;

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class StaleTape : public ValidationError {
public:
    StaleTape() : ValidationError("tape does not match network shape") {}
};

class NonFiniteGradient : public RuntimeError {
public:
    NonFiniteGradient() : RuntimeError("gradient contains non-finite values") {}
};

// Gate weights act on the concatenation [h_prev, x_t]; each maps it to the
// hidden size.
struct LstmCellParams {
    std::size_t hidden = 0;
    std::size_t input = 0;
    Matrix w_forget, w_input, w_cell, w_output;  // hidden x (hidden + input)
    Vector b_forget, b_input, b_cell, b_output;

    bool operator==(const LstmCellParams&) const = default;
};

struct DenseParams {
    Matrix w;
    Vector b;

    bool operator==(const DenseParams&) const = default;
};

// The dual-branch network: one LSTM per input family, a merge LSTM over
// their per-step concatenated hidden sequences, then three dense layers
// with inverted dropout after the first two.
struct NetworkParams {
    LstmCellParams branch1, branch2, merge;
    DenseParams dense1, dense2, dense_out;
    double dropout_p = 0.2;

    std::size_t price_features() const { return branch1.input; }
    std::size_t tweet_features() const { return branch2.input; }
    std::size_t hidden() const { return branch1.hidden; }
    std::size_t dense_width() const { return dense1.w.rows; }

    bool operator==(const NetworkParams&) const = default;
};

namespace detail {

inline LstmCellParams make_cell(std::size_t hidden, std::size_t input) {
    LstmCellParams c;
    c.hidden = hidden;
    c.input = input;
    const std::size_t in = hidden + input;
    c.w_forget = c.w_input = c.w_cell = c.w_output = Matrix(hidden, in);
    c.b_forget = c.b_input = c.b_cell = c.b_output = Vector(hidden, 0.0);
    return c;
}

inline void glorot_fill(Matrix& w, Rng& rng) {
    const double bound = std::sqrt(6.0 / double(w.rows + w.cols));
    for (double& v : w.data) v = rng.next_in(-bound, bound);
}

inline void init_cell(LstmCellParams& c, Rng& rng) {
    glorot_fill(c.w_forget, rng);
    glorot_fill(c.w_input, rng);
    glorot_fill(c.w_cell, rng);
    glorot_fill(c.w_output, rng);
    // Forget-gate bias starts at 1 so early training retains cell state.
    for (double& v : c.b_forget) v = 1.0;
}

template <typename Fn>
void for_each_tensor(NetworkParams& p, Fn&& fn) {
    for (LstmCellParams* c : {&p.branch1, &p.branch2, &p.merge}) {
        fn(c->w_forget.data);
        fn(c->w_input.data);
        fn(c->w_cell.data);
        fn(c->w_output.data);
        fn(c->b_forget);
        fn(c->b_input);
        fn(c->b_cell);
        fn(c->b_output);
    }
    for (DenseParams* d : {&p.dense1, &p.dense2, &p.dense_out}) {
        fn(d->w.data);
        fn(d->b);
    }
}

template <typename Fn>
void for_each_tensor(const NetworkParams& p, Fn&& fn) {
    for_each_tensor(const_cast<NetworkParams&>(p),
                    [&fn](std::vector<double>& v) { fn(std::as_const(v)); });
}

} // namespace detail

inline NetworkParams init_network(std::size_t price_features, std::size_t tweet_features,
                                  std::size_t hidden, std::size_t dense, double dropout_p,
                                  std::uint64_t seed) {
    if (hidden == 0 || dense == 0 || price_features == 0 || tweet_features == 0)
        throw DimensionMismatch("network dimensions must be positive");
    if (!(dropout_p >= 0.0 && dropout_p < 1.0))
        throw ValidationError("dropout_p must lie in [0, 1)");

    NetworkParams p;
    p.dropout_p = dropout_p;
    p.branch1 = detail::make_cell(hidden, price_features);
    p.branch2 = detail::make_cell(hidden, tweet_features);
    p.merge = detail::make_cell(hidden, 2 * hidden);
    p.dense1 = {Matrix(dense, hidden), Vector(dense, 0.0)};
    p.dense2 = {Matrix(dense, dense), Vector(dense, 0.0)};
    p.dense_out = {Matrix(1, dense), Vector(1, 0.0)};

    Rng rng(seed);
    detail::init_cell(p.branch1, rng);
    detail::init_cell(p.branch2, rng);
    detail::init_cell(p.merge, rng);
    detail::glorot_fill(p.dense1.w, rng);
    detail::glorot_fill(p.dense2.w, rng);
    detail::glorot_fill(p.dense_out.w, rng);
    return p;
}

inline NetworkParams zeros_like(const NetworkParams& p) {
    NetworkParams z = p;
    detail::for_each_tensor(z, [](std::vector<double>& v) { std::fill(v.begin(), v.end(), 0.0); });
    return z;
}

struct LstmStepCache {
    Vector gate_in;  // [h_prev, x_t]
    Vector c_prev;
    Vector f, i, g, o;
    Vector c_t, tanh_c;
};

// c_t = f (.) c_prev + i (.) g;  h_t = o (.) tanh(c_t)
inline LstmStepCache lstm_step(const LstmCellParams& p, const Vector& x, const Vector& h_prev,
                               const Vector& c_prev, Vector& h_out, Vector& c_out) {
    if (x.size() != p.input || h_prev.size() != p.hidden || c_prev.size() != p.hidden)
        throw DimensionMismatch("lstm_step: input/hidden sizes do not match cell");

    LstmStepCache cache;
    cache.gate_in = linalg::concat(h_prev, x);
    cache.c_prev = c_prev;

    cache.f = linalg::matvec(p.w_forget, cache.gate_in);
    cache.i = linalg::matvec(p.w_input, cache.gate_in);
    cache.g = linalg::matvec(p.w_cell, cache.gate_in);
    cache.o = linalg::matvec(p.w_output, cache.gate_in);
    for (std::size_t k = 0; k < p.hidden; ++k) {
        cache.f[k] = linalg::sigmoid(cache.f[k] + p.b_forget[k]);
        cache.i[k] = linalg::sigmoid(cache.i[k] + p.b_input[k]);
        cache.g[k] = std::tanh(cache.g[k] + p.b_cell[k]);
        cache.o[k] = linalg::sigmoid(cache.o[k] + p.b_output[k]);
    }

    cache.c_t.resize(p.hidden);
    cache.tanh_c.resize(p.hidden);
    h_out.resize(p.hidden);
    c_out.resize(p.hidden);
    for (std::size_t k = 0; k < p.hidden; ++k) {
        cache.c_t[k] = cache.f[k] * c_prev[k] + cache.i[k] * cache.g[k];
        cache.tanh_c[k] = std::tanh(cache.c_t[k]);
        c_out[k] = cache.c_t[k];
        h_out[k] = cache.o[k] * cache.tanh_c[k];
    }
    return cache;
}

enum class Mode { train, eval };

// Everything the backward pass needs, recorded per timestep. Dropout masks
// already include the 1/(1-p) inverted-dropout scale.
struct TapeState {
    std::vector<LstmStepCache> branch1_steps, branch2_steps, merge_steps;
    std::vector<Vector> branch1_h, branch2_h;  // hidden sequences feeding the merge cell
    Vector merge_last_h;
    Vector dense1_act, dense1_dropped, mask1;
    Vector dense2_act, dense2_dropped, mask2;
    double prediction = 0.0;
    Mode mode = Mode::eval;
    std::size_t window = 0;
};

namespace detail {

inline Vector dropout_mask(std::size_t n, double p, Mode mode, Rng& rng) {
    Vector mask(n, 1.0);
    if (mode == Mode::train && p > 0.0) {
        const double scale = 1.0 / (1.0 - p);
        for (double& m : mask) m = rng.next_unit() < p ? 0.0 : scale;
    }
    return mask;
}

} // namespace detail

// Runs both branch LSTMs over their windows, the merge LSTM over the
// per-step concatenated hidden states, then the dense stack. Train mode
// draws inverted-dropout masks from rng_seed, so a fixed seed gives a
// fixed, differentiable function.
inline std::pair<double, TapeState> forward(const NetworkParams& p, const Matrix& x_price,
                                            const Matrix& x_tweet, Mode mode,
                                            std::uint64_t rng_seed) {
    if (x_price.rows != x_tweet.rows)
        throw DimensionMismatch("price and tweet windows must cover the same steps");
    if (x_price.rows == 0) throw DimensionMismatch("window must have at least one step");
    if (x_price.cols != p.branch1.input || x_tweet.cols != p.branch2.input)
        throw DimensionMismatch("window feature counts do not match network inputs");

    const std::size_t window = x_price.rows;
    const std::size_t hidden = p.hidden();

    TapeState tape;
    tape.mode = mode;
    tape.window = window;

    Rng rng(rng_seed);

    Vector h1(hidden, 0.0), c1(hidden, 0.0), h2(hidden, 0.0), c2(hidden, 0.0);
    for (std::size_t t = 0; t < window; ++t) {
        Vector xp(x_price.row(t), x_price.row(t) + x_price.cols);
        Vector xt(x_tweet.row(t), x_tweet.row(t) + x_tweet.cols);
        tape.branch1_steps.push_back(lstm_step(p.branch1, xp, h1, c1, h1, c1));
        tape.branch2_steps.push_back(lstm_step(p.branch2, xt, h2, c2, h2, c2));
        tape.branch1_h.push_back(h1);
        tape.branch2_h.push_back(h2);
    }

    Vector hm(hidden, 0.0), cm(hidden, 0.0);
    for (std::size_t t = 0; t < window; ++t) {
        Vector xm = linalg::concat(tape.branch1_h[t], tape.branch2_h[t]);
        tape.merge_steps.push_back(lstm_step(p.merge, xm, hm, cm, hm, cm));
    }
    tape.merge_last_h = hm;

    Vector a1 = linalg::matvec(p.dense1.w, hm);
    for (std::size_t k = 0; k < a1.size(); ++k) a1[k] = std::tanh(a1[k] + p.dense1.b[k]);
    tape.dense1_act = a1;
    tape.mask1 = detail::dropout_mask(a1.size(), p.dropout_p, mode, rng);
    for (std::size_t k = 0; k < a1.size(); ++k) a1[k] *= tape.mask1[k];
    tape.dense1_dropped = a1;

    Vector a2 = linalg::matvec(p.dense2.w, a1);
    for (std::size_t k = 0; k < a2.size(); ++k) a2[k] = std::tanh(a2[k] + p.dense2.b[k]);
    tape.dense2_act = a2;
    tape.mask2 = detail::dropout_mask(a2.size(), p.dropout_p, mode, rng);
    for (std::size_t k = 0; k < a2.size(); ++k) a2[k] *= tape.mask2[k];
    tape.dense2_dropped = a2;

    double pred = p.dense_out.b[0];
    for (std::size_t k = 0; k < a2.size(); ++k) pred += p.dense_out.w(0, k) * a2[k];
    tape.prediction = pred;
    return {pred, tape};
}

namespace detail {

// BPTT through one LSTM. dh_ext[t] is the gradient arriving at h_t from
// outside the cell; d_inputs (when non-null) receives d/dx_t.
inline void lstm_backward(const LstmCellParams& p, const std::vector<LstmStepCache>& steps,
                          const std::vector<Vector>& dh_ext, LstmCellParams& grads,
                          std::vector<Vector>* d_inputs) {
    const std::size_t hidden = p.hidden;
    Vector dh_rec(hidden, 0.0), dc_rec(hidden, 0.0);
    Vector dzf(hidden), dzi(hidden), dzg(hidden), dzo(hidden);

    for (std::size_t ti = steps.size(); ti-- > 0;) {
        const LstmStepCache& s = steps[ti];
        Vector dh = dh_rec;
        linalg::add_inplace(dh, dh_ext[ti]);

        for (std::size_t k = 0; k < hidden; ++k) {
            const double dout = dh[k] * s.tanh_c[k];
            const double dc = dc_rec[k] + dh[k] * s.o[k] * (1.0 - s.tanh_c[k] * s.tanh_c[k]);
            const double df = dc * s.c_prev[k];
            const double di = dc * s.g[k];
            const double dg = dc * s.i[k];
            dzf[k] = df * s.f[k] * (1.0 - s.f[k]);
            dzi[k] = di * s.i[k] * (1.0 - s.i[k]);
            dzg[k] = dg * (1.0 - s.g[k] * s.g[k]);
            dzo[k] = dout * s.o[k] * (1.0 - s.o[k]);
            dc_rec[k] = dc * s.f[k];
        }

        linalg::outer_add(grads.w_forget, dzf, s.gate_in);
        linalg::outer_add(grads.w_input, dzi, s.gate_in);
        linalg::outer_add(grads.w_cell, dzg, s.gate_in);
        linalg::outer_add(grads.w_output, dzo, s.gate_in);
        linalg::add_inplace(grads.b_forget, dzf);
        linalg::add_inplace(grads.b_input, dzi);
        linalg::add_inplace(grads.b_cell, dzg);
        linalg::add_inplace(grads.b_output, dzo);

        Vector d_gate_in(hidden + p.input, 0.0);
        linalg::matvec_transposed_add(p.w_forget, dzf, d_gate_in);
        linalg::matvec_transposed_add(p.w_input, dzi, d_gate_in);
        linalg::matvec_transposed_add(p.w_cell, dzg, d_gate_in);
        linalg::matvec_transposed_add(p.w_output, dzo, d_gate_in);

        std::copy(d_gate_in.begin(), d_gate_in.begin() + hidden, dh_rec.begin());
        if (d_inputs)
            (*d_inputs)[ti].assign(d_gate_in.begin() + hidden, d_gate_in.end());
    }
}

} // namespace detail

// Exact gradients of (loss derivative x prediction) for every parameter
// tensor, replayed from the tape.
inline NetworkParams backward(const TapeState& tape, const NetworkParams& p,
                              double d_loss_d_pred) {
    if (tape.window == 0 || tape.merge_steps.size() != tape.window ||
        tape.branch1_steps.size() != tape.window ||
        tape.merge_last_h.size() != p.hidden() ||
        tape.dense1_act.size() != p.dense_width())
        throw StaleTape();

    NetworkParams grads = zeros_like(p);
    const std::size_t hidden = p.hidden();
    const std::size_t window = tape.window;

    // Dense stack, output first.
    const double d_pred = d_loss_d_pred;
    Vector da2d(p.dense_width(), 0.0);
    for (std::size_t k = 0; k < p.dense_width(); ++k) {
        grads.dense_out.w(0, k) += d_pred * tape.dense2_dropped[k];
        da2d[k] = p.dense_out.w(0, k) * d_pred;
    }
    grads.dense_out.b[0] += d_pred;

    Vector dz2(p.dense_width());
    for (std::size_t k = 0; k < p.dense_width(); ++k) {
        const double da2 = da2d[k] * tape.mask2[k];
        dz2[k] = da2 * (1.0 - tape.dense2_act[k] * tape.dense2_act[k]);
    }
    linalg::outer_add(grads.dense2.w, dz2, tape.dense1_dropped);
    linalg::add_inplace(grads.dense2.b, dz2);

    Vector da1d(p.dense_width(), 0.0);
    linalg::matvec_transposed_add(p.dense2.w, dz2, da1d);
    Vector dz1(p.dense_width());
    for (std::size_t k = 0; k < p.dense_width(); ++k) {
        const double da1 = da1d[k] * tape.mask1[k];
        dz1[k] = da1 * (1.0 - tape.dense1_act[k] * tape.dense1_act[k]);
    }
    linalg::outer_add(grads.dense1.w, dz1, tape.merge_last_h);
    linalg::add_inplace(grads.dense1.b, dz1);

    Vector d_merge_last(hidden, 0.0);
    linalg::matvec_transposed_add(p.dense1.w, dz1, d_merge_last);

    // Merge LSTM: gradient enters only at the last step.
    std::vector<Vector> dmerge_ext(window, Vector(hidden, 0.0));
    dmerge_ext[window - 1] = d_merge_last;
    std::vector<Vector> d_merge_inputs(window);
    detail::lstm_backward(p.merge, tape.merge_steps, dmerge_ext, grads.merge, &d_merge_inputs);

    // The merge input at step t is [h1_t, h2_t]; split its gradient back
    // into the branches.
    std::vector<Vector> dh1_ext(window), dh2_ext(window);
    for (std::size_t t = 0; t < window; ++t) {
        dh1_ext[t].assign(d_merge_inputs[t].begin(), d_merge_inputs[t].begin() + hidden);
        dh2_ext[t].assign(d_merge_inputs[t].begin() + hidden, d_merge_inputs[t].end());
    }
    detail::lstm_backward(p.branch1, tape.branch1_steps, dh1_ext, grads.branch1, nullptr);
    detail::lstm_backward(p.branch2, tape.branch2_steps, dh2_ext, grads.branch2, nullptr);
    return grads;
}

inline double gradient_norm(const NetworkParams& grads) {
    double sq = 0.0;
    detail::for_each_tensor(grads, [&sq](const std::vector<double>& v) {
        for (double x : v) sq += x * x;
    });
    return std::sqrt(sq);
}

// Global norm clip, then params <- params - lr * grad.
inline void sgd_update(NetworkParams& params, const NetworkParams& grads, double learning_rate,
                       double clip_norm) {
    if (learning_rate <= 0) throw ValidationError("learning rate must be positive");
    bool finite = true;
    detail::for_each_tensor(grads, [&finite](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) finite = false;
    });
    if (!finite) throw NonFiniteGradient();

    double scale = 1.0;
    if (clip_norm > 0) {
        const double norm = gradient_norm(grads);
        if (norm > clip_norm) scale = clip_norm / norm;
    }

    const double step = learning_rate * scale;
    auto apply = [step](std::vector<double>& dst, const std::vector<double>& src) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= step * src[i];
    };
    for (auto [d, s] : {std::pair{&params.branch1, &grads.branch1},
                        std::pair{&params.branch2, &grads.branch2},
                        std::pair{&params.merge, &grads.merge}}) {
        apply(d->w_forget.data, s->w_forget.data);
        apply(d->w_input.data, s->w_input.data);
        apply(d->w_cell.data, s->w_cell.data);
        apply(d->w_output.data, s->w_output.data);
        apply(d->b_forget, s->b_forget);
        apply(d->b_input, s->b_input);
        apply(d->b_cell, s->b_cell);
        apply(d->b_output, s->b_output);
    }
    for (auto [d, s] : {std::pair{&params.dense1, &grads.dense1},
                        std::pair{&params.dense2, &grads.dense2},
                        std::pair{&params.dense_out, &grads.dense_out}}) {
        apply(d->w.data, s->w.data);
        apply(d->b, s->b);
    }
}

// Accumulate: into += other (used for batch gradient accumulation).
inline void accumulate(NetworkParams& into, const NetworkParams& other) {
    auto add = [](std::vector<double>& dst, const std::vector<double>& src) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    };
    for (auto [d, s] : {std::pair{&into.branch1, &other.branch1},
                        std::pair{&into.branch2, &other.branch2},
                        std::pair{&into.merge, &other.merge}}) {
        add(d->w_forget.data, s->w_forget.data);
        add(d->w_input.data, s->w_input.data);
        add(d->w_cell.data, s->w_cell.data);
        add(d->w_output.data, s->w_output.data);
        add(d->b_forget, s->b_forget);
        add(d->b_input, s->b_input);
        add(d->b_cell, s->b_cell);
        add(d->b_output, s->b_output);
    }
    for (auto [d, s] : {std::pair{&into.dense1, &other.dense1},
                        std::pair{&into.dense2, &other.dense2},
                        std::pair{&into.dense_out, &other.dense_out}}) {
        add(d->w.data, s->w.data);
        add(d->b, s->b);
    }
}

inline void scale(NetworkParams& p, double factor) {
    detail::for_each_tensor(p, [factor](std::vector<double>& v) {
        for (double& x : v) x *= factor;
    });
}

// ---- checkpoint serialization ------------------------------------------
// Versioned text format with shape metadata; values are hexfloats, so a
// save/load round trip is bit-exact and two identical runs write identical
// bytes.

namespace detail {

inline void write_values(std::string& out, const std::vector<double>& v) {
    char buf[40];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%a", v[i]);
        out += buf;
        out += (i + 1 == v.size()) ? '\n' : ' ';
    }
    if (v.empty()) out += '\n';
}

inline void write_cell(std::string& out, const std::string& name, const LstmCellParams& c) {
    auto tensor = [&](const char* part, const Matrix& m) {
        out += "tensor " + name + "." + part + " " + std::to_string(m.rows) + " " +
               std::to_string(m.cols) + "\n";
        write_values(out, m.data);
    };
    auto vec = [&](const char* part, const Vector& v) {
        out += "vector " + name + "." + part + " " + std::to_string(v.size()) + "\n";
        write_values(out, v);
    };
    tensor("w_forget", c.w_forget);
    tensor("w_input", c.w_input);
    tensor("w_cell", c.w_cell);
    tensor("w_output", c.w_output);
    vec("b_forget", c.b_forget);
    vec("b_input", c.b_input);
    vec("b_cell", c.b_cell);
    vec("b_output", c.b_output);
}

} // namespace detail

inline std::string serialize_checkpoint(const NetworkParams& p) {
    std::string out = "stockcast-checkpoint 1\n";
    out += "price_features " + std::to_string(p.price_features()) + "\n";
    out += "tweet_features " + std::to_string(p.tweet_features()) + "\n";
    out += "hidden " + std::to_string(p.hidden()) + "\n";
    out += "dense " + std::to_string(p.dense_width()) + "\n";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%a", p.dropout_p);
    out += std::string("dropout_p ") + buf + "\n";
    detail::write_cell(out, "branch1", p.branch1);
    detail::write_cell(out, "branch2", p.branch2);
    detail::write_cell(out, "merge", p.merge);
    auto dense = [&](const char* name, const DenseParams& d) {
        out += std::string("tensor ") + name + ".w " + std::to_string(d.w.rows) + " " +
               std::to_string(d.w.cols) + "\n";
        detail::write_values(out, d.w.data);
        out += std::string("vector ") + name + ".b " + std::to_string(d.b.size()) + "\n";
        detail::write_values(out, d.b);
    };
    dense("dense1", p.dense1);
    dense("dense2", p.dense2);
    dense("dense_out", p.dense_out);
    return out;
}

inline NetworkParams parse_checkpoint(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next = [&]() -> std::string {
        if (!std::getline(in, line)) throw ValidationError("checkpoint truncated");
        return line;
    };
    if (next() != "stockcast-checkpoint 1")
        throw ValidationError("unrecognized checkpoint header");

    auto read_kv = [&](const char* key) -> std::string {
        std::istringstream ls(next());
        std::string k, v;
        ls >> k >> v;
        if (k != key) throw ValidationError(std::string("checkpoint: expected ") + key);
        return v;
    };
    const auto price_features = std::stoul(read_kv("price_features"));
    const auto tweet_features = std::stoul(read_kv("tweet_features"));
    const auto hidden = std::stoul(read_kv("hidden"));
    const auto dense = std::stoul(read_kv("dense"));
    const double dropout_p = std::strtod(read_kv("dropout_p").c_str(), nullptr);

    NetworkParams p;
    p.dropout_p = dropout_p;
    p.branch1 = detail::make_cell(hidden, price_features);
    p.branch2 = detail::make_cell(hidden, tweet_features);
    p.merge = detail::make_cell(hidden, 2 * hidden);
    p.dense1 = {Matrix(dense, hidden), Vector(dense, 0.0)};
    p.dense2 = {Matrix(dense, dense), Vector(dense, 0.0)};
    p.dense_out = {Matrix(1, dense), Vector(1, 0.0)};

    auto read_block = [&](const std::string& kind, const std::string& name,
                          std::vector<double>& dst, std::size_t expect) {
        std::istringstream hs(next());
        std::string k, n;
        hs >> k >> n;
        if (k != kind || n != name)
            throw ValidationError("checkpoint: expected " + kind + " " + name + ", got " + k +
                                  " " + n);
        std::istringstream vs(next());
        dst.clear();
        std::string tok;
        while (vs >> tok) dst.push_back(std::strtod(tok.c_str(), nullptr));
        if (dst.size() != expect)
            throw ValidationError("checkpoint: " + name + " has wrong element count");
    };
    auto read_cell = [&](const std::string& name, LstmCellParams& c) {
        read_block("tensor", name + ".w_forget", c.w_forget.data, c.w_forget.data.size());
        read_block("tensor", name + ".w_input", c.w_input.data, c.w_input.data.size());
        read_block("tensor", name + ".w_cell", c.w_cell.data, c.w_cell.data.size());
        read_block("tensor", name + ".w_output", c.w_output.data, c.w_output.data.size());
        read_block("vector", name + ".b_forget", c.b_forget, c.b_forget.size());
        read_block("vector", name + ".b_input", c.b_input, c.b_input.size());
        read_block("vector", name + ".b_cell", c.b_cell, c.b_cell.size());
        read_block("vector", name + ".b_output", c.b_output, c.b_output.size());
    };
    read_cell("branch1", p.branch1);
    read_cell("branch2", p.branch2);
    read_cell("merge", p.merge);
    read_block("tensor", "dense1.w", p.dense1.w.data, p.dense1.w.data.size());
    read_block("vector", "dense1.b", p.dense1.b, p.dense1.b.size());
    read_block("tensor", "dense2.w", p.dense2.w.data, p.dense2.w.data.size());
    read_block("vector", "dense2.b", p.dense2.b, p.dense2.b.size());
    read_block("tensor", "dense_out.w", p.dense_out.w.data, p.dense_out.w.data.size());
    read_block("vector", "dense_out.b", p.dense_out.b, p.dense_out.b.size());
    return p;
}

inline void save_checkpoint(const NetworkParams& p, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeError("cannot write checkpoint: " + path);
    out << serialize_checkpoint(p);
}

inline NetworkParams load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open checkpoint: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_checkpoint(ss.str());
}

} // namespace stockcast::neural
