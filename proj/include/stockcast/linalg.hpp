#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace stockcast::linalg {

using Vector = std::vector<double>;

// Dense row-major matrix. Everything here runs in fixed loop order so
// results are bitwise reproducible.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    const double* row(std::size_t r) const { return data.data() + r * cols; }
    double* row(std::size_t r) { return data.data() + r * cols; }

    bool operator==(const Matrix&) const = default;
};

// y = W x
inline Vector matvec(const Matrix& w, const Vector& x) {
    assert(w.cols == x.size());
    Vector y(w.rows, 0.0);
    for (std::size_t r = 0; r < w.rows; ++r) {
        const double* wr = w.row(r);
        double acc = 0.0;
        for (std::size_t c = 0; c < w.cols; ++c) acc += wr[c] * x[c];
        y[r] = acc;
    }
    return y;
}

// x_grad += W^T dy
inline void matvec_transposed_add(const Matrix& w, const Vector& dy, Vector& x_grad) {
    assert(w.rows == dy.size() && w.cols == x_grad.size());
    for (std::size_t r = 0; r < w.rows; ++r) {
        const double* wr = w.row(r);
        const double d = dy[r];
        for (std::size_t c = 0; c < w.cols; ++c) x_grad[c] += wr[c] * d;
    }
}

// dW += dy x^T
inline void outer_add(Matrix& dw, const Vector& dy, const Vector& x) {
    assert(dw.rows == dy.size() && dw.cols == x.size());
    for (std::size_t r = 0; r < dw.rows; ++r) {
        double* wr = dw.row(r);
        const double d = dy[r];
        for (std::size_t c = 0; c < dw.cols; ++c) wr[c] += d * x[c];
    }
}

inline void add_inplace(Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

inline Vector concat(const Vector& a, const Vector& b) {
    Vector out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace stockcast::linalg
