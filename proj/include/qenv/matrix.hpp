#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qenv {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. The single carrier type for states,
/// Kraus operators and unitaries in this library.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    bool is_finite() const {
        for (const auto& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = (*this)(r, c);
        return out;
    }

    cplx trace() const {
        if (!is_square()) throw std::invalid_argument("trace: matrix not square");
        cplx t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o, "+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_shape(o, "-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product: inner dimensions differ");
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx(0.0, 0.0)) continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    out(r, c) += ark * b(k, c);
            }
        }
        return out;
    }

private:
    void check_same_shape(const ComplexMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("matrix ") + op + ": shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<cplx> data_;
};

inline double distance_frobenius(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix -=: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
    return std::sqrt(s);
}

/// Kronecker product, first factor outer / second factor inner.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const cplx v = a(ar, ac);
            if (v == cplx(0.0, 0.0)) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
        }
    return out;
}

/// Reduced matrix after tracing out one tensor factor. The factor ordering
/// matches kron: first factor outer, second factor inner.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_keep,
                                   std::size_t dim_trace, bool trace_second) {
    const std::size_t side = dim_keep * dim_trace;
    if (!m.is_square() || m.rows() != side)
        throw std::invalid_argument("partial_trace: inconsistent factorization");
    ComplexMatrix out(dim_keep, dim_keep);
    if (trace_second) {
        for (std::size_t i = 0; i < dim_keep; ++i)
            for (std::size_t j = 0; j < dim_keep; ++j)
                for (std::size_t k = 0; k < dim_trace; ++k)
                    out(i, j) += m(i * dim_trace + k, j * dim_trace + k);
    } else {
        for (std::size_t i = 0; i < dim_keep; ++i)
            for (std::size_t j = 0; j < dim_keep; ++j)
                for (std::size_t k = 0; k < dim_trace; ++k)
                    out(i, j) += m(k * dim_keep + i, k * dim_keep + j);
    }
    return out;
}

// Pauli matrices and friends.
inline ComplexMatrix pauli_x() {
    return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
}
inline ComplexMatrix pauli_y() {
    return ComplexMatrix(2, 2, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0});
}
inline ComplexMatrix pauli_z() {
    return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
}

/// Column vector |i> of dimension n.
inline ComplexMatrix basis_vector(std::size_t n, std::size_t i) {
    ComplexMatrix v(n, 1);
    v(i, 0) = 1.0;
    return v;
}

} // namespace qenv
