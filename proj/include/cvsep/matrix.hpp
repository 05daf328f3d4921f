#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace cvsep {

/// Dense row-major matrix over double or complex<double>. Sized for the
/// small systems this library works with (dimension <= a few dozen);
/// nothing here is tuned for large n.
template <typename Scalar>
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar{}) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("Matrix: entry count does not match dimensions");
    }

    Matrix(std::initializer_list<std::initializer_list<Scalar>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar{1};
        return m;
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Scalar& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const Scalar& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    const std::vector<Scalar>& data() const { return data_; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Conjugate transpose; equals transposed() for real scalars.
    Matrix adjoint() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = conj_value((*this)(i, j));
        return t;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("Matrix multiply: inner dimensions differ");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Scalar aik = (*this)(i, k);
                if (aik == Scalar{}) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    Matrix operator*(Scalar s) const {
        Matrix r = *this;
        for (auto& v : r.data_) v *= s;
        return r;
    }

    Scalar trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
        Scalar t{};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const auto& v : data_) s += std::norm(std::complex<double>(v));
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0;
        for (const auto& v : data_) m = std::max(m, std::abs(std::complex<double>(v)));
        return m;
    }

    bool is_finite() const {
        for (const auto& v : data_) {
            const std::complex<double> z(v);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }

private:
    static double conj_value(double x) { return x; }
    static std::complex<double> conj_value(const std::complex<double>& z) { return std::conj(z); }

    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;

inline ComplexMatrix to_complex(const RealMatrix& m) {
    ComplexMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j);
    return c;
}

/// Real representation [[Re, -Im], [Im, Re]]. Doubles every singular
/// value of the complex input; doubles every eigenvalue when the input
/// is Hermitian (the embedding is then symmetric).
inline RealMatrix real_embedding(const ComplexMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    RealMatrix e(2 * r, 2 * c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const auto z = m(i, j);
            e(i, j) = z.real();
            e(i, j + c) = -z.imag();
            e(i + r, j) = z.imag();
            e(i + r, j + c) = z.real();
        }
    return e;
}

inline double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

} // namespace cvsep
