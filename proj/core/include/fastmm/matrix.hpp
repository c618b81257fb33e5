#ifndef FASTMM_MATRIX_HPP
#define FASTMM_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fastmm/scalar.hpp"

namespace fastmm {

namespace detail {
/// Thread-local count of scalar (non-constant) multiplications performed by
/// the classical kernel; lets tests cross-check the recurrence counts
/// against instrumented runs.
std::uint64_t& multiplication_counter();
}  // namespace detail

inline void reset_multiplication_counter() { detail::multiplication_counter() = 0; }
inline std::uint64_t multiplication_count() { return detail::multiplication_counter(); }

/// Dense row-major matrix over one scalar regime.
template <typename T>
class Matrix {
public:
    using Scalar = T;

    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<T>::zero()) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("Matrix: zero dimension");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::one();
        return m;
    }
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T& at(std::size_t i, std::size_t j) {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix::at");
        return data_[i * cols_ + j];
    }
    const T& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix::at");
        return data_[i * cols_ + j];
    }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { a += b; return a; }
    friend Matrix operator-(Matrix a, const Matrix& b) { a -= b; return a; }

    friend Matrix operator*(const T& s, Matrix m) {
        for (auto& x : m.data_) x = s * x;
        return m;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Copy of the r x c top-left corner.
    Matrix crop(std::size_t r, std::size_t c) const {
        if (r > rows_ || c > cols_) throw std::out_of_range("Matrix::crop");
        Matrix out(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) out(i, j) = (*this)(i, j);
        return out;
    }

    Matrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        if (i0 + r > rows_ || j0 + c > cols_) throw std::out_of_range("Matrix::block");
        Matrix out(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
        return out;
    }

    void set_block(std::size_t i0, std::size_t j0, const Matrix& m) {
        if (i0 + m.rows_ > rows_ || j0 + m.cols_ > cols_)
            throw std::out_of_range("Matrix::set_block");
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) (*this)(i0 + i, j0 + j) = m(i, j);
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

/// Definitional product; the inner sum runs left to right in l.
template <typename T>
Matrix<T> multiply_classical(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply_classical: inner dimensions disagree");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T acc = a(i, 0) * b(0, j);
            for (std::size_t l = 1; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
            c(i, j) = acc;
        }
    }
    detail::multiplication_counter() +=
        static_cast<std::uint64_t>(a.rows()) * b.cols() * a.cols();
    return c;
}

/// Pads to the smallest m x m with m = base^ceil(log_base(max(rows, cols,
/// minimum))); the input sits in the top-left corner, zeros elsewhere.
template <typename T>
Matrix<T> pad_to_power(const Matrix<T>& a, std::size_t base, std::size_t minimum = 1) {
    if (base < 2) throw std::invalid_argument("pad_to_power: base must be >= 2");
    std::size_t need = std::max({a.rows(), a.cols(), minimum, std::size_t{1}});
    std::size_t m = 1;
    while (m < need) m *= base;
    if (m == a.rows() && m == a.cols()) return a;
    Matrix<T> out(m, m);
    out.set_block(0, 0, a);
    return out;
}

/// k x k grid of equal square blocks, row-major.
template <typename T>
struct BlockGrid {
    std::size_t k = 0;
    std::size_t block_side = 0;
    std::vector<Matrix<T>> blocks;  // index (h, l) -> h * k + l

    Matrix<T>& operator()(std::size_t h, std::size_t l) { return blocks[h * k + l]; }
    const Matrix<T>& operator()(std::size_t h, std::size_t l) const { return blocks[h * k + l]; }
};

template <typename T>
BlockGrid<T> partition(const Matrix<T>& a, std::size_t k) {
    if (!a.square()) throw std::invalid_argument("partition: matrix must be square");
    if (k == 0 || a.rows() % k != 0)
        throw std::invalid_argument("partition: side not divisible by k");
    BlockGrid<T> grid;
    grid.k = k;
    grid.block_side = a.rows() / k;
    grid.blocks.reserve(k * k);
    for (std::size_t h = 0; h < k; ++h)
        for (std::size_t l = 0; l < k; ++l)
            grid.blocks.push_back(a.block(h * grid.block_side, l * grid.block_side,
                                          grid.block_side, grid.block_side));
    return grid;
}

template <typename T>
Matrix<T> assemble(const BlockGrid<T>& grid) {
    if (grid.k == 0 || grid.blocks.size() != grid.k * grid.k)
        throw std::invalid_argument("assemble: malformed grid");
    std::size_t n = grid.k * grid.block_side;
    Matrix<T> out(n, n);
    for (std::size_t h = 0; h < grid.k; ++h)
        for (std::size_t l = 0; l < grid.k; ++l)
            out.set_block(h * grid.block_side, l * grid.block_side, grid(h, l));
    return out;
}

// Regime conversions.

inline Matrix<Rational> to_rational(const Matrix<double>& a) {
    Matrix<Rational> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational::from_double(a(i, j));
    return out;
}

inline Matrix<Rational> to_rational(const Matrix<Rounded>& a) {
    Matrix<Rational> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational::from_double(a(i, j).v);
    return out;
}

inline Matrix<Rounded> to_rounded(const Matrix<double>& a) {
    Matrix<Rounded> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rounded{a(i, j)};
    return out;
}

inline Matrix<double> to_real(const Matrix<Rounded>& a) {
    Matrix<double> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).v;
    return out;
}

inline Matrix<double> to_real(const Matrix<Rational>& a) {
    Matrix<double> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).to_double();
    return out;
}

inline Matrix<std::complex<double>> to_complex(const Matrix<double>& a) {
    Matrix<std::complex<double>> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = {a(i, j), 0.0};
    return out;
}

}  // namespace fastmm

#endif
