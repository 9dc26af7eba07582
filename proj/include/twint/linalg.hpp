#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twint/ratfunc.hpp"

namespace twint {

/// Thrown when elimination meets a singular matrix.
class SingularMatrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline std::size_t pivot_weight(const Rat& r) {
    return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}
inline std::size_t pivot_weight(const RatFunc& f) {
    return f.numerator().term_count() + f.denominator_factors().size();
}
inline std::size_t pivot_weight(double) { return 0; }
inline bool is_zero(double x) { return x == 0.0; }

/// Dense row-major matrix over an exact field.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const T& x = a(i, l);
                if (is_zero(x)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (is_zero(b(l, j))) continue;
                    r(i, j) += x * b(l, j);
                }
            }
        }
        return r;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }

    Matrix scaled(const T& s) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x * s;
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero_matrix() const {
        for (const auto& x : data_)
            if (!is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && (a - b).is_zero_matrix();
    }

    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
        Matrix<decltype(f(std::declval<const T&>()))> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

namespace detail {

template <class T>
std::size_t choose_pivot(const Matrix<T>& a, std::size_t k) {
    std::size_t best = a.rows();
    std::size_t best_w = 0;
    for (std::size_t r = k; r < a.rows(); ++r) {
        if (is_zero(a(r, k))) continue;
        std::size_t w = pivot_weight(a(r, k));
        if (best == a.rows() || w < best_w) {
            best = r;
            best_w = w;
        }
    }
    return best;
}

template <class T>
void swap_rows(Matrix<T>& a, std::size_t r, std::size_t s) {
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(s, j));
}

}  // namespace detail

/// Bareiss fraction-free determinant.
template <class T>
T determinant(Matrix<T> a) {
    std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0) return T(1);
    T prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = detail::choose_pivot(a, k);
        if (p == n) return T(0);
        if (p != k) {
            detail::swap_rows(a, p, k);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
            a(i, k) = T(0);
        }
        prev = a(k, k);
    }
    return negate ? T(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

/// Fraction-free Gauss-Jordan on [A | I]. The left block ends as d*I and the
/// inverse is the right block divided by d.
template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
    std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    Matrix<T> m(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
        m(i, n + i) = T(1);
    }
    T prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = detail::choose_pivot(m, k);
        if (p == n) throw SingularMatrix("matrix is singular");
        if (p != k) detail::swap_rows(m, p, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            for (std::size_t j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = T(0);
        }
        prev = m(k, k);
    }
    Matrix<T> r(n, n);
    T inv_d = T(1) / prev;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = m(i, n + j) * inv_d;
    return r;
}

}  // namespace twint
