#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "twint/index.hpp"
#include "twint/linalg.hpp"

namespace twint {

/// Matrix of intersection numbers with its row and column families. The value
/// of an entry is `entries(i, j) * (2 pi i)^scalar_power`; the transcendental
/// factor is only tracked, never materialized.
template <class T>
struct GramMatrix {
    Family rows;
    Family cols;
    Matrix<T> entries;
    int scalar_power = 0;

    std::size_t size() const { return rows.size(); }

    GramMatrix transposed() const { return {cols, rows, entries.transposed(), scalar_power}; }

    GramMatrix inverse() const { return {cols, rows, twint::inverse(entries), -scalar_power}; }

    T determinant() const { return twint::determinant(entries); }

    template <class F>
    auto map(F&& f) const {
        using U = decltype(f(std::declval<const T&>()));
        return GramMatrix<U>{rows, cols, entries.map(std::forward<F>(f)), scalar_power};
    }

    friend GramMatrix operator*(const GramMatrix& a, const GramMatrix& b) {
        if (a.cols != b.rows) throw std::logic_error("Gram product with misaligned index families");
        return {a.rows, b.cols, a.entries * b.entries, a.scalar_power + b.scalar_power};
    }
};

template <class T>
GramMatrix<T> identity_gram(const Family& f) {
    return {f, f, Matrix<T>::identity(f.size()), 0};
}

/// Fills a Gram matrix entrywise from a pairing function.
template <class T, class Pair>
GramMatrix<T> build_gram(const Family& rows, const Family& cols, int scalar_power, Pair&& pair) {
    GramMatrix<T> g{rows, cols, Matrix<T>(rows.size(), cols.size()), scalar_power};
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) g.entries(i, j) = pair(rows[i], cols[j]);
    return g;
}

}  // namespace twint
