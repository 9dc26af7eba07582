#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twint/index.hpp"
#include "twint/linalg.hpp"

namespace twint {

/// (k+1) x (k+n+2) coefficient matrix z. Row i holds the coefficient of t_i
/// in every linear form L_j = z_{0j} + z_{1j} t_1 + ... + z_{kj} t_k.
class CoeffMatrix {
public:
    CoeffMatrix(int k, int n, Matrix<Rat> z) : k_(k), n_(n), z_(std::move(z)) {
        if (k < 1 || n < 1) throw std::invalid_argument("k and n must be positive");
        if (z_.rows() != static_cast<std::size_t>(k + 1) || z_.cols() != static_cast<std::size_t>(k + n + 2))
            throw std::invalid_argument("coefficient matrix must be (k+1) x (k+n+2)");
        for (std::size_t i = 0; i < z_.rows(); ++i)
            if (z_(i, 0) != (i == 0 ? 1 : 0)) throw std::invalid_argument("column 0 must be (1, 0, ..., 0)");
    }

    int k() const { return k_; }
    int n() const { return n_; }
    int ncols() const { return k_ + n_ + 2; }
    const Matrix<Rat>& entries() const { return z_; }
    const Rat& operator()(int i, int j) const { return z_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }

    /// |z<J>| with the columns taken in tuple order.
    Rat minor(const IndexTuple& J) const {
        if (J.size() != static_cast<std::size_t>(k_ + 1)) throw std::invalid_argument("minor needs k+1 indices");
        validate_tuple(J, ncols());
        Matrix<Rat> m(J.size(), J.size());
        for (std::size_t i = 0; i < J.size(); ++i)
            for (std::size_t c = 0; c < J.size(); ++c) m(i, c) = z_(i, static_cast<std::size_t>(J[c]));
        return determinant(m);
    }

    /// L_j at the affine point t = (t_1, ..., t_k).
    Rat linear_form(int j, std::span<const Rat> t) const {
        Rat v = (*this)(0, j);
        for (int i = 1; i <= k_; ++i) v += (*this)(i, j) * t[static_cast<std::size_t>(i - 1)];
        return v;
    }

    CoeffMatrix with_column(int j, const std::vector<Rat>& col) const {
        Matrix<Rat> z = z_;
        for (std::size_t i = 0; i < z.rows(); ++i) z(i, static_cast<std::size_t>(j)) = col[i];
        return CoeffMatrix(k_, n_, std::move(z));
    }

private:
    int k_, n_;
    Matrix<Rat> z_;
};

inline int linear_form_sign(const CoeffMatrix& z, int j, std::span<const Rat> t) {
    return sgn(z.linear_form(j, t));
}

enum class Variant { Generic, OneDegenerate, Other };

inline std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Generic: return "Generic";
        case Variant::OneDegenerate: return "OneDegenerate";
        default: return "Other";
    }
}

struct Classification {
    Variant variant = Variant::Generic;
    IndexTuple jvan;                  // ascending, set for OneDegenerate
    std::vector<IndexTuple> vanishing;  // every vanishing tuple, ascending
};

inline Classification classify(const CoeffMatrix& z) {
    Classification c;
    for (const auto& J : index_family(z.k(), z.n(), {}))
        if (is_zero(z.minor(J))) c.vanishing.push_back(J);
    if (c.vanishing.empty()) c.variant = Variant::Generic;
    else if (c.vanishing.size() == 1) {
        c.variant = Variant::OneDegenerate;
        c.jvan = c.vanishing.front();
    } else {
        c.variant = Variant::Other;
    }
    return c;
}

/// The matrix x~ attached to a k x n matrix x: identity block, x block and a
/// final all-ones column, with the all-ones top row over the x block.
inline CoeffMatrix special_matrix(const Matrix<Rat>& x) {
    int k = static_cast<int>(x.rows());
    int n = static_cast<int>(x.cols());
    Matrix<Rat> z(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + n + 2));
    for (int i = 0; i <= k; ++i) z(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1;
    for (int j = 1; j <= n + 1; ++j) z(0, static_cast<std::size_t>(k + j)) = 1;
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= n; ++j)
            z(static_cast<std::size_t>(i), static_cast<std::size_t>(k + j)) = x(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
        z(static_cast<std::size_t>(i), static_cast<std::size_t>(k + n + 1)) = 1;
    }
    return CoeffMatrix(k, n, std::move(z));
}

/// Intersection point P(l_1..l_k) of k affine hyperplanes, or nullopt if they
/// do not meet in a single point.
inline std::optional<std::vector<Rat>> vertex(const CoeffMatrix& z, const std::vector<int>& ls) {
    std::size_t k = static_cast<std::size_t>(z.k());
    Matrix<Rat> a(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t i = 0; i < k; ++i) a(r, i) = z(static_cast<int>(i + 1), ls[r]);
    Matrix<Rat> inv;
    try {
        inv = inverse(a);
    } catch (const SingularMatrix&) {
        return std::nullopt;
    }
    std::vector<Rat> t(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t r = 0; r < k; ++r) t[i] -= inv(i, r) * z(0, ls[r]);
    return t;
}

/// Signs of L_1..L_{k+n+1} at every vertex P(l_1..l_k), in a fixed order.
inline std::vector<std::vector<int>> vertex_signatures(const CoeffMatrix& z) {
    std::vector<std::vector<int>> out;
    int m = z.k() + z.n() + 1;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == z.k()) {
            auto p = vertex(z, cur);
            std::vector<int> s;
            if (p)
                for (int j = 1; j <= m; ++j) s.push_back(linear_form_sign(z, j, *p));
            out.push_back(std::move(s));
            return;
        }
        for (int j = start; j <= m; ++j) {
            cur.push_back(j);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

/// Thrown when no small enough perturbation gives stable combinatorics.
class PerturbationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adds (e, e^2, ..., e^{k+1}) to column max(J^van) of a one-point degenerate
/// matrix, with e = 2^-m. m grows until the result is generic and every
/// vertex keeps its sign vector for e/2 and e/4 as well.
inline CoeffMatrix perturb(const CoeffMatrix& z0, const IndexTuple& jvan, int max_m = 200, int* used_m = nullptr) {
    Classification c = classify(z0);
    if (c.variant != Variant::OneDegenerate || !same_set(c.jvan, jvan))
        throw std::invalid_argument("perturb needs a one-point degenerate matrix with the given vanishing tuple");
    int jk = *std::max_element(jvan.begin(), jvan.end());
    auto at = [&](int m) {
        Rat eps(1);
        eps /= mpz_class(1) << static_cast<unsigned>(m);
        std::vector<Rat> col(static_cast<std::size_t>(z0.k() + 1));
        Rat p = eps;
        for (int i = 0; i <= z0.k(); ++i) {
            col[static_cast<std::size_t>(i)] = z0(i, jk) + p;
            p *= eps;
        }
        return z0.with_column(jk, col);
    };
    for (int m = 1; m + 2 <= max_m; ++m) {
        CoeffMatrix z = at(m);
        if (classify(z).variant != Variant::Generic) continue;
        auto s0 = vertex_signatures(z);
        CoeffMatrix z1 = at(m + 1), z2 = at(m + 2);
        if (classify(z1).variant != Variant::Generic || classify(z2).variant != Variant::Generic) continue;
        if (vertex_signatures(z1) != s0 || vertex_signatures(z2) != s0) continue;
        if (used_m) *used_m = m;
        return z;
    }
    throw PerturbationFailed("no stable perturbation found");
}

}  // namespace twint
