#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "twint/arrangement.hpp"
#include "twint/cohomology.hpp"

namespace twint {

/// alpha + e_l - e_{j0}.
template <class T>
std::vector<T> shifted_params(std::span<const T> alpha, int l, int j0) {
    std::vector<T> a(alpha.begin(), alpha.end());
    a[static_cast<std::size_t>(l)] += T(1);
    a[static_cast<std::size_t>(j0)] -= T(1);
    return a;
}

enum class InverseMethod { ClosedForm, Elimination };

/// Data for the contiguity matrices of a one-point degenerate z0: the
/// vanishing tuple, j0 in J^van, q outside it, and the basis
/// J° = {J : j0 in J, q not in J} - {J^van}.
class ContiguityContext {
public:
    ContiguityContext(CoeffMatrix z0, int j0, int q) : z0_(std::move(z0)), j0_(j0), q_(q) {
        Classification c = classify(z0_);
        if (c.variant != Variant::OneDegenerate) throw std::invalid_argument("contiguity needs a one-point degenerate matrix");
        jvan_ = c.jvan;
        if (!contains(jvan_, j0)) throw std::invalid_argument("j0 must lie in J^van");
        if (q < 0 || q >= z0_.ncols() || contains(jvan_, q)) throw std::invalid_argument("q must lie outside J^van");
        base_ = family_qp(z0_.k(), z0_.n(), q, j0, {jvan_});
    }

    const CoeffMatrix& matrix() const { return z0_; }
    const IndexTuple& jvan() const { return jvan_; }
    int j0() const { return j0_; }
    int q() const { return q_; }
    int k() const { return z0_.k(); }
    const Family& base() const { return base_; }

    void check_shift(int l) const {
        if (l < 0 || l >= z0_.ncols() || l == j0_) throw std::invalid_argument("shift index must differ from j0");
    }

    /// l J° j0: l replaced by q in place.
    Family family_l_j0(int l) const {
        check_shift(l);
        Family f;
        for (const auto& J : base_) f.push_back(contains(J, l) ? replace(J, l, q_) : J);
        return f;
    }

    /// j0 J° l: j0 replaced by l in place, aligned with family_l_j0.
    Family family_j0_l(int l) const {
        Family f;
        for (const auto& J : family_l_j0(l)) f.push_back(replace(J, j0_, l));
        return f;
    }

    template <class T>
    GramMatrix<T> gram(const Family& rows, const Family& cols, std::span<const T> alpha) const {
        return gram_degenerate<T>(rows, cols, jvan_, k(), alpha);
    }

    template <class T>
    GramMatrix<T> C(std::span<const T> alpha) const { return gram(base_, base_, alpha); }
    template <class T>
    GramMatrix<T> P(int l, std::span<const T> alpha) const { return gram(family_j0_l(l), base_, alpha); }
    template <class T>
    GramMatrix<T> Q(int l, std::span<const T> alpha) const { return gram(family_l_j0(l), base_, alpha); }
    template <class T>
    GramMatrix<T> R(int l, std::span<const T> alpha) const { return gram(family_j0_l(l), family_l_j0(l), alpha); }

    /// diag(|z0<j0 J l>| / |z0<J>|) over J in l J° j0.
    template <class T = Rat>
    GramMatrix<T> D(int l) const {
        Family cols = family_l_j0(l);
        Family rows = family_j0_l(l);
        GramMatrix<T> d{rows, cols, Matrix<T>(rows.size(), cols.size()), 0};
        for (std::size_t i = 0; i < cols.size(); ++i) {
            Rat den = z0_.minor(cols[i]);
            if (is_zero(den)) throw std::logic_error("zero minor outside J^van");
            d.entries(i, i) = T(z0_.minor(rows[i]) / den);
        }
        return d;
    }

    /// Closed form of R_l^{-1}: a diagonal of products of alpha plus, when l
    /// lies in J^van, a correction supported on tuples obtained from J^van.
    template <class T>
    GramMatrix<T> r_inverse_closed(int l, std::span<const T> alpha) const {
        Family rows = family_l_j0(l);
        Family cols = family_j0_l(l);
        GramMatrix<T> r{rows, cols, Matrix<T>(rows.size(), cols.size()), -k()};
        auto a = [&](int j) -> const T& { return alpha[static_cast<std::size_t>(j)]; };
        for (std::size_t i = 0; i < rows.size(); ++i) {
            T prod(1);
            for (int j : rows[i])
                if (j != j0_) prod *= a(j);
            r.entries(i, i) = prod;
        }
        if (!contains(jvan_, l)) return r;
        T base(1);
        for (int j : jvan_)
            if (j != j0_ && j != l) base *= a(j);
        base /= a(q_);
        for (int p1 = 0; p1 < z0_.ncols(); ++p1) {
            if (contains(jvan_, p1) || p1 == q_) continue;
            IndexTuple col_t = replace(replace(jvan_, l, p1), j0_, l);
            auto c = find_set(cols, col_t);
            if (!c) throw std::logic_error("closed-form inverse: column tuple missing");
            int cs = sort_sign(cols[*c]) * sort_sign(col_t);
            for (int p2 = 0; p2 < z0_.ncols(); ++p2) {
                if (contains(jvan_, p2) || p2 == q_) continue;
                IndexTuple row_t = replace(jvan_, l, p2);
                auto rr = find_set(rows, row_t);
                if (!rr) throw std::logic_error("closed-form inverse: row tuple missing");
                int rs = sort_sign(rows[*rr]) * sort_sign(row_t);
                T v = base * a(p1) * a(p2);
                r.entries(*rr, *c) += (rs * cs > 0) ? v : T(-v);
            }
        }
        return r;
    }

    template <class T>
    GramMatrix<T> r_inverse(int l, std::span<const T> alpha, InverseMethod m) const {
        return m == InverseMethod::ClosedForm ? r_inverse_closed(l, alpha) : R(l, alpha).inverse();
    }

    template <class T>
    GramMatrix<T> C_inverse(std::span<const T> alpha, InverseMethod m) const {
        if (m == InverseMethod::Elimination) return C(alpha).inverse();
        auto rq = r_inverse_closed(q_, alpha);
        Family b = family_j0_l(q_);
        return rq * gram(b, b, alpha) * rq.transposed();
    }

    template <class T>
    GramMatrix<T> P_inverse(int l, std::span<const T> alpha, InverseMethod m) const {
        if (m == InverseMethod::Elimination) return P(l, alpha).inverse();
        return r_inverse_closed(q_, alpha) * gram(family_j0_l(q_), family_l_j0(l), alpha) * r_inverse_closed(l, alpha);
    }

    template <class T>
    GramMatrix<T> Q_inverse(int l, std::span<const T> alpha, InverseMethod m) const {
        if (m == InverseMethod::Elimination) return Q(l, alpha).inverse();
        return r_inverse_closed(q_, alpha) * gram(family_j0_l(q_), family_j0_l(l), alpha) *
               r_inverse_closed(l, alpha).transposed();
    }

    /// Representation matrix of the shift alpha -> alpha + e_l - e_{j0} on
    /// the basis J°.
    template <class T>
    GramMatrix<T> conti(int l, std::span<const T> alpha, InverseMethod m = InverseMethod::ClosedForm) const {
        check_shift(l);
        std::vector<T> ash = shifted_params(alpha, l, j0_);
        std::span<const T> as(ash);
        GramMatrix<T> r = C(as) * P_inverse(l, as, m) * D<T>(l) * Q(l, alpha) * C_inverse(alpha, m);
        if (r.scalar_power != 0) throw std::logic_error("unbalanced (2 pi i) powers in contiguity matrix");
        return r;
    }

private:
    CoeffMatrix z0_;
    int j0_, q_;
    IndexTuple jvan_;
    Family base_;
};

}  // namespace twint
