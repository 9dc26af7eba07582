#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "twint/gram.hpp"
#include "twint/index.hpp"

namespace twint {

/// Pairing of log forms phi<I> and phi<J> on a generic arrangement, divided by
/// (2 pi i)^k. `alpha` is the full exponent vector of length k+n+2.
template <class T>
T pairing_generic(const IndexTuple& I, const IndexTuple& J, std::span<const T> alpha) {
    if (I.size() != J.size()) throw std::invalid_argument("tuples of different length");
    std::vector<int> shared;
    for (int j : I)
        if (contains(J, j)) shared.push_back(j);
    std::size_t k1 = I.size();
    if (shared.size() == k1) {
        // phi is alternating: reorder J into I
        std::vector<int> pos;
        for (int j : J) pos.push_back(position(I, j));
        T sum(0), prod(1);
        for (int j : I) {
            sum += alpha[static_cast<std::size_t>(j)];
            prod *= alpha[static_cast<std::size_t>(j)];
        }
        T v = sum / prod;
        return sort_sign(pos) < 0 ? T(-v) : v;
    }
    if (shared.size() + 1 != k1) return T(0);
    int p = -1, q = -1;
    for (std::size_t i = 0; i < k1; ++i) {
        if (!contains(J, I[i])) p = static_cast<int>(i);
        if (!contains(I, J[i])) q = static_cast<int>(i);
    }
    // relative order of the shared indices in J, measured against I
    std::vector<int> rel;
    for (int j : J)
        if (contains(I, j)) rel.push_back(position(I, j));
    int sign = sort_sign(rel) * (((p + q) % 2) ? -1 : 1);
    T prod(1);
    for (int j : shared) prod *= alpha[static_cast<std::size_t>(j)];
    T v = T(1) / prod;
    return sign < 0 ? T(-v) : v;
}

/// Pairing on the one-point degenerate arrangement via projection away from
/// phi<J^van>. Passing J^van itself is rejected.
template <class T>
T pairing_degenerate(const IndexTuple& I, const IndexTuple& J, const IndexTuple& jvan, std::span<const T> alpha) {
    if (same_set(I, jvan) || same_set(J, jvan))
        throw std::invalid_argument("the vanishing class " + tuple_string(jvan) + " is zero on the degenerate space");
    T ij = pairing_generic(I, J, alpha);
    T iv = pairing_generic(I, jvan, alpha);
    if (is_zero(iv)) return ij;
    T vj = pairing_generic(jvan, J, alpha);
    if (is_zero(vj)) return ij;
    return ij - iv * vj / pairing_generic(jvan, jvan, alpha);
}

template <class T>
GramMatrix<T> gram_generic(const Family& rows, const Family& cols, int k, std::span<const T> alpha) {
    return build_gram<T>(rows, cols, k, [&](const IndexTuple& I, const IndexTuple& J) { return pairing_generic(I, J, alpha); });
}

template <class T>
GramMatrix<T> gram_degenerate(const Family& rows, const Family& cols, const IndexTuple& jvan, int k,
                              std::span<const T> alpha) {
    return build_gram<T>(rows, cols, k,
                         [&](const IndexTuple& I, const IndexTuple& J) { return pairing_degenerate(I, J, jvan, alpha); });
}

/// A cohomology class as coordinates over a family of log forms; `side` is +1
/// for the +alpha group and -1 for the -alpha group.
template <class T>
struct CohomClass {
    Family family;
    std::vector<T> coords;
    int side = 1;

    static CohomClass basis(const IndexTuple& J, int side = 1) { return {{J}, {T(1)}, side}; }
};

template <class T>
T pair_classes(const CohomClass<T>& u, const CohomClass<T>& v, std::span<const T> alpha) {
    T acc(0);
    for (std::size_t a = 0; a < u.family.size(); ++a) {
        if (is_zero(u.coords[a])) continue;
        for (std::size_t b = 0; b < v.family.size(); ++b) {
            if (is_zero(v.coords[b])) continue;
            acc += u.coords[a] * v.coords[b] * pairing_generic(u.family[a], v.family[b], alpha);
        }
    }
    return acc;
}

/// v minus its component along phi<J^van>, so that the result pairs to zero
/// with the vanishing class. The result family always contains J^van.
template <class T>
CohomClass<T> project_vanishing(const CohomClass<T>& v, const IndexTuple& jvan, std::span<const T> alpha) {
    CohomClass<T> r = v;
    std::size_t idx;
    if (auto f = find_set(r.family, jvan)) {
        idx = *f;
    } else {
        r.family.push_back(jvan);
        r.coords.push_back(T(0));
        idx = r.family.size() - 1;
    }
    CohomClass<T> van = CohomClass<T>::basis(jvan, -v.side);
    T c = pair_classes(v, van, alpha) / pairing_generic(jvan, jvan, alpha);
    // phi<T> = sign * phi<jvan> when T is a reordering of jvan
    int rel = sort_sign(r.family[idx]) * sort_sign(jvan);
    r.coords[idx] = rel > 0 ? T(r.coords[idx] - c) : T(r.coords[idx] + c);
    return r;
}

enum class BasisKind { One = 1, Two = 2, Three = 3, Four = 4 };

/// A degenerate basis: the family used on the +alpha side and the partner
/// family on the -alpha side, aligned entry by entry.
struct DegenerateBasis {
    Family plus;
    Family minus;
};

struct BasisParams {
    int p = -1;
    int q = -1;
    int l = -1;        // position in J^van (kinds 1-3) or an element of J^van (kind 4)
    int lprime = -1;   // element of J^van (kind 4)
};

inline DegenerateBasis basis_degenerate(BasisKind kind, int k, int n, const IndexTuple& jvan, const BasisParams& bp) {
    auto in_van = [&](int j) { return contains(jvan, j); };
    int m = k + n + 2;
    auto check_outside = [&](int x, const char* what) {
        if (x < 0 || x >= m || in_van(x)) throw std::invalid_argument(std::string(what) + " must be an index outside J^van");
    };
    auto jl = [&]() {
        if (bp.l < 0 || bp.l > k) throw std::invalid_argument("l must be a position 0..k in J^van");
        return jvan[static_cast<std::size_t>(bp.l)];
    };
    switch (kind) {
        case BasisKind::One: {
            check_outside(bp.p, "p");
            int j = jl();
            Family f = family_qp(k, n, j, bp.p, {replace(jvan, j, bp.p)});
            return {f, f};
        }
        case BasisKind::Two: {
            check_outside(bp.p, "p");
            check_outside(bp.q, "q");
            if (bp.p == bp.q) throw std::invalid_argument("p and q must differ");
            int j = jl();
            Family f = family_qp(k, n, bp.q, bp.p, {replace(jvan, j, bp.p)});
            return {f, f};
        }
        case BasisKind::Three: {
            check_outside(bp.q, "q");
            Family f = family_qp(k, n, bp.q, jl(), {jvan});
            return {f, f};
        }
        case BasisKind::Four: {
            check_outside(bp.p, "p");
            if (!in_van(bp.l) || !in_van(bp.lprime) || bp.l == bp.lprime)
                throw std::invalid_argument("l and l' must be distinct elements of J^van");
            Family plus = family_qp(k, n, bp.lprime, bp.l, {replace(jvan, bp.lprime, bp.p)});
            Family minus;
            for (const auto& J : plus) minus.push_back(replace(J, bp.l, bp.lprime));
            return {plus, minus};
        }
    }
    throw std::invalid_argument("unknown basis kind");
}

template <class T>
struct DetIdentity {
    T det_c;            // |C|
    T van_times_det_c0; // I(phi_van+, phi_van-) * |C0|
    T c2_times_det_c1;  // c2 * |C1|
    T c2;
};

/// Evaluates the two determinant expansions behind the kind-4 basis.
template <class T>
DetIdentity<T> det_identity_check(int k, int n, const IndexTuple& jvan, int p, int l, int lprime,
                                  std::span<const T> alpha) {
    DegenerateBasis b = basis_degenerate(BasisKind::Four, k, n, jvan, {p, -1, l, lprime});
    Family rows{jvan}, cols{jvan};
    rows.insert(rows.end(), b.plus.begin(), b.plus.end());
    cols.insert(cols.end(), b.minus.begin(), b.minus.end());
    auto C = gram_generic<T>(rows, cols, k, alpha);
    auto C0 = gram_degenerate<T>(b.plus, b.minus, jvan, k, alpha);
    auto C1 = gram_generic<T>(b.plus, b.minus, k, alpha);

    T vv = pairing_generic(jvan, jvan, alpha);
    T c2 = vv;
    for (std::size_t i = 0; i < b.plus.size(); ++i) {
        T jv = pairing_generic(b.plus[i], jvan, alpha);
        if (is_zero(jv)) continue;
        c2 -= pairing_generic(jvan, b.minus[i], alpha) / pairing_generic(b.plus[i], b.minus[i], alpha) * jv;
    }
    return {C.determinant(), vv * C0.determinant(), c2 * C1.determinant(), c2};
}

}  // namespace twint
