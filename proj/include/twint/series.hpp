#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twint/gamma.hpp"

namespace twint {

using IntMatrix = std::vector<std::vector<int>>;
using RealMatrix = std::vector<std::vector<double>>;

/// Inputs of the hypergeometric series in the k x n variables x_ij.
struct SeriesParams {
    int k = 0, n = 0;
    std::vector<double> alpha;                 // length k+n+2, sum 0
    RealMatrix x;                              // k x n
    std::optional<std::pair<int, int>> zero;   // 0-based cell forced to zero
    int truncation = 24;                       // total degree M
    double radius = 0.25;                      // guard on |x_ij|

    void validate() const {
        if (alpha.size() != static_cast<std::size_t>(k + n + 2)) throw std::invalid_argument("alpha must have k+n+2 entries");
        if (x.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("x must have k rows");
        for (int i = 0; i < k; ++i) {
            if (x[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n)) throw std::invalid_argument("x must have n columns");
            for (int j = 0; j < n; ++j) {
                double v = x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (!(std::abs(v) < radius)) throw std::invalid_argument("x entry outside the convergence guard");
            }
        }
        for (double a : alpha)
            if (a == std::round(a)) throw std::invalid_argument("alpha entries must be non-integers");
        if (truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
    }
};

/// 1/Gamma_m(alpha), computed as a product of reciprocal gammas.
inline double rgamma_m(const std::vector<double>& alpha, const IntMatrix& m, int k, int n) {
    auto a = [&](int j) { return alpha[static_cast<std::size_t>(j)]; };
    auto mm = [&](int i, int j) { return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    double r = 1.0;
    int total = 0;
    for (int i = 0; i < k; ++i) {
        int row = 0;
        for (int j = 0; j < n; ++j) row += mm(i, j);
        total += row;
        r *= rgamma(-a(i + 1) - row + 1.0);
    }
    for (int j = 0; j < n; ++j) {
        int col = 0;
        for (int i = 0; i < k; ++i) col += mm(i, j);
        r *= rgamma(a(k + j + 1) - col + 1.0);
    }
    double s = a(k + n + 1);
    for (int i = 1; i <= k; ++i) s += a(i);
    r *= rgamma(s + total + 1.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) r *= rgamma(mm(i, j) + 1.0);
    return r;
}

/// Gamma_m(alpha) for a nonnegative integer k x n matrix m.
inline double gamma_m(const std::vector<double>& alpha, const IntMatrix& m, int k, int n) {
    return 1.0 / rgamma_m(alpha, m, k, n);
}

namespace detail {

/// Visits every m with |m| <= M in ascending total degree (the zero cell, if
/// any, is pinned to 0). The callback receives (m, degree).
inline void for_each_multi_index(const SeriesParams& p, const std::function<void(const IntMatrix&, int)>& f) {
    int cells = p.k * p.n;
    IntMatrix m(static_cast<std::size_t>(p.k), std::vector<int>(static_cast<std::size_t>(p.n), 0));
    auto is_zero_cell = [&](int c) { return p.zero && p.zero->first == c / p.n && p.zero->second == c % p.n; };
    for (int deg = 0; deg <= p.truncation; ++deg) {
        auto rec = [&](auto&& self, int c, int left) -> void {
            if (c == cells) {
                if (left == 0) f(m, deg);
                return;
            }
            auto& slot = m[static_cast<std::size_t>(c / p.n)][static_cast<std::size_t>(c % p.n)];
            int hi = is_zero_cell(c) ? 0 : left;
            for (int v = 0; v <= hi; ++v) {
                slot = v;
                self(self, c + 1, left - v);
            }
            slot = 0;
        };
        rec(rec, 0, deg);
    }
}

inline double monomial(const SeriesParams& p, const IntMatrix& m) {
    double t = 1.0;
    for (int i = 0; i < p.k; ++i)
        for (int j = 0; j < p.n; ++j) {
            int e = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (e) t *= std::pow(p.x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], e);
        }
    return t;
}

}  // namespace detail

struct SeriesValue {
    double value = 0.0;
    double tail = 0.0;                // magnitude of the last degree shell
    std::vector<double> shells;       // signed shell sums
    std::vector<double> magnitudes;   // sum of |term| per shell
};

/// Truncated S(alpha; x) summed shell by shell in ascending degree.
inline SeriesValue series_S(const SeriesParams& p) {
    p.validate();
    SeriesValue r;
    r.shells.assign(static_cast<std::size_t>(p.truncation + 1), 0.0);
    r.magnitudes = r.shells;
    detail::for_each_multi_index(p, [&](const IntMatrix& m, int deg) {
        double t = detail::monomial(p, m) * rgamma_m(p.alpha, m, p.k, p.n);
        r.shells[static_cast<std::size_t>(deg)] += t;
        r.magnitudes[static_cast<std::size_t>(deg)] += std::abs(t);
    });
    for (double s : r.shells) r.value += s;
    r.tail = r.magnitudes.back();
    return r;
}

/// The 5-vector for k = n = 2 with x_11 = 0, on the basis <012>, <013>,
/// <014>, <024>, <034>.
inline std::vector<double> bold_s(const SeriesParams& p) {
    if (p.k != 2 || p.n != 2 || !p.zero || *p.zero != std::pair<int, int>{0, 0})
        throw std::invalid_argument("bold S is implemented for k = n = 2 with x_11 = 0 only");
    p.validate();
    double a3 = p.alpha[3], a4 = p.alpha[4];
    // same shell-by-shell order as series_S, so entry 0 agrees bit for bit
    std::vector<std::vector<double>> shells(static_cast<std::size_t>(p.truncation + 1), std::vector<double>(5, 0.0));
    detail::for_each_multi_index(p, [&](const IntMatrix& m, int deg) {
        double t = detail::monomial(p, m) * rgamma_m(p.alpha, m, p.k, p.n);
        double m12 = m[0][1], m21 = m[1][0], m22 = m[1][1];
        auto& s = shells[static_cast<std::size_t>(deg)];
        s[0] += t;
        s[1] += m21 * t / a3;
        s[2] += m22 * t / a4;
        s[3] -= m12 * t / a4;
        s[4] -= m12 * m21 * t / (a3 * a4);
    });
    std::vector<double> s(5, 0.0);
    for (const auto& sh : shells)
        for (std::size_t i = 0; i < 5; ++i) s[i] += sh[i];
    return s;
}

/// max_i |S(alpha^(l))_i - scale * (conti . S(alpha))_i| with alpha^(l) =
/// alpha + e_l - e_0; scale is 1 for l <= k and 1/(alpha_l + 1) otherwise.
inline double check_contiguity(const SeriesParams& p, int l, const RealMatrix& conti) {
    if (l < 1 || l > p.k + p.n + 1) throw std::invalid_argument("shift index out of range");
    std::vector<double> s = bold_s(p);
    if (conti.size() != s.size()) throw std::invalid_argument("contiguity matrix shape mismatch");
    SeriesParams ps = p;
    ps.alpha[static_cast<std::size_t>(l)] += 1.0;
    ps.alpha[0] -= 1.0;
    std::vector<double> sl = bold_s(ps);
    double scale = l <= p.k ? 1.0 : 1.0 / (p.alpha[static_cast<std::size_t>(l)] + 1.0);
    double res = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (conti[i].size() != s.size()) throw std::invalid_argument("contiguity matrix shape mismatch");
        double acc = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) acc += conti[i][j] * s[j];
        res = std::max(res, std::abs(sl[i] - scale * acc));
    }
    return res;
}

}  // namespace twint
