#pragma once

#include <algorithm>
#include <vector>

#include "twint/rational.hpp"

namespace twint {

/// a . t + b > 0 (strict) or a . t + b >= 0.
struct Inequality {
    std::vector<Rat> a;
    Rat b;
    bool strict = true;
};

namespace detail {

inline void scale_to_unit(Inequality& q) {
    Rat m = 0;
    for (const auto& x : q.a) m = std::max(m, Rat(abs(x)));
    if (sgn(m) == 0) m = abs(q.b);
    if (sgn(m) == 0) return;
    for (auto& x : q.a) x /= m;
    q.b /= m;
}

inline bool same_inequality(const Inequality& x, const Inequality& y) {
    return x.strict == y.strict && x.b == y.b && x.a == y.a;
}

}  // namespace detail

/// Exact Fourier-Motzkin feasibility test for a mixed strict / non-strict
/// system in `dim` real variables.
inline bool feasible(std::vector<Inequality> sys, std::size_t dim) {
    for (auto& q : sys) detail::scale_to_unit(q);
    for (std::size_t v = dim; v-- > 0;) {
        std::vector<Inequality> pos, neg, rest;
        for (auto& q : sys) {
            int s = sgn(q.a[v]);
            (s > 0 ? pos : s < 0 ? neg : rest).push_back(std::move(q));
        }
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                Inequality c;
                c.a.resize(v);
                Rat wp = -n.a[v], wn = p.a[v];
                for (std::size_t i = 0; i < v; ++i) c.a[i] = wp * p.a[i] + wn * n.a[i];
                c.b = wp * p.b + wn * n.b;
                c.strict = p.strict || n.strict;
                detail::scale_to_unit(c);
                if (std::none_of(rest.begin(), rest.end(), [&](const Inequality& r) { return detail::same_inequality(r, c); }))
                    rest.push_back(std::move(c));
            }
        }
        for (auto& q : rest) q.a.resize(v);
        sys = std::move(rest);
    }
    for (const auto& q : sys) {
        int s = sgn(q.b);
        if (q.strict ? s <= 0 : s < 0) return false;
    }
    return true;
}

}  // namespace twint
