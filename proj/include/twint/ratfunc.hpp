#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twint/poly.hpp"
#include "twint/rational.hpp"

namespace twint {

/// Raised when a rational function is evaluated at a pole.
class DenominatorVanishes : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact rational function numer / denom over Q.
///
/// No multivariate gcd is ever computed. The denominator is stored as a
/// monomial times a sorted multiset of primitive non-monomial factors; factors
/// are split against each other whenever one divides another, and a factor is
/// cancelled from the numerator whenever it divides it exactly. This keeps the
/// usual sums of intersection numbers small without factorization, and
/// equality is decided by subtracting and testing the numerator for zero.
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(const Rat& c) : num_(Poly::constant(c)) {}  // NOLINT(implicit)
    RatFunc(int c) : RatFunc(Rat(c)) {}                  // NOLINT(implicit)
    explicit RatFunc(Poly p) : num_(std::move(p)), mono_(num_.nvars(), 0) {}

    static RatFunc fraction(const Poly& num, const Poly& den) {
        return RatFunc(num) * RatFunc(den).inverse();
    }

    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    const Poly& numerator() const { return num_; }
    const Exponents& denominator_monomial() const { return mono_; }
    const std::vector<Poly>& denominator_factors() const { return factors_; }

    Poly denominator() const {
        Poly d = Poly::monomial(mono_, Rat(1));
        for (const auto& f : factors_) d = d * f;
        return d;
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add(a, b, false); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add(a, b, true); }

    friend RatFunc operator*(const RatFunc& a0, const RatFunc& b0) {
        if (a0.is_zero() || b0.is_zero()) return RatFunc(Poly(std::max(a0.nvars(), b0.nvars())));
        std::size_t nv = std::max(a0.nvars(), b0.nvars());
        RatFunc a = a0.lifted(nv);
        const RatFunc b = b0.lifted(nv);
        a.num_ = a.num_ * b.num_;
        for (std::size_t i = 0; i < nv; ++i) a.mono_[i] += b.mono_[i];
        for (const auto& f : b.factors_) a.insert_factor(f);
        a.normalize();
        return a;
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inverse() const {
        if (is_zero()) throw std::domain_error("division by the zero rational function");
        RatFunc r;
        r.num_ = denominator().lifted(nvars());
        r.mono_.assign(nvars(), 0);
        r.absorb_denominator(num_);
        r.normalize();
        return r;
    }

    /// f(-x).
    RatFunc negated_variables() const {
        RatFunc r = *this;
        r.num_ = num_.negated_variables();
        int deg = 0;
        for (int e : mono_) deg += e;
        if (deg % 2) r.num_ = -r.num_;
        for (auto& f : r.factors_) {
            f = f.negated_variables();
            if (sgn(f.leading_coefficient()) < 0) {
                f = -f;
                r.num_ = -r.num_;
            }
        }
        r.sort_factors();
        return r;
    }

    /// f(1/x), re-expressed as a fraction of polynomials.
    RatFunc reciprocal_variables() const {
        std::size_t nv = nvars();
        if (nv == 0) return *this;
        Exponents shift = mono_;
        Exponents en = num_.max_exponents();
        for (std::size_t i = 0; i < nv; ++i) shift[i] -= en[i];
        std::vector<Poly> reflected_factors;
        for (const auto& f : factors_) {
            Exponents ef = f.max_exponents();
            for (std::size_t i = 0; i < nv; ++i) shift[i] += ef[i];
            reflected_factors.push_back(f.reflected(ef));
        }
        Exponents up(nv, 0), down(nv, 0);
        for (std::size_t i = 0; i < nv; ++i) (shift[i] >= 0 ? up[i] : down[i]) = std::abs(shift[i]);
        RatFunc r;
        r.num_ = num_.reflected(en).times_monomial(up);
        r.mono_ = down;
        for (auto& f : reflected_factors) r.absorb_denominator(f);
        r.normalize();
        return r;
    }

    Rat evaluate(std::span<const Rat> x) const {
        Rat den = 1;
        for (std::size_t i = 0; i < mono_.size(); ++i) {
            for (int e = 0; e < mono_[i]; ++e) den *= x[i];
        }
        for (const auto& f : factors_) den *= f.evaluate(x);
        if (sgn(den) == 0) throw DenominatorVanishes("rational function evaluated at a pole");
        return num_.evaluate(x) / den;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

    /// Canonical text. Numerator terms are lex-sorted; the denominator is the
    /// monomial part followed by the sorted factor list.
    std::string to_string(std::span<const std::string> names) const {
        std::string n = num_.to_string(names);
        std::vector<std::string> parts;
        std::string m;
        for (std::size_t i = 0; i < mono_.size(); ++i) {
            if (mono_[i] == 0) continue;
            std::string v = names[i];
            if (mono_[i] > 1) v += "^" + std::to_string(mono_[i]);
            parts.push_back(v);
        }
        for (std::size_t i = 0; i < factors_.size();) {
            std::size_t j = i;
            while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
            std::string f = "(" + factors_[i].to_string(names) + ")";
            if (j - i > 1) f += "^" + std::to_string(j - i);
            parts.push_back(f);
            i = j;
        }
        if (parts.empty()) return n;
        std::string d;
        for (std::size_t i = 0; i < parts.size(); ++i) d += (i ? "*" : "") + parts[i];
        if (parts.size() > 1) d = "(" + d + ")";
        if (num_.term_count() > 1) n = "(" + n + ")";
        return n + "/" + d;
    }

private:
    RatFunc lifted(std::size_t nv) const {
        if (nvars() == nv) return *this;
        RatFunc r;
        r.num_ = num_.lifted(nv);
        r.mono_.assign(nv, 0);
        return r;
    }

    static RatFunc add(const RatFunc& a0, const RatFunc& b0, bool subtract) {
        std::size_t nv = std::max(a0.nvars(), b0.nvars());
        const RatFunc a = a0.lifted(nv);
        const RatFunc b = b0.lifted(nv);
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;

        std::vector<Poly> fa = a.factors_, fb = b.factors_;
        refine_pair(fa, fb);
        sort_polys(fa);
        sort_polys(fb);

        RatFunc r;
        r.mono_.assign(nv, 0);
        Exponents ca(nv), cb(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            r.mono_[i] = std::max(a.mono_[i], b.mono_[i]);
            ca[i] = r.mono_[i] - a.mono_[i];
            cb[i] = r.mono_[i] - b.mono_[i];
        }
        Poly cof_a = Poly::monomial(ca, Rat(1));
        Poly cof_b = Poly::monomial(cb, Rat(1));
        // multiset max of fa and fb; cofactors collect what each side lacks
        std::size_t i = 0, j = 0;
        while (i < fa.size() || j < fb.size()) {
            if (j == fb.size() || (i < fa.size() && compare(fa[i], fb[j]) < 0)) {
                r.factors_.push_back(fa[i]);
                cof_b = cof_b * fa[i];
                ++i;
            } else if (i == fa.size() || compare(fb[j], fa[i]) < 0) {
                r.factors_.push_back(fb[j]);
                cof_a = cof_a * fb[j];
                ++j;
            } else {
                r.factors_.push_back(fa[i]);
                ++i;
                ++j;
            }
        }
        Poly rhs = b.num_ * cof_b;
        r.num_ = a.num_ * cof_a;
        if (subtract) r.num_ -= rhs; else r.num_ += rhs;
        r.normalize();
        return r;
    }

    /// Rewrites the two factor lists so that whenever a factor of one divides
    /// a factor of the other, the larger one is split.
    static void refine_pair(std::vector<Poly>& A, std::vector<Poly>& B) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < A.size() && !changed; ++i) {
                for (std::size_t j = 0; j < B.size() && !changed; ++j) {
                    if (A[i] == B[j]) continue;
                    if (auto q = B[j].divide_exact(A[i]); q && !q->is_constant()) {
                        B[j] = A[i];
                        B.push_back(std::move(*q));
                        changed = true;
                    } else if (auto q2 = A[i].divide_exact(B[j]); q2 && !q2->is_constant()) {
                        A[i] = B[j];
                        A.push_back(std::move(*q2));
                        changed = true;
                    }
                }
            }
        }
    }

    static void sort_polys(std::vector<Poly>& v) {
        std::sort(v.begin(), v.end(), [](const Poly& x, const Poly& y) { return compare(x, y) < 0; });
    }

    void sort_factors() { sort_polys(factors_); }

    /// Moves a nonzero polynomial into the denominator: monomial content goes
    /// to mono_, rational content to the numerator, the rest to factors_.
    void absorb_denominator(Poly p) {
        Exponents m = p.min_exponents();
        for (std::size_t i = 0; i < m.size(); ++i) mono_[i] += m[i];
        p = p.divided_by_monomial(m);
        Rat c = p.content();
        num_ = num_.scaled(Rat(1) / c);
        p = p.scaled(Rat(1) / c);
        if (p.is_constant()) return;
        insert_factor(std::move(p));
        sort_factors();
    }

    /// `f` must be primitive, positive-leading and free of monomial content.
    void insert_factor(Poly f) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const Poly& g = factors_[i];
            if (g == f) continue;
            if (auto q = f.divide_exact(g); q && !q->is_constant()) {
                factors_.push_back(g);
                insert_factor(std::move(*q));
                return;
            }
            if (auto q = g.divide_exact(f); q && !q->is_constant()) {
                Poly old = g;
                std::size_t copies = static_cast<std::size_t>(std::count(factors_.begin(), factors_.end(), old));
                factors_.erase(std::remove(factors_.begin(), factors_.end(), old), factors_.end());
                for (std::size_t c = 0; c < copies; ++c) {
                    factors_.push_back(f);
                    insert_factor(*q);
                }
                factors_.push_back(std::move(f));
                return;
            }
        }
        factors_.push_back(std::move(f));
    }

    void normalize() {
        std::size_t nv = nvars();
        if (mono_.size() != nv) mono_.resize(nv, 0);
        if (num_.is_zero()) {
            mono_.assign(nv, 0);
            factors_.clear();
            return;
        }
        Exponents m = num_.min_exponents();
        bool any = false;
        for (std::size_t i = 0; i < nv; ++i) {
            m[i] = std::min(m[i], mono_[i]);
            any = any || m[i] > 0;
        }
        if (any) {
            num_ = num_.divided_by_monomial(m);
            for (std::size_t i = 0; i < nv; ++i) mono_[i] -= m[i];
        }
        for (std::size_t i = 0; i < factors_.size();) {
            if (auto q = num_.divide_exact(factors_[i])) {
                num_ = std::move(*q);
                factors_.erase(factors_.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                ++i;
            }
        }
        sort_factors();
    }

    Poly num_;
    Exponents mono_;
    std::vector<Poly> factors_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

}  // namespace twint
