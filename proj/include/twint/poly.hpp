#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twint/rational.hpp"

namespace twint {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in lexicographically descending exponent order, so the
/// first term is the lex-leading term. A polynomial with `nvars() == 0` is a
/// context-free constant and is lifted to the arity of the other operand in
/// mixed arithmetic.
class Poly {
public:
    struct LexGreater {
        bool operator()(const Exponents& a, const Exponents& b) const { return a > b; }
    };
    using TermMap = std::map<Exponents, Rat, LexGreater>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}
    Poly(std::size_t nvars, const Rat& c) : nvars_(nvars) {
        if (!twint::is_zero(c)) terms_.emplace(Exponents(nvars, 0), c);
    }

    static Poly constant(const Rat& c) { return Poly(0, c); }

    static Poly variable(std::size_t nvars, std::size_t i) {
        Exponents e(nvars, 0);
        e.at(i) = 1;
        Poly p(nvars);
        p.terms_.emplace(std::move(e), Rat(1));
        return p;
    }

    static Poly monomial(Exponents e, const Rat& c) {
        Poly p(e.size());
        if (!twint::is_zero(c)) p.terms_.emplace(std::move(e), c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const auto& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    bool is_monomial() const { return terms_.size() == 1; }

    Rat constant_value() const {
        assert(is_constant());
        return terms_.empty() ? Rat(0) : terms_.begin()->second;
    }

    const Exponents& leading_exponents() const { return terms_.begin()->first; }
    const Rat& leading_coefficient() const { return terms_.begin()->second; }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    /// Returns this polynomial with arity `nvars`. Only constants may change arity.
    Poly lifted(std::size_t nvars) const {
        if (nvars == nvars_) return *this;
        if (nvars_ != 0) throw std::logic_error("polynomial arity mismatch");
        return Poly(nvars, constant_value());
    }

    void add_term(const Exponents& e, const Rat& c) {
        if (twint::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (twint::is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        unify_with(o);
        for (const auto& [e, c] : o.terms_) add_term(lift_exponents(e), c);
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        unify_with(o);
        for (const auto& [e, c] : o.terms_) add_term(lift_exponents(e), -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        std::size_t nv = std::max(a.nvars_, b.nvars_);
        const Poly& x = a.nvars_ == nv ? a : b;
        const Poly& y = a.nvars_ == nv ? b : a;
        if (y.nvars_ != nv && y.nvars_ != 0) throw std::logic_error("polynomial arity mismatch");
        Poly r(nv);
        if (y.nvars_ == 0) {
            if (y.is_zero()) return r;
            Rat s = y.constant_value();
            for (const auto& [e, c] : x.terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
            return r;
        }
        Exponents sum(nv);
        for (const auto& [ea, ca] : x.terms_) {
            for (const auto& [eb, cb] : y.terms_) {
                for (std::size_t i = 0; i < nv; ++i) sum[i] = ea[i] + eb[i];
                r.add_term(sum, ca * cb);
            }
        }
        return r;
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Rat& s) const {
        if (twint::is_zero(s)) return Poly(nvars_);
        Poly r = *this;
        for (auto& [e, c] : r.terms_) c *= s;
        return r;
    }

    Poly times_monomial(const Exponents& m) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents s = e;
            for (std::size_t i = 0; i < nvars_; ++i) s[i] += m[i];
            r.terms_.emplace_hint(r.terms_.end(), std::move(s), c);
        }
        return r;
    }

    /// Divides by the monomial x^m; every term must be divisible.
    Poly divided_by_monomial(const Exponents& m) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents s = e;
            for (std::size_t i = 0; i < nvars_; ++i) {
                s[i] -= m[i];
                assert(s[i] >= 0);
            }
            r.terms_.emplace_hint(r.terms_.end(), std::move(s), c);
        }
        return r;
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    Exponents min_exponents() const {
        Exponents m(nvars_, 0);
        if (terms_.empty()) return m;
        m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
        return m;
    }

    /// Componentwise maximum exponent over all terms.
    Exponents max_exponents() const {
        Exponents m(nvars_, 0);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::max(m[i], e[i]);
        return m;
    }

    /// Rational content: gcd of numerators over lcm of denominators, signed so
    /// that the primitive part has a positive leading coefficient.
    Rat content() const {
        if (terms_.empty()) return Rat(1);
        mpz_class g = 0, l = 1;
        for (const auto& [e, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        }
        Rat r(g, l);
        r.canonicalize();
        if (sgn(leading_coefficient()) < 0) r = -r;
        return r;
    }

    /// Exact division. Returns nullopt when `d` does not divide this polynomial.
    std::optional<Poly> divide_exact(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::size_t nv = std::max(nvars_, d.nvars_);
        Poly rem = lifted_to(nv);
        Poly div = d.lifted_to(nv);
        Poly quot(nv);
        const Exponents& ld = div.leading_exponents();
        const Rat& lc = div.leading_coefficient();
        Exponents qe(nv);
        while (!rem.is_zero()) {
            const Exponents& lr = rem.leading_exponents();
            for (std::size_t i = 0; i < nv; ++i) {
                qe[i] = lr[i] - ld[i];
                if (qe[i] < 0) return std::nullopt;
            }
            Rat qc = rem.leading_coefficient() / lc;
            quot.add_term(qe, qc);
            for (const auto& [e, c] : div.terms_) {
                Exponents s = e;
                for (std::size_t i = 0; i < nv; ++i) s[i] += qe[i];
                rem.add_term(s, -c * qc);
            }
        }
        return quot;
    }

    Rat evaluate(std::span<const Rat> x) const {
        Rat acc = 0;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                Rat p;
                mpz_pow_ui(p.get_num_mpz_t(), x[i].get_num_mpz_t(), static_cast<unsigned long>(e[i]));
                mpz_pow_ui(p.get_den_mpz_t(), x[i].get_den_mpz_t(), static_cast<unsigned long>(e[i]));
                t *= p;
            }
            acc += t;
        }
        return acc;
    }

    /// p(-x).
    Poly negated_variables() const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            int deg = 0;
            for (int x : e) deg += x;
            r.terms_.emplace_hint(r.terms_.end(), e, (deg % 2) ? Rat(-c) : c);
        }
        return r;
    }

    /// x^E * p(1/x) for E >= max_exponents(); the result is again a polynomial.
    Poly reflected(const Exponents& E) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents s(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) s[i] = E[i] - e[i];
            r.add_term(s, c);
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.nvars_ != b.nvars_) {
            if (a.is_constant() && b.is_constant()) return a.constant_value() == b.constant_value();
            return false;
        }
        return a.terms_ == b.terms_;
    }

    /// Total order used to keep factor lists canonical.
    friend std::weak_ordering compare(const Poly& a, const Poly& b) {
        if (a.terms_.size() != b.terms_.size())
            return a.terms_.size() < b.terms_.size() ? std::weak_ordering::less : std::weak_ordering::greater;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib) {
            if (ia->first != ib->first)
                return ia->first > ib->first ? std::weak_ordering::less : std::weak_ordering::greater;
            int c = cmp(ia->second, ib->second);
            if (c != 0) return c < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
        }
        return std::weak_ordering::equivalent;
    }

    /// Canonical text: terms in lex-descending order, explicit exponents.
    std::string to_string(std::span<const std::string> names) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            bool is_const = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
            Rat mag = abs(c);
            if (first) {
                if (sgn(c) < 0) out += "-";
            } else {
                out += sgn(c) < 0 ? " - " : " + ";
            }
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (is_const) {
                out += twint::to_string(mag);
            } else if (mag == 1) {
                out += mono;
            } else {
                out += twint::to_string(mag) + "*" + mono;
            }
        }
        return out;
    }

private:
    void unify_with(const Poly& o) {
        if (nvars_ == o.nvars_ || o.nvars_ == 0) return;
        if (nvars_ != 0) throw std::logic_error("polynomial arity mismatch");
        *this = lifted(o.nvars_);
    }

    Exponents lift_exponents(const Exponents& e) const {
        if (e.size() == nvars_) return e;
        return Exponents(nvars_, 0);  // a context-free constant term
    }

    Poly lifted_to(std::size_t nv) const { return nvars_ == nv ? *this : lifted(nv); }

    std::size_t nvars_ = 0;
    TermMap terms_;
};

}  // namespace twint
