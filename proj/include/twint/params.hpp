#pragma once

#include <cctype>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twint/ratfunc.hpp"

namespace twint {

enum class ParamKind { Alpha, Lambda };

/// Parameter field for a (k, n) problem: symbols x_0..x_{k+n+1} where the last
/// one is eliminated at construction (alpha: minus the sum of the others,
/// lambda: the reciprocal of their product). Only x_0..x_{k+n} are free
/// polynomial variables.
class ParamContext {
public:
    static constexpr long kPrime = 1000003;

    ParamContext(int k, int n, ParamKind kind = ParamKind::Alpha) : k_(k), n_(n), kind_(kind) {
        if (k < 1 || n < 1) throw std::invalid_argument("k and n must be positive");
        for (std::size_t j = 0; j < nfree(); ++j) names_.push_back(prefix() + std::to_string(j));
    }

    int k() const { return k_; }
    int n() const { return n_; }
    ParamKind kind() const { return kind_; }
    std::size_t nfree() const { return static_cast<std::size_t>(k_ + n_ + 1); }
    std::size_t size() const { return nfree() + 1; }
    const std::vector<std::string>& names() const { return names_; }
    std::string prefix() const { return kind_ == ParamKind::Alpha ? "a" : "l"; }

    RatFunc var(std::size_t j) const {
        if (j < nfree()) return RatFunc(Poly::variable(nfree(), j));
        if (j != nfree()) throw std::out_of_range("parameter index out of range");
        if (kind_ == ParamKind::Alpha) {
            Poly s(nfree());
            for (std::size_t i = 0; i < nfree(); ++i) s -= Poly::variable(nfree(), i);
            return RatFunc(s);
        }
        return RatFunc(Poly::monomial(Exponents(nfree(), 1), Rat(1))).inverse();
    }

    /// All k+n+2 symbols, the last one eliminated.
    std::vector<RatFunc> symbols() const {
        std::vector<RatFunc> s;
        for (std::size_t j = 0; j < size(); ++j) s.push_back(var(j));
        return s;
    }

    RatFunc dualize(const RatFunc& f) const {
        return kind_ == ParamKind::Alpha ? f.negated_variables() : f.reciprocal_variables();
    }

    std::string format(const RatFunc& f) const { return f.to_string(names_); }

    /// Parses text such as "(a1*a2 - 1)/(a0^2 + 3/4*a5)". Every symbol
    /// x_0..x_{k+n+1} is accepted; the last one is substituted.
    RatFunc parse(std::string_view text) const {
        Parser p{*this, text, 0};
        RatFunc r = p.expr();
        p.skip();
        if (p.pos != text.size()) p.fail("unexpected character");
        return r;
    }

    /// Random exact point of length k+n+2 on the hyperplane sum = 0 (alpha) or
    /// product = 1 (lambda). Alpha entries are a/Q with a in [1, Q-1]; draws
    /// where the last entry or the sum over `jvan` is an integer are redrawn.
    std::vector<Rat> random_point(std::uint64_t seed, std::span<const int> jvan = {}) const {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> dist(1, kPrime - 1);
        for (;;) {
            std::vector<Rat> x(size());
            Rat acc = 0;
            for (std::size_t j = 0; j < nfree(); ++j) {
                x[j] = Rat(dist(rng), kPrime);
                x[j].canonicalize();
            }
            if (kind_ == ParamKind::Alpha) {
                for (std::size_t j = 0; j < nfree(); ++j) acc += x[j];
                x[nfree()] = -acc;
                if (x[nfree()].get_den() == 1) continue;
                Rat s = 0;
                for (int j : jvan) s += x[static_cast<std::size_t>(j)];
                if (!jvan.empty() && s.get_den() == 1) continue;
            } else {
                acc = 1;
                for (std::size_t j = 0; j < nfree(); ++j) acc *= x[j];
                x[nfree()] = Rat(1) / acc;
            }
            return x;
        }
    }

    Rat eval(const RatFunc& f, std::span<const Rat> point) const {
        return f.evaluate(point.subspan(0, nfree()));
    }

private:
    struct Parser {
        const ParamContext& ctx;
        std::string_view s;
        std::size_t pos;

        [[noreturn]] void fail(const std::string& what) const {
            throw std::invalid_argument("rational function parse error at " + std::to_string(pos) + ": " + what);
        }
        void skip() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        RatFunc expr() {
            skip();
            RatFunc acc;
            if (eat('-')) acc = -term();
            else {
                eat('+');
                acc = term();
            }
            for (;;) {
                if (eat('+')) acc = acc + term();
                else if (eat('-')) acc = acc - term();
                else return acc;
            }
        }
        RatFunc term() {
            RatFunc acc = power();
            for (;;) {
                if (eat('*')) acc = acc * power();
                else if (eat('/')) acc = divide(std::move(acc));
                else return acc;
            }
        }
        // A parenthesized product divisor is divided out one factor at a time
        // so that the printed factor structure of a denominator survives.
        RatFunc divide(RatFunc acc) {
            std::size_t save = pos;
            if (eat('(')) {
                std::vector<std::pair<RatFunc, int>> parts{power_parts()};
                while (eat('*')) parts.push_back(power_parts());
                if (eat(')') && !peek('^')) {
                    for (const auto& [b, e] : parts) acc = divide_power(std::move(acc), b, e);
                    return acc;
                }
                pos = save;
            }
            auto [b, e] = power_parts();
            return divide_power(std::move(acc), b, e);
        }
        static RatFunc divide_power(RatFunc acc, const RatFunc& b, int e) {
            if (e < 0) {
                for (int i = 0; i < -e; ++i) acc = acc * b;
            } else {
                for (int i = 0; i < e; ++i) acc = acc / b;
            }
            return acc;
        }
        bool peek(char c) {
            skip();
            return pos < s.size() && s[pos] == c;
        }
        std::pair<RatFunc, int> power_parts() {
            RatFunc base = atom();
            if (!eat('^')) return {base, 1};
            bool neg = eat('-');
            std::size_t d = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == d) fail("expected exponent");
            int e = std::stoi(std::string(s.substr(d, pos - d)));
            return {base, neg ? -e : e};
        }
        RatFunc power() {
            auto [base, e] = power_parts();
            RatFunc r(1);
            for (int i = 0; i < std::abs(e); ++i) r = r * base;
            return e < 0 ? r.inverse() : r;
        }
        RatFunc atom() {
            skip();
            if (eat('(')) {
                RatFunc r = expr();
                if (!eat(')')) fail("expected ')'");
                return r;
            }
            if (eat('-')) return -atom();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::size_t b = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                return RatFunc(Rat(mpz_class(std::string(s.substr(b, pos - b)), 10)));
            }
            if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
                std::size_t b = pos;
                while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
                std::string_view name = s.substr(b, pos - b);
                if (name != ctx.prefix()) fail("unknown symbol '" + std::string(name) + "'");
                std::size_t d = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos == d) fail("symbol without index");
                std::size_t j = std::stoul(std::string(s.substr(d, pos - d)));
                if (j >= ctx.size()) fail("symbol index out of range");
                return ctx.var(j);
            }
            fail("unexpected input");
        }
    };

    int k_, n_;
    ParamKind kind_;
    std::vector<std::string> names_;
};

}  // namespace twint
