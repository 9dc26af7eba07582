#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace twint {

/// Exact rational number, always kept canonical (coprime, positive denominator).
using Rat = mpq_class;

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Parses "p", "-p" or "p/q". Whitespace around the value is ignored.
inline Rat parse_rat(std::string_view text) {
    std::size_t b = text.find_first_not_of(" \t\n\r");
    std::size_t e = text.find_last_not_of(" \t\n\r");
    if (b == std::string_view::npos) {
        throw std::invalid_argument("empty rational literal");
    }
    std::string s(text.substr(b, e - b + 1));
    if (s.front() == '+') s.erase(0, 1);
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(mpz_class(s, 10));
        }
        mpz_class num(s.substr(0, slash), 10);
        mpz_class den(s.substr(slash + 1), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
}

inline std::string to_string(const Rat& r) { return r.get_str(10); }

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace twint
