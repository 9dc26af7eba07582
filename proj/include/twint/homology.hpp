#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "twint/arrangement.hpp"
#include "twint/fourier_motzkin.hpp"
#include "twint/params.hpp"

namespace twint {

/// A chamber of the real arrangement, identified by the signs of L_1..L_{k+n+1}
/// (e.g. "+--+-").
struct Chamber {
    std::string id;
    bool bounded = false;

    friend bool operator==(const Chamber& a, const Chamber& b) { return a.id == b.id; }
};

namespace detail {

inline std::vector<Inequality> sign_system(const CoeffMatrix& z, const std::string& id, bool strict) {
    std::vector<Inequality> sys;
    for (int j = 1; j <= z.k() + z.n() + 1; ++j) {
        int s = id.at(static_cast<std::size_t>(j - 1)) == '+' ? 1 : -1;
        Inequality q;
        for (int i = 1; i <= z.k(); ++i) q.a.push_back(z(i, j) * s);
        q.b = z(0, j) * s;
        q.strict = strict;
        sys.push_back(std::move(q));
    }
    return sys;
}

inline std::string id_from_mask(unsigned long mask, int m) {
    std::string id(static_cast<std::size_t>(m), '-');
    for (int j = 0; j < m; ++j)
        if (mask & (1ul << j)) id[static_cast<std::size_t>(j)] = '+';
    return id;
}

inline unsigned thread_count() {
    if (const char* e = std::getenv("TWINT_THREADS")) {
        int v = std::atoi(e);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? std::min(h, 8u) : 1u;
}

}  // namespace detail

inline bool chamber_feasible(const CoeffMatrix& z, const std::string& id) {
    return feasible(detail::sign_system(z, id, true), static_cast<std::size_t>(z.k()));
}

/// Bounded iff the recession cone {s_j a_j . d >= 0} is {0}.
inline bool chamber_bounded(const CoeffMatrix& z, const std::string& id) {
    auto cone = detail::sign_system(z, id, false);
    for (auto& q : cone) q.b = 0;
    for (int i = 0; i < z.k(); ++i) {
        for (int s : {1, -1}) {
            auto sys = cone;
            Inequality d;
            d.a.assign(static_cast<std::size_t>(z.k()), Rat(0));
            d.a[static_cast<std::size_t>(i)] = s;
            d.b = -1;
            d.strict = false;
            sys.push_back(d);
            if (feasible(sys, static_cast<std::size_t>(z.k()))) return false;
        }
    }
    return true;
}

/// Whether the closures of two chambers meet.
inline bool closures_meet(const CoeffMatrix& z, const std::string& a, const std::string& b) {
    auto sys = detail::sign_system(z, a, false);
    auto sb = detail::sign_system(z, b, false);
    sys.insert(sys.end(), sb.begin(), sb.end());
    return feasible(sys, static_cast<std::size_t>(z.k()));
}

/// All chambers of the real arrangement, ordered by sign mask. Candidate sign
/// vectors are tested in parallel (thread count from TWINT_THREADS).
inline std::vector<Chamber> enumerate_chambers(const CoeffMatrix& z, unsigned threads = 0) {
    int m = z.k() + z.n() + 1;
    unsigned long total = 1ul << m;
    std::vector<std::optional<Chamber>> slot(total);
    if (threads == 0) threads = detail::thread_count();
    threads = static_cast<unsigned>(std::min<unsigned long>(threads, total));
    auto work = [&](unsigned tid) {
        for (unsigned long mask = tid; mask < total; mask += threads) {
            std::string id = detail::id_from_mask(mask, m);
            if (chamber_feasible(z, id)) slot[mask] = Chamber{id, chamber_bounded(z, id)};
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& t : pool) t.join();
    std::vector<Chamber> out;
    for (auto& s : slot)
        if (s) out.push_back(std::move(*s));
    return out;
}

inline long bounded_count(const std::vector<Chamber>& cs) {
    return std::count_if(cs.begin(), cs.end(), [](const Chamber& c) { return c.bounded; });
}

/// The chamber of the generic z whose sign vector is not realized by z0.
inline Chamber vanishing_chamber(const CoeffMatrix&, const CoeffMatrix& z0, const std::vector<Chamber>& chambers) {
    std::vector<Chamber> lost;
    for (const auto& c : chambers)
        if (!chamber_feasible(z0, c.id)) lost.push_back(c);
    if (lost.size() != 1) throw std::runtime_error("vanishing chamber not found (perturbation too coarse?)");
    return lost.front();
}

inline Chamber vanishing_chamber(const CoeffMatrix& z, const CoeffMatrix& z0) {
    return vanishing_chamber(z, z0, enumerate_chambers(z));
}

struct OrthComplement {
    std::vector<Chamber> perp;
    std::optional<Chamber> exceptional;
};

/// Bounded chambers orthogonal to the vanishing chamber. If 0 is in J^van the
/// vanishing chamber is unbounded and the complement is the set of bounded
/// chambers whose closure misses it; exactly one bounded chamber touches it at
/// its vertex. Otherwise the vanishing chamber itself is bounded and is the
/// one removed.
inline OrthComplement orth_complement(const CoeffMatrix& z, const std::vector<Chamber>& chambers, const Chamber& van,
                                      const IndexTuple& jvan) {
    OrthComplement r;
    bool at_infinity = contains(jvan, 0);
    for (const auto& c : chambers) {
        if (!c.bounded || c == van) continue;
        if (at_infinity && closures_meet(z, c.id, van.id)) {
            if (r.exceptional) throw std::runtime_error("more than one bounded chamber touches the vanishing chamber");
            r.exceptional = c;
        } else {
            r.perp.push_back(c);
        }
    }
    if (at_infinity && !r.exceptional) throw std::runtime_error("no bounded chamber touches the vanishing chamber");
    return r;
}

/// Same sign vector read against z0; nullopt when it is empty there.
inline std::optional<Chamber> limit_chamber(const Chamber& c, const CoeffMatrix& z0) {
    if (!chamber_feasible(z0, c.id)) return std::nullopt;
    return Chamber{c.id, chamber_bounded(z0, c.id)};
}

/// Table of intersection numbers of loaded chambers of a generic arrangement,
/// keyed by "id:side|id:side" with side '+' or '-'.
class PairingOracle {
public:
    explicit PairingOracle(ParamContext ctx) : ctx_(std::move(ctx)) {}

    static PairingOracle from_json(const nlohmann::json& j) {
        ParamKind kind = j.value("kind", "lambda") == "alpha" ? ParamKind::Alpha : ParamKind::Lambda;
        PairingOracle o(ParamContext(j.at("k").get<int>(), j.at("n").get<int>(), kind));
        for (const auto& [key, text] : j.at("values").items()) o.values_.emplace(key, o.ctx_.parse(text.get<std::string>()));
        return o;
    }

    static std::string key(const std::string& a, char sa, const std::string& b, char sb) {
        return a + ":" + sa + "|" + b + ":" + sb;
    }

    const ParamContext& context() const { return ctx_; }

    void set(const std::string& a, const std::string& b, RatFunc v) { values_[key(a, '+', b, '-')] = std::move(v); }

    const RatFunc& at(const std::string& a, char sa, const std::string& b, char sb) const {
        auto it = values_.find(key(a, sa, b, sb));
        if (it == values_.end()) throw std::out_of_range("pairing oracle has no entry for " + key(a, sa, b, sb));
        return it->second;
    }

    /// (+ side, - side) pairing.
    const RatFunc& operator()(const std::string& a, const std::string& b) const { return at(a, '+', b, '-'); }

private:
    ParamContext ctx_;
    std::map<std::string, RatFunc> values_;
};

/// Degenerate homology pairing of sigma (+ side) and tau (- side) through the
/// projection away from the vanishing cycle.
inline RatFunc pairing_degenerate_h(const std::string& sigma, const std::string& tau, const std::string& van,
                                    const PairingOracle& o) {
    const RatFunc& vv = o(van, van);
    if (vv.is_zero()) throw std::domain_error("vanishing cycle self-intersection is zero");
    return o(sigma, tau) - o(sigma, van) * o(van, tau) / vv;
}

}  // namespace twint
