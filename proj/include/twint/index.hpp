#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace twint {

/// Ordered tuple of distinct column indices <j0 j1 ... jk>. Order matters.
using IndexTuple = std::vector<int>;
using Family = std::vector<IndexTuple>;

inline bool contains(const IndexTuple& J, int j) { return std::find(J.begin(), J.end(), j) != J.end(); }

inline IndexTuple sorted(IndexTuple J) {
    std::sort(J.begin(), J.end());
    return J;
}

inline bool same_set(const IndexTuple& a, const IndexTuple& b) {
    return a.size() == b.size() && sorted(a) == sorted(b);
}

inline int position(const IndexTuple& J, int j) {
    auto it = std::find(J.begin(), J.end(), j);
    if (it == J.end()) throw std::invalid_argument("index not in tuple");
    return static_cast<int>(it - J.begin());
}

/// Sign of the permutation that sorts J ascending.
inline int sort_sign(const IndexTuple& J) {
    int s = 1;
    for (std::size_t i = 0; i < J.size(); ++i)
        for (std::size_t j = i + 1; j < J.size(); ++j)
            if (J[i] > J[j]) s = -s;
    return s;
}

inline void validate_tuple(const IndexTuple& J, int ncols) {
    std::set<int> seen;
    for (int j : J) {
        if (j < 0 || j >= ncols) throw std::invalid_argument("tuple index out of range");
        if (!seen.insert(j).second) throw std::invalid_argument("tuple has repeated index");
    }
}

/// Positional replacement: `old` is overwritten by `repl` in place.
inline IndexTuple replace(IndexTuple J, int old, int repl) {
    auto it = std::find(J.begin(), J.end(), old);
    if (it == J.end()) throw std::invalid_argument("replace: index " + std::to_string(old) + " not in tuple");
    if (contains(J, repl)) throw std::invalid_argument("replace: index " + std::to_string(repl) + " already in tuple");
    *it = repl;
    return J;
}

/// Membership constraints for an index family.
struct FamilySpec {
    std::vector<int> include;
    std::vector<int> exclude;
    std::vector<IndexTuple> removed;  // compared as sets
};

/// All (k+1)-subsets of {0..k+n+1} satisfying the constraints, ascending tuples
/// in lexicographic order.
inline Family index_family(int k, int n, const FamilySpec& spec) {
    for (int i : spec.include)
        if (std::find(spec.exclude.begin(), spec.exclude.end(), i) != spec.exclude.end())
            throw std::invalid_argument("index family: an index is both included and excluded");
    int m = k + n + 2;
    int size = k + 1;
    Family out;
    IndexTuple cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == size) {
            for (int i : spec.include)
                if (!contains(cur, i)) return;
            for (const auto& r : spec.removed)
                if (same_set(r, cur)) return;
            out.push_back(cur);
            return;
        }
        for (int j = start; j < m; ++j) {
            if (std::find(spec.exclude.begin(), spec.exclude.end(), j) != spec.exclude.end()) continue;
            cur.push_back(j);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// q J p : tuples containing p, not containing q, optionally minus some tuples.
inline Family family_qp(int k, int n, int q, int p, std::vector<IndexTuple> removed = {}) {
    if (p == q) throw std::invalid_argument("index family requires p != q");
    return index_family(k, n, FamilySpec{{p}, {q}, std::move(removed)});
}

inline std::optional<std::size_t> find_set(const Family& f, const IndexTuple& J) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (same_set(f[i], J)) return i;
    return std::nullopt;
}

inline std::string tuple_string(const IndexTuple& J) {
    std::string s = "<";
    for (std::size_t i = 0; i < J.size(); ++i) s += (i ? " " : "") + std::to_string(J[i]);
    return s + ">";
}

inline long binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    long b = 1;
    for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
    return b;
}

}  // namespace twint
