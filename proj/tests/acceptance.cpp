// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "twint/contiguity.hpp"
#include "twint/homology.hpp"
#include "twint/io.hpp"
#include "twint/series.hpp"

using namespace twint;

namespace {

constexpr double kSeriesTolerance = 1e-8;
constexpr double kMaxAbsX = 0.05;
constexpr int kTruncation = 24;
constexpr int kRandomEvaluations = 5;

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
};

bool same(const RatFunc& a, const RatFunc& b) { return is_zero(a - b); }

// ---- 1 -------------------------------------------------------------------

Outcome degenerate_cohomology() {
    Outcome o;
    auto fx = load_json(fixture_path("cohomology_expected.json"));
    ParamContext ctx(fx["k"], fx["n"]);
    auto a = ctx.symbols();
    std::span<const RatFunc> as(a);
    IndexTuple jvan = fx["jvan"];
    for (const auto& e : fx["degenerate"]) {
        IndexTuple I = e["I"], J = e["J"];
        RatFunc got = pairing_degenerate(I, J, jvan, as);
        if (!same(got, ctx.parse(e["value"].get<std::string>())))
            o.fail(tuple_string(I) + tuple_string(J) + " gave " + ctx.format(got));
    }
    // the same two values written out directly from the symbols
    RatFunc a123 = a[1] + a[2] + a[3];
    RatFunc eq31 = (a[0] * a[1] + a[0] * a[2] + a[1] * a123 + a[2] * a123) / (a[0] * a[1] * a[2] * a123);
    RatFunc eq32 = RatFunc(-1) / (a[2] * a123);
    if (!same(pairing_degenerate<RatFunc>({0, 1, 2}, {0, 1, 2}, jvan, as), eq31)) o.fail("<0 1 2> self pairing");
    if (!same(pairing_degenerate<RatFunc>({0, 1, 2}, {2, 3, 4}, jvan, as), eq32)) o.fail("<0 1 2>,<2 3 4> pairing");
    if (o.ok) o.detail = "2 entries exact";
    return o;
}

// ---- 2 -------------------------------------------------------------------

Outcome degenerate_homology() {
    Outcome o;
    auto fx = load_json(fixture_path("homology_oracle.json"));
    auto oracle = PairingOracle::from_json(fx);
    const auto& ctx = oracle.context();
    auto l = ctx.symbols();
    std::string van = fx["chambers"]["vanishing"], sigma = fx["chambers"]["sigma"], tau = fx["chambers"]["tau"];
    RatFunc one(1);
    RatFunc ss = (l[1] * l[2] - one) * (l[1] * l[2] * l[3] * l[4] - one) /
                 ((l[1] - one) * (l[2] - one) * (l[4] - one) * (l[1] * l[2] * l[3] - one));
    RatFunc st = -(l[1] * l[2] * l[3] * l[4] - one) / ((l[2] - one) * (l[4] - one) * (l[1] * l[2] * l[3] - one));
    RatFunc got_ss = pairing_degenerate_h(sigma, sigma, van, oracle);
    RatFunc got_st = pairing_degenerate_h(sigma, tau, van, oracle);
    if (!same(got_ss, ss)) o.fail("sigma|sigma gave " + ctx.format(got_ss));
    if (!same(got_st, st)) o.fail("sigma|tau gave " + ctx.format(got_st));
    if (o.ok) o.detail = "2 entries exact";
    return o;
}

// ---- 3 -------------------------------------------------------------------

CoeffMatrix random_matrix(std::mt19937_64& rng, int k, int n) {
    std::uniform_int_distribution<int> d(-15, 15);
    Matrix<Rat> z(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + n + 2));
    z(0, 0) = 1;
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t c = 1; c < z.cols(); ++c) z(i, c) = d(rng);
    return CoeffMatrix(k, n, z);
}

Outcome chamber_counts() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> coef(1, 5);
    int generic = 0, degenerate = 0;
    std::set<IndexTuple> seen;
    for (int t = 0; t < 10; ++t) {
        int n = 1 + t % 3;
        int last = n + 3;
        CoeffMatrix z = random_matrix(rng, 2, n);
        while (classify(z).variant != Variant::Generic) z = random_matrix(rng, 2, n);
        long b = bounded_count(enumerate_chambers(z));
        if (b != binomial(2 + n, 2)) o.fail("generic n=" + std::to_string(n) + " gave " + std::to_string(b));
        ++generic;

        // one column moved into the span of two others (column 0 allowed)
        std::uniform_int_distribution<int> pick(0, last);
        for (;;) {
            int target = pick(rng), c1 = pick(rng), c2 = pick(rng);
            if (target == 0 || c1 == c2 || c1 == target || c2 == target) continue;
            CoeffMatrix base = random_matrix(rng, 2, n);
            int x = coef(rng), y = coef(rng);
            std::vector<Rat> col(3);
            for (int i = 0; i < 3; ++i) col[static_cast<std::size_t>(i)] = x * base(i, c1) - y * base(i, c2);
            CoeffMatrix z0 = base.with_column(target, col);
            auto c = classify(z0);
            if (c.variant != Variant::OneDegenerate) continue;
            long bd = bounded_count(enumerate_chambers(z0));
            if (bd != binomial(2 + n, 2) - 1) o.fail("degenerate n=" + std::to_string(n) + " gave " + std::to_string(bd));
            seen.insert(c.jvan);
            ++degenerate;
            break;
        }
    }
    if (o.ok) o.detail = std::to_string(generic) + " generic, " + std::to_string(degenerate) + " degenerate (" +
                        std::to_string(seen.size()) + " distinct J^van)";
    return o;
}

// ---- 4 -------------------------------------------------------------------

std::vector<std::pair<std::string, DegenerateBasis>> all_bases(int k, int n, const IndexTuple& jvan) {
    std::vector<int> outside;
    for (int j = 0; j < k + n + 2; ++j)
        if (!contains(jvan, j)) outside.push_back(j);
    std::vector<std::pair<std::string, DegenerateBasis>> out;
    for (int p : outside)
        for (int l = 0; l <= k; ++l) {
            out.emplace_back("kind 1", basis_degenerate(BasisKind::One, k, n, jvan, {p, -1, l, -1}));
            for (int q : outside)
                if (q != p) out.emplace_back("kind 2", basis_degenerate(BasisKind::Two, k, n, jvan, {p, q, l, -1}));
        }
    for (int q : outside)
        for (int l = 0; l <= k; ++l) out.emplace_back("kind 3", basis_degenerate(BasisKind::Three, k, n, jvan, {-1, q, l, -1}));
    for (int p : outside)
        for (int l : jvan)
            for (int lp : jvan)
                if (l != lp) out.emplace_back("kind 4", basis_degenerate(BasisKind::Four, k, n, jvan, {p, -1, l, lp}));
    return out;
}

Outcome basis_invertibility() {
    Outcome o;
    IndexTuple jvan{1, 2, 3};
    int checked = 0;
    for (int n : {2, 3}) {
        ParamContext ctx(2, n);
        auto bases = all_bases(2, n, jvan);
        for (int s = 0; s < kRandomEvaluations; ++s) {
            auto x = ctx.random_point(static_cast<std::uint64_t>(100 + s), jvan);
            std::span<const Rat> xs(x);
            for (const auto& [kind, b] : bases) {
                if (static_cast<long>(b.plus.size()) != binomial(2 + n, 2) - 1) o.fail(kind + " has the wrong size");
                if (is_zero(gram_degenerate(b.plus, b.minus, jvan, 2, xs).determinant()))
                    o.fail(kind + " singular for n=" + std::to_string(n));
                ++checked;
            }
        }
    }
    if (o.ok) o.detail = std::to_string(checked) + " Gram determinants nonzero";
    return o;
}

// ---- 5 -------------------------------------------------------------------

Outcome determinant_identities() {
    Outcome o;
    IndexTuple jvan{1, 2, 3};
    int checked = 0;
    {
        ParamContext ctx(2, 2);
        auto a = ctx.symbols();
        std::span<const RatFunc> as(a);
        for (int p : {0, 4, 5})
            for (int l : jvan)
                for (int lp : jvan) {
                    if (l == lp) continue;
                    auto d = det_identity_check<RatFunc>(2, 2, jvan, p, l, lp, as);
                    if (!same(d.det_c, d.van_times_det_c0)) o.fail("|C| != I(van)|C0| symbolic");
                    if (!same(d.det_c, d.c2_times_det_c1)) o.fail("|C| != c2|C1| symbolic");
                    if (!same(d.c2, -a[static_cast<std::size_t>(p)] / (a[1] * a[2] * a[3]))) o.fail("c2 symbolic");
                    ++checked;
                }
    }
    ParamContext ctx(2, 3);
    for (int s = 0; s < kRandomEvaluations; ++s) {
        auto x = ctx.random_point(static_cast<std::uint64_t>(200 + s), jvan);
        std::span<const Rat> xs(x);
        for (int p : {0, 4, 5, 6})
            for (int l : jvan)
                for (int lp : jvan) {
                    if (l == lp) continue;
                    auto d = det_identity_check<Rat>(2, 3, jvan, p, l, lp, xs);
                    if (d.det_c != d.van_times_det_c0 || d.det_c != d.c2_times_det_c1) o.fail("determinant identity at a random point");
                    if (d.c2 != -x[static_cast<std::size_t>(p)] / (x[1] * x[2] * x[3])) o.fail("c2 at a random point");
                    ++checked;
                }
    }
    if (o.ok) o.detail = std::to_string(checked) + " identity instances";
    return o;
}

// ---- 6 -------------------------------------------------------------------

CoeffMatrix figure_degenerate() { return load_matrix(fixture_path("figure1_degenerate.json")); }

CoeffMatrix special_degenerate() {
    Matrix<Rat> x(2, 2);
    x(0, 1) = Rat(3, 100);
    x(1, 0) = Rat(-1, 50);
    x(1, 1) = Rat(7, 200);
    return special_matrix(x);
}

Outcome closed_form_inverses() {
    Outcome o;
    ParamContext pc(2, 2);
    auto a = pc.symbols();
    std::span<const RatFunc> as(a);
    int in_van = 0, out_van = 0, evaluated = 0;
    for (const auto& z0 : {special_degenerate(), figure_degenerate()}) {
        auto jvan = classify(z0).jvan;
        for (int j0 : jvan)
            for (int q = 0; q < z0.ncols(); ++q) {
                if (contains(jvan, q)) continue;
                ContiguityContext c(z0, j0, q);
                for (int l = 0; l < z0.ncols(); ++l) {
                    if (l == j0) continue;
                    auto prod = c.R(l, as) * c.r_inverse_closed(l, as);
                    if (!(prod.entries - Matrix<RatFunc>::identity(prod.entries.rows())).is_zero_matrix())
                        o.fail("R_l R_l^-1 != I for l=" + std::to_string(l));
                    (contains(jvan, l) ? in_van : out_van) += 1;
                }
                for (int s = 0; s < kRandomEvaluations; ++s) {
                    auto x = pc.random_point(static_cast<std::uint64_t>(300 + s), jvan);
                    std::span<const Rat> xs(x);
                    if (c.C_inverse(xs, InverseMethod::ClosedForm).entries != c.C_inverse(xs, InverseMethod::Elimination).entries)
                        o.fail("C^-1 factorization");
                    for (int l = 0; l < z0.ncols(); ++l) {
                        if (l == j0) continue;
                        if (c.P_inverse(l, xs, InverseMethod::ClosedForm).entries != c.P_inverse(l, xs, InverseMethod::Elimination).entries)
                            o.fail("P_l^-1 factorization, l=" + std::to_string(l));
                        if (c.Q_inverse(l, xs, InverseMethod::ClosedForm).entries != c.Q_inverse(l, xs, InverseMethod::Elimination).entries)
                            o.fail("Q_l^-1 factorization, l=" + std::to_string(l));
                        ++evaluated;
                    }
                }
            }
    }
    if (in_van == 0 || out_van == 0) o.fail("both shift cases must be exercised");
    if (o.ok)
        o.detail = std::to_string(in_van) + " in / " + std::to_string(out_van) + " outside J^van symbolic, " +
                   std::to_string(evaluated) + " evaluated factorizations";
    return o;
}

// ---- 7 -------------------------------------------------------------------

Outcome flagship() {
    Outcome o;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> d(-50, 50);
    ParamContext pc(2, 2);
    double worst = 0;
    int runs = 0;
    for (int draw = 0; draw < kRandomEvaluations; ++draw) {
        Matrix<Rat> x(2, 2);
        for (;;) {
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) {
                    int v = 0;
                    while (v == 0) v = d(rng);
                    x(i, j) = Rat(v, 1000);
                }
            x(0, 0) = 0;
            if (classify(special_matrix(x)).variant == Variant::OneDegenerate) break;
        }
        ContiguityContext ctx(special_matrix(x), 0, 5);
        auto a = pc.random_point(static_cast<std::uint64_t>(400 + draw), ctx.jvan());
        SeriesParams sp;
        sp.k = 2;
        sp.n = 2;
        sp.zero = std::pair{0, 0};
        sp.truncation = kTruncation;
        for (const auto& v : a) sp.alpha.push_back(to_double(v));
        sp.x = {{0.0, to_double(x(0, 1))}, {to_double(x(1, 0)), to_double(x(1, 1))}};
        for (const auto& row : sp.x)
            for (double v : row)
                if (std::abs(v) > kMaxAbsX) o.fail("x outside the allowed range");
        for (int l = 1; l <= 5; ++l) {
            auto c = ctx.conti<Rat>(l, std::span<const Rat>(a));
            RealMatrix m(5, std::vector<double>(5));
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = 0; j < 5; ++j) m[i][j] = to_double(c.entries(i, j));
            double r = check_contiguity(sp, l, m);
            worst = std::max(worst, r);
            if (!(r < kSeriesTolerance)) o.fail("residual " + std::to_string(r) + " at l=" + std::to_string(l));
            ++runs;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d shifts, max residual %.2e (tol %.0e)", runs, worst, kSeriesTolerance);
    if (o.ok) o.detail = buf;
    return o;
}

// ---- 8 -------------------------------------------------------------------

Outcome structural_invariants() {
    Outcome o;
    long pairs = 0;
    for (int k = 1; k <= 2; ++k)
        for (int n = 1; n <= 2; ++n) {
            ParamContext ctx(k, n);
            auto a = ctx.symbols();
            std::span<const RatFunc> as(a);
            Family all = index_family(k, n, {});
            int dual = (k % 2) ? -1 : 1;
            for (const auto& I : all)
                for (const auto& J : all) {
                    RatFunc v = pairing_generic(I, J, as);
                    if (!same(v, pairing_generic(J, I, as))) o.fail("symmetry " + tuple_string(I) + tuple_string(J));
                    if (!same(ctx.dualize(v), RatFunc(dual) * v)) o.fail("duality " + tuple_string(I) + tuple_string(J));
                    ++pairs;
                }
            for (const auto& jvan : all) {
                auto van = CohomClass<RatFunc>::basis(jvan, -1);
                std::vector<CohomClass<RatFunc>> proj_plus, proj_minus;
                for (const auto& J : all) {
                    std::size_t shared = 0;
                    for (int j : J) shared += contains(jvan, j);
                    bool orth = is_zero(pairing_generic(J, jvan, as));
                    if (orth != (shared < static_cast<std::size_t>(k))) o.fail("orthogonality " + tuple_string(J));
                    auto p = project_vanishing(CohomClass<RatFunc>::basis(J, 1), jvan, as);
                    auto pp = project_vanishing(p, jvan, as);
                    for (std::size_t i = 0; i < p.coords.size(); ++i)
                        if (!same(p.coords[i], pp.coords[i])) o.fail("idempotence " + tuple_string(J));
                    if (!is_zero(pair_classes(p, van, as))) o.fail("projection not orthogonal " + tuple_string(J));
                    proj_plus.push_back(p);
                    proj_minus.push_back(project_vanishing(CohomClass<RatFunc>::basis(J, -1), jvan, as));
                }
                for (std::size_t i = 0; i < all.size(); ++i) {
                    if (same_set(all[i], jvan)) continue;
                    for (std::size_t j = 0; j < all.size(); ++j) {
                        if (same_set(all[j], jvan)) continue;
                        if (!same(pairing_degenerate(all[i], all[j], jvan, as), pair_classes(proj_plus[i], proj_minus[j], as)))
                            o.fail("degenerate pairing vs projections " + tuple_string(all[i]) + tuple_string(all[j]));
                        ++pairs;
                    }
                }
            }
        }
    if (o.ok) o.detail = std::to_string(pairs) + " tuple pairs";
    return o;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "degenerate cohomology fixtures", 1.0, degenerate_cohomology},
        {2, "degenerate homology fixtures", 1.0, degenerate_homology},
        {3, "chamber counts", 30.0, chamber_counts},
        {4, "basis invertibility", 60.0, basis_invertibility},
        {5, "determinant identities", 60.0, determinant_identities},
        {6, "closed-form inverses", 60.0, closed_form_inverses},
        {7, "flagship contiguity vs series", 120.0, flagship},
        {8, "structural invariants", 60.0, structural_invariants},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && secs > c.limit_s) o.fail("over time limit");
        std::printf("%s [%d] %s (%.2f s / %.0f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, c.limit_s,
                    o.detail.c_str());
        failures += !o.ok;
    }
    std::fflush(stdout);
    return failures ? 1 : 0;
}
