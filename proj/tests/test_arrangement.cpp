#include <gtest/gtest.h>

#include <random>

#include "twint/arrangement.hpp"
#include "twint/io.hpp"

using namespace twint;

namespace {

CoeffMatrix random_generic(std::mt19937_64& rng, int k, int n) {
    std::uniform_int_distribution<int> d(-20, 20);
    for (;;) {
        Matrix<Rat> z(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + n + 2));
        z(0, 0) = 1;
        for (std::size_t i = 0; i < z.rows(); ++i)
            for (std::size_t c = 1; c < z.cols(); ++c) z(i, c) = d(rng);
        CoeffMatrix m(k, n, z);
        if (classify(m).variant == Variant::Generic) return m;
    }
}

}  // namespace

TEST(IndexTuples, ReplaceIsPositional) {
    EXPECT_EQ(replace({1, 2, 3}, 2, 0), (IndexTuple{1, 0, 3}));
    EXPECT_THROW(replace({1, 2, 3}, 4, 0), std::invalid_argument);
    EXPECT_THROW(replace({1, 2, 3}, 2, 3), std::invalid_argument);
    EXPECT_EQ(sort_sign({0, 1, 2}), 1);
    EXPECT_EQ(sort_sign({1, 0, 2}), -1);
    EXPECT_EQ(sort_sign({2, 0, 1}), 1);
}

TEST(IndexTuples, FamilySizes) {
    for (int k = 1; k <= 3; ++k)
        for (int n = 1; n <= 3; ++n) {
            EXPECT_EQ(static_cast<long>(index_family(k, n, {}).size()), binomial(k + n + 2, k + 1));
            auto f = family_qp(k, n, k + n + 1, 0);
            EXPECT_EQ(static_cast<long>(f.size()), binomial(k + n, k));
            for (const auto& J : f) {
                EXPECT_TRUE(contains(J, 0));
                EXPECT_FALSE(contains(J, k + n + 1));
                EXPECT_TRUE(std::is_sorted(J.begin(), J.end()));
            }
        }
    EXPECT_EQ(family_qp(2, 2, 5, 1).size(), 6u);
    EXPECT_EQ(family_qp(2, 2, 5, 1, {{3, 2, 1}}).size(), 5u);
    EXPECT_THROW(family_qp(2, 2, 1, 1), std::invalid_argument);
}

TEST(CoeffMatrix, RejectsBadShapes) {
    Matrix<Rat> z(3, 6);
    EXPECT_THROW(CoeffMatrix(2, 2, z), std::invalid_argument);
    z(0, 0) = 1;
    EXPECT_NO_THROW(CoeffMatrix(2, 2, z));
    EXPECT_THROW(CoeffMatrix(2, 3, z), std::invalid_argument);
    z(1, 0) = 1;
    EXPECT_THROW(CoeffMatrix(2, 2, z), std::invalid_argument);
}

TEST(CoeffMatrix, MinorsAlternate) {
    std::mt19937_64 rng(3);
    auto z = random_generic(rng, 2, 3);
    for (const auto& J : index_family(2, 3, {})) {
        Rat m = z.minor(J);
        IndexTuple s{J[1], J[0], J[2]};
        IndexTuple c{J[1], J[2], J[0]};
        EXPECT_EQ(z.minor(s), -m);
        EXPECT_EQ(z.minor(c), m);
    }
    EXPECT_THROW(z.minor({0, 1}), std::invalid_argument);
    EXPECT_THROW(z.minor({0, 1, 1}), std::invalid_argument);
}

TEST(CoeffMatrix, SpecialMatrixMinorsAreEntries) {
    Matrix<Rat> x(2, 3);
    int v = 2;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) x(i, j) = Rat(v++, 7);
    auto z = special_matrix(x);
    EXPECT_EQ(z.minor({0, 1, 2}), Rat(1));
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 3; ++j) EXPECT_EQ(z.minor(replace({0, 1, 2}, i, 2 + j)), x(i - 1, j - 1));
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(z.minor(replace({0, 1, 2}, 0, 2 + j)), Rat(1));
}

TEST(Classify, FigureFixtures) {
    auto g = load_matrix(fixture_path("figure1_generic.json"));
    EXPECT_EQ(classify(g).variant, Variant::Generic);
    auto gc = load_matrix(fixture_path("figure1_generic.csv"));
    EXPECT_EQ(gc.entries(), g.entries());

    auto d = load_matrix(fixture_path("figure1_degenerate.json"));
    auto c = classify(d);
    EXPECT_EQ(c.variant, Variant::OneDegenerate);
    EXPECT_EQ(c.jvan, (IndexTuple{1, 2, 3}));
}

TEST(Classify, TwoVanishingMinorsIsOther) {
    Matrix<Rat> x(2, 2);
    x(0, 0) = 0;
    x(0, 1) = 0;
    x(1, 0) = Rat(1, 3);
    x(1, 1) = Rat(1, 5);
    auto c = classify(special_matrix(x));
    EXPECT_EQ(c.variant, Variant::Other);
    EXPECT_GE(c.vanishing.size(), 2u);
}

TEST(Classify, SpecialMatrixWithOneZeroEntry) {
    Matrix<Rat> x(2, 2);
    x(0, 0) = 0;
    x(0, 1) = Rat(1, 7);
    x(1, 0) = Rat(-1, 11);
    x(1, 1) = Rat(1, 13);
    auto c = classify(special_matrix(x));
    ASSERT_EQ(c.variant, Variant::OneDegenerate);
    EXPECT_EQ(c.jvan, (IndexTuple{0, 2, 3}));
}

TEST(Arrangement, LinearFormSigns) {
    auto z = load_matrix(fixture_path("figure1_generic.json"));
    std::vector<Rat> t{Rat(0), Rat(0)};
    EXPECT_EQ(linear_form_sign(z, 1, t), 0);
    EXPECT_EQ(linear_form_sign(z, 2, t), 1);
    EXPECT_EQ(linear_form_sign(z, 5, t), -1);
    std::vector<Rat> u{Rat(1), Rat(2)};
    EXPECT_EQ(z.linear_form(2, u), Rat(40 - 1 + 8));
}

TEST(Arrangement, VertexSolvesBothForms) {
    auto z = load_matrix(fixture_path("figure1_generic.json"));
    for (int a = 1; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b) {
            auto p = vertex(z, {a, b});
            ASSERT_TRUE(p.has_value());
            EXPECT_EQ(z.linear_form(a, *p), Rat(0));
            EXPECT_EQ(z.linear_form(b, *p), Rat(0));
        }
}

TEST(Perturb, DegenerateFigureBecomesGeneric) {
    auto d = load_matrix(fixture_path("figure1_degenerate.json"));
    int m = 0;
    auto z = perturb(d, {1, 2, 3}, 200, &m);
    EXPECT_GE(m, 1);
    EXPECT_EQ(classify(z).variant, Variant::Generic);
    Rat v = z.minor({1, 2, 3});
    EXPECT_NE(v, Rat(0));
    for (const auto& J : index_family(2, 2, {})) {
        if (J != IndexTuple{1, 2, 3}) {
            EXPECT_EQ(sgn(z.minor(J)), sgn(d.minor(J)));
        }
    }
    EXPECT_THROW(perturb(d, {0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(perturb(load_matrix(fixture_path("figure1_generic.json")), {1, 2, 3}), std::invalid_argument);
}

TEST(Perturb, RandomDegenerateMatrices) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    int done = 0;
    while (done < 5) {
        auto z = random_generic(rng, 2, 2);
        // make column 3 a combination of columns 1 and 2
        std::vector<Rat> col(3);
        int a = d(rng), b = d(rng);
        for (int i = 0; i < 3; ++i) col[static_cast<std::size_t>(i)] = a * z(i, 1) + b * z(i, 2);
        auto z0 = z.with_column(3, col);
        auto c = classify(z0);
        if (c.variant != Variant::OneDegenerate) continue;
        auto p = perturb(z0, c.jvan);
        EXPECT_EQ(classify(p).variant, Variant::Generic);
        ++done;
    }
}
