#include <gtest/gtest.h>

#include "support.hpp"

using namespace coxops;
using namespace testing_support;

namespace {

LaurentPolynomial t(int m, std::vector<int> exps) {
    Monomial mono;
    for (std::size_t i = 0; i < exps.size(); ++i) mono.set(static_cast<int>(i), exps[i]);
    return LaurentPolynomial::monomial(m, mono);
}

LaurentPolynomial swap_vars(const LaurentPolynomial& f, int i, int j) {
    std::vector<Polynomial> vals;
    for (int v = 0; v < f.nvars(); ++v) vals.push_back(Polynomial::variable(f.nvars(), v == i ? j : v == j ? i : v));
    return substitute(f, vals);
}

} // namespace

TEST(Enumerate, Lambda) {
    auto l32 = enumerate_lambda(3, 2);
    std::vector<Partition> want = {Partition({1, 1}), Partition({1, 0}), Partition({0, 0})};
    EXPECT_EQ(l32, want);
    auto l42 = enumerate_lambda(4, 2);
    std::vector<Partition> want42 = {Partition({2, 2}), Partition({2, 1}), Partition({2, 0}),
                                     Partition({1, 1}), Partition({1, 0}), Partition({0, 0})};
    EXPECT_EQ(l42, want42);
    auto sq = enumerate_lambda(4, 4);
    ASSERT_EQ(sq.size(), 1u);
    EXPECT_EQ(sq[0], Partition({0, 0, 0, 0}));
    EXPECT_THROW(enumerate_lambda(2, 3), invalid_argument);
}

TEST(Enumerate, Counts) {
    for (int l = 1; l <= 8; ++l)
        for (int m = 1; m <= l; ++m) {
            auto lam = enumerate_lambda(l, m);
            EXPECT_EQ(static_cast<std::int64_t>(lam.size()), binomial_small(l, m));
            for (std::size_t i = 1; i < lam.size(); ++i) EXPECT_GT(lam[i - 1], lam[i]);
            for (const auto& p : lam) EXPECT_TRUE(p.fits(l));
        }
}

TEST(Enumerate, Z) {
    auto z = enumerate_z(3, 2);
    ASSERT_EQ(z.size(), 3u);
    EXPECT_EQ(z[0].indices(), (std::vector<int>{1, 2}));
    EXPECT_EQ(z[1].indices(), (std::vector<int>{1, 3}));
    EXPECT_EQ(z[2].indices(), (std::vector<int>{2, 3}));
    EXPECT_EQ(lambda_of(Selector({1, 2}), 3), Partition({1, 1}));
    auto full = enumerate_z(4, 4);
    ASSERT_EQ(full.size(), 1u);
    EXPECT_EQ(full[0].indices(), (std::vector<int>{1, 2, 3, 4}));
    EXPECT_THROW(enumerate_z(1, 2), invalid_argument);
}

TEST(Enumerate, BijectionReversesOrder) {
    for (int l = 1; l <= 7; ++l)
        for (int m = 1; m <= l; ++m) {
            auto z = enumerate_z(l, m);
            auto lam = enumerate_lambda(l, m);
            ASSERT_EQ(z.size(), lam.size());
            for (std::size_t i = 0; i < z.size(); ++i) EXPECT_EQ(lambda_of(z[i], l), lam[i]);
        }
}

TEST(Schur, Examples) {
    EXPECT_EQ(schur(Kind::A, Partition({1, 1}), 2), t(2, {1, 1}));
    EXPECT_EQ(schur(Kind::A, Partition({1, 0}), 2), t(2, {1, 0}) + t(2, {0, 1}));
    EXPECT_EQ(schur(Kind::A, Partition({0, 0}), 2), t(2, {0, 0}));
    EXPECT_EQ(schur(Kind::B, Partition({0, 0}), 2), t(2, {1, 1}));
    EXPECT_EQ(schur(Kind::D, Partition({1, 1}), 2), t(2, {1, 1}));
    EXPECT_EQ(schur(Kind::D, Partition({0, 0}), 2), t(2, {-1, -1}));
    EXPECT_THROW(schur(Kind::A, Partition({1, 0}), 3), invalid_argument);
    EXPECT_THROW(Partition({0, 1}), invalid_argument);
}

TEST(Schur, SsytOracleExamples) {
    EXPECT_EQ(schur_ssyt_oracle(Partition({1, 0}), 2), x(2, 1) + x(2, 2));
    EXPECT_EQ(schur_ssyt_oracle(Partition({1, 1}), 2), x(2, 1) * x(2, 2));
    EXPECT_EQ(schur_ssyt_oracle(Partition({0, 0, 0}), 3), c(3, 1));
    // s_(2,1)(t1,t2,t3): 8 tableaux.
    auto s21 = schur_ssyt_oracle(Partition({2, 1, 0}), 3);
    Rational total = 0;
    for (const auto& term : s21.terms()) total += term.coef;
    EXPECT_EQ(total, 8);
}

TEST(SchurProperty, AgreesWithSsytOracle) {
    for (int l = 1; l <= 6; ++l)
        for (int m = 1; m <= std::min(l, 3); ++m)
            for (const auto& lam : enumerate_lambda(l, m)) EXPECT_EQ(schur_a(lam, m), schur_ssyt_oracle(lam, m)) << lam.str();
}

TEST(SchurProperty, FactoredFormsMatchRawRatios) {
    for (int l = 2; l <= 6; ++l)
        for (int m = 1; m <= std::min(l, 3); ++m)
            for (const auto& lam : enumerate_lambda(l, m))
                for (Kind k : {Kind::A, Kind::B, Kind::D}) EXPECT_EQ(schur(k, lam, m), schur_ratio(k, lam, m)) << lam.str();
}

TEST(SchurProperty, DegreeLaw) {
    for (int l = 2; l <= 6; ++l)
        for (int m = 1; m <= std::min(l, 3); ++m)
            for (const auto& lam : enumerate_lambda(l, m)) {
                const int w = lam.weight();
                auto a = schur(Kind::A, lam, m), b = schur(Kind::B, lam, m), d = schur(Kind::D, lam, m);
                EXPECT_TRUE(a.is_homogeneous() && b.is_homogeneous() && d.is_homogeneous());
                EXPECT_EQ(a.degree(), w);
                EXPECT_EQ(b.degree(), 2 * w + m);
                EXPECT_EQ(d.degree(), 2 * w - m);
            }
}

TEST(SchurProperty, Symmetric) {
    for (int m = 2; m <= 3; ++m)
        for (const auto& lam : enumerate_lambda(5, m))
            for (Kind k : {Kind::A, Kind::B, Kind::D}) {
                auto s = schur(k, lam, m);
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) EXPECT_EQ(swap_vars(s, i, j), s);
            }
}

TEST(SchurProperty, DIsPolynomialWhenLastPartPositive) {
    for (int l = 3; l <= 6; ++l)
        for (int m = 1; m <= std::min(l - 1, 3); ++m)
            for (const auto& lam : enumerate_lambda(l, m)) {
                auto s = schur(Kind::D, lam, m);
                bool poly = true;
                for (const auto& term : s.terms())
                    for (int v = 0; v < m; ++v) poly = poly && term.exp[v] >= 0;
                if (lam[static_cast<std::size_t>(m - 1)] >= 1) EXPECT_TRUE(poly) << lam.str();
                else EXPECT_FALSE(poly) << lam.str();
            }
}

TEST(XAlpha, Examples) {
    EXPECT_EQ(x_alpha(MultiIndex{2, 0, 0}, 3, 2), (std::vector<Polynomial>{x(3, 1), x(3, 1)}));
    EXPECT_EQ(x_alpha(MultiIndex{1, 0, 1}, 3, 2), (std::vector<Polynomial>{x(3, 1), x(3, 3)}));
    EXPECT_EQ(x_alpha(MultiIndex{1, 1, 0}, 3, 2, true), (std::vector<Polynomial>{x(3, 1) * x(3, 1), x(3, 2) * x(3, 2)}));
    EXPECT_THROW(x_alpha(MultiIndex{1, 0, 0}, 3, 2), invalid_argument);
    EXPECT_THROW(x_alpha(MultiIndex{0, 0, 0, 2}, 3, 2), dimension_mismatch);
}

TEST(SchurIdentity, Examples) {
    auto a = verify_schur_det_identity(Kind::A, 3, 2);
    EXPECT_TRUE(a.holds);
    EXPECT_EQ(a.lhs, a.sign * vandermonde(3));
    auto b = verify_schur_det_identity(Kind::B, 3, 2);
    EXPECT_TRUE(b.holds);
    auto x123 = x(3, 1) * x(3, 2) * x(3, 3);
    EXPECT_EQ(b.lhs, b.sign * x123 * x123 * vandermonde(3, 2));
    EXPECT_TRUE(verify_schur_det_identity(Kind::D, 4, 2).holds);
}

TEST(SchurIdentity, MatrixEntries) {
    // Rows lambda = (1,1),(1,0),(0,0); columns (x1,x2),(x1,x3),(x2,x3).
    auto sm = schur_matrix(Kind::A, 3, 2);
    auto L = [](const Polynomial& p) { return to_laurent(p); };
    EXPECT_EQ(sm(0, 0), L(x(3, 1) * x(3, 2)));
    EXPECT_EQ(sm(1, 1), L(x(3, 1) + x(3, 3)));
    EXPECT_EQ(sm(2, 2), L(c(3, 1)));
}

TEST(SchurIdentity, AllSmallCases) {
    for (int l = 2; l <= 5; ++l)
        for (int m : {2, 3}) {
            if (m > l) continue;
            for (Kind k : {Kind::A, Kind::B, Kind::D}) {
                auto r = verify_schur_det_identity(k, l, m);
                EXPECT_TRUE(r.holds) << to_string(k) << " l=" << l << " m=" << m;
                EXPECT_TRUE(r.sign == 1 || r.sign == -1);
            }
        }
}
