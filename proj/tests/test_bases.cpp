#include <gtest/gtest.h>

#include "support.hpp"

using namespace coxops;
using namespace testing_support;

namespace {

MultiIndex mi(std::vector<int> e) {
    MultiIndex a;
    for (std::size_t i = 0; i < e.size(); ++i) a.set(static_cast<int>(i), e[i]);
    return a;
}

MultiIndex d2(int i, int j) {
    MultiIndex a;
    a.set(i - 1, 1);
    a.set(j - 1, a[j - 1] + 1);
    return a;
}

Polynomial prod_x(int l, int power) { return Polynomial::monomial(l, detail::product_of_variables(l, power)); }

LaurentPolynomial lt(int m, std::vector<int> e) {
    Monomial mono;
    for (std::size_t i = 0; i < e.size(); ++i) mono.set(static_cast<int>(i), e[i]);
    return LaurentPolynomial::monomial(m, mono);
}

} // namespace

TEST(Eta, Examples) {
    auto e1 = eta(Kind::A, 1, 3, 2);
    ASSERT_EQ(e1.terms().size(), 1u);
    EXPECT_EQ(e1.coefficient(d2(1, 1)), q(3, 1, 2) * (x(3, 1) - x(3, 2)) * (x(3, 1) - x(3, 3)));
    EXPECT_EQ(eta(Kind::B, 1, 2, 2).coefficient(d2(1, 1)), q(2, 1, 2) * x(2, 1) * (x(2, 1) * x(2, 1) - x(2, 2) * x(2, 2)));
    EXPECT_EQ(eta(Kind::A, 2, 2, 2).coefficient(d2(2, 2)), q(2, 1, 2) * (x(2, 2) - x(2, 1)));
    EXPECT_EQ(eta(Kind::A, 2, 3, 3).coefficient(mi({0, 3, 0})), q(3, 1, 6) * (x(3, 2) - x(3, 1)) * (x(3, 2) - x(3, 3)));
    EXPECT_THROW(eta(Kind::A, 0, 3, 2), invalid_argument);
    EXPECT_THROW(eta(Kind::A, 4, 3, 2), invalid_argument);
    EXPECT_THROW(eta(Kind::D, 1, 4, 2), invalid_argument);
}

TEST(Theta, FromSymmetric) {
    auto t0 = theta_from_symmetric(lt(2, {0, 0}), 3, 2);
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) EXPECT_EQ(t0.coefficient(d2(i, j)), i == j ? q(3, 1, 2) : c(3, 1));
    auto t10 = theta_from_symmetric(lt(2, {1, 0}) + lt(2, {0, 1}), 3, 2);
    EXPECT_EQ(t10, theta(Kind::A, Partition({1, 0}), 3, 2));
    EXPECT_EQ(t10.coefficient(d2(1, 1)), x(3, 1));
    EXPECT_EQ(t10.coefficient(d2(1, 3)), x(3, 1) + x(3, 3));
    auto t11 = theta_from_symmetric(lt(2, {1, 1}), 2, 2);
    DiffOperator want(2, 2);
    want.add_term(d2(1, 1), q(2, 1, 2) * x(2, 1) * x(2, 1));
    want.add_term(d2(1, 2), x(2, 1) * x(2, 2));
    want.add_term(d2(2, 2), q(2, 1, 2) * x(2, 2) * x(2, 2));
    EXPECT_EQ(t11, want);
    EXPECT_THROW(theta_from_symmetric(lt(2, {1, 0}), 3, 2), not_symmetric);
    EXPECT_THROW(theta_from_symmetric(lt(2, {-1, -1}), 3, 2), not_polynomial);
    EXPECT_THROW(theta_from_symmetric(lt(3, {0, 0, 0}), 3, 2), dimension_mismatch);
}

TEST(Theta, Examples) {
    EXPECT_EQ(theta(Kind::B, Partition({0, 0}), 2, 2).coefficient(d2(1, 2)), x(2, 1) * x(2, 2));
    for (int m = 1; m <= 3; ++m) {
        std::vector<int> zeros(static_cast<std::size_t>(m), 0);
        auto t = theta(Kind::A, Partition(zeros), 4, m);
        for (const auto& a : multi_indices(4, m))
            EXPECT_EQ(t.coefficient(a), Polynomial::constant(4, Rational(Integer(1), alpha_factorial(a))));
    }
    EXPECT_THROW(theta(Kind::D, Partition({0, 0}), 4, 2), invalid_argument);
}

TEST(ThetaD, LambdaZero) {
    for (int l = 3; l <= 5; ++l) {
        auto t = theta_d(Partition({0, 0}), l);
        auto p2 = prod_x(l, 2);
        for (int i = 1; i <= l; ++i)
            for (int j = i; j <= l; ++j) {
                auto den = i == j ? c(l, 2) * x(l, i) * x(l, i) : x(l, i) * x(l, j);
                EXPECT_EQ(t.coefficient(d2(i, j)) * den, p2);
            }
    }
}

TEST(ThetaD, LambdaDoublePrime) {
    auto t = theta_d(Partition({1, 0}), 4);
    auto p1 = prod_x(4, 1);
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
            EXPECT_EQ(t.coefficient(d2(i, j)) * x(4, i) * x(4, j), p1 * (x(4, i) * x(4, i) + x(4, j) * x(4, j)));
    EXPECT_THROW(theta_d(Partition({3, 0}), 4), invalid_argument);
}

TEST(ThetaD, LambdaPrimeIsShiftedB) {
    for (int l = 4; l <= 6; ++l)
        for (const auto& lam : split_lambda(l).prime) {
            Partition shifted({lam[0] - 1, lam[1] - 1});
            EXPECT_EQ(schur(Kind::D, lam, 2), schur(Kind::B, shifted, 2));
            EXPECT_EQ(theta_d(lam, l), theta(Kind::B, shifted, l, 2)) << lam.str();
        }
}

TEST(LambdaSplit, Partition) {
    for (int l = 3; l <= 7; ++l) {
        auto s = split_lambda(l);
        EXPECT_EQ(s.prime.size() + s.double_prime.size(), enumerate_lambda(l, 2).size());
        EXPECT_NE(std::find(s.double_prime.begin(), s.double_prime.end(), s.zero), s.double_prime.end());
        for (const auto& p : s.prime) EXPECT_GE(p[1], 1);
        for (const auto& p : s.double_prime) EXPECT_EQ(p[1], 0);
    }
}

TEST(EtaD, SquareCoefficient) {
    for (int l = 3; l <= 6; ++l) {
        const Rational sign = (l - 1) % 2 == 0 ? Rational(1) : Rational(-1);
        for (int k = 1; k <= l; ++k) {
            auto op = eta_d(k, l);
            Monomial others = detail::product_of_variables(l, 2);
            others.set(k - 1, 0);
            auto top = detail::h_d(k, l) - Polynomial::monomial(l, others, sign);
            EXPECT_EQ(op.coefficient(d2(k, k)) * c(l, 2) * x(l, k), top);
        }
    }
}

TEST(EtaD, SignRegression) {
    // With the sign flipped, the numerator of the d_k^2 coefficient is not
    // divisible by x_k.
    for (int l = 3; l <= 6; ++l) {
        const Rational sign = (l - 1) % 2 == 0 ? Rational(1) : Rational(-1);
        for (int k = 1; k <= l; ++k) {
            Monomial others = detail::product_of_variables(l, 2);
            others.set(k - 1, 0);
            auto good = detail::h_d(k, l) - Polynomial::monomial(l, others, sign);
            auto bad = detail::h_d(k, l) + Polynomial::monomial(l, others, sign);
            EXPECT_TRUE(is_divisible_by(good, x(l, k)));
            EXPECT_FALSE(is_divisible_by(bad, x(l, k)));
        }
    }
}

TEST(EtaD, CrossTerms) {
    const int l = 4;
    const Rational sign(-1);  // (-1)^{l-1}
    auto p2 = prod_x(l, 2);
    for (int k = 1; k <= l; ++k) {
        auto op = eta_d(k, l);
        for (int i = 1; i <= l; ++i)
            for (int j = i + 1; j <= l; ++j) {
                if (i == k || j == k) continue;
                EXPECT_EQ(op.coefficient(d2(i, j)) * x(l, k) * x(l, i) * x(l, j), Polynomial::constant(l, -sign) * p2);
            }
        EXPECT_TRUE(member_of(op, build_arrangement(Kind::D, l))) << k;
    }
    EXPECT_THROW(eta_d(5, 4), invalid_argument);
}

TEST(Degrees, MatchFormulas) {
    for (int l = 3; l <= 6; ++l) {
        for (int k = 1; k <= l; ++k) {
            EXPECT_EQ(eta(Kind::A, k, l, 2).degree(), l - 1);
            EXPECT_EQ(eta(Kind::B, k, l, 2).degree(), 2 * l - 1);
            EXPECT_EQ(eta_d(k, l).degree(), 2 * l - 3);
        }
        for (const auto& lam : enumerate_lambda(l, 2)) {
            EXPECT_EQ(theta(Kind::A, lam, l, 2).degree(), lam.weight());
            EXPECT_EQ(theta(Kind::B, lam, l, 2).degree(), 2 * lam.weight() + 2);
            int want = lam[1] >= 1 ? 2 * lam.weight() - 2 : lam[0] >= 1 ? 2 * lam[0] - 2 + l : 2 * l - 2;
            EXPECT_EQ(theta_d(lam, l).degree(), want) << lam.str();
        }
    }
}

TEST(Exponents, DegreeSumIsDegreeOfQPower) {
    // sum of exponents = deg det M = t_2 * |A| = l * |A|.
    for (int l = 3; l <= 8; ++l)
        for (Kind k : {Kind::A, Kind::B, Kind::D}) {
            auto e = exponent_multiset(k, l);
            const long total = std::accumulate(e.begin(), e.end(), 0L);
            const long forms = static_cast<long>(build_arrangement(k, l).forms.size());
            EXPECT_EQ(total, l * forms) << to_string(k) << l;
            if (k != Kind::D) {
                EXPECT_EQ(e, stated_exponents(k, l));
            }
        }
}

TEST(Exponents, StatedDMultisetOvershoots) {
    for (int l = 4; l <= 8; ++l) {
        auto stated = stated_exponents(Kind::D, l);
        const long total = std::accumulate(stated.begin(), stated.end(), 0L);
        EXPECT_EQ(total, l * static_cast<long>(l * (l - 1)) + l);
    }
}

TEST(BuildBasis, Counts) {
    for (int l = 2; l <= 6; ++l)
        for (Kind k : {Kind::A, Kind::B, Kind::D}) {
            if (k == Kind::D && l < 3) {
                EXPECT_THROW(build_basis(k, l, BuildOptions{false, {}}), invalid_argument);
                continue;
            }
            auto set = build_basis(k, l, BuildOptions{false, {}});
            EXPECT_EQ(set.etas.size(), static_cast<std::size_t>(l));
            EXPECT_EQ(static_cast<std::int64_t>(set.thetas.size()), binomial_small(l, 2));
            EXPECT_EQ(static_cast<std::int64_t>(set.operators().size()), s_m_size(l, 2));
            EXPECT_FALSE(set.certified);
        }
    EXPECT_THROW(build_basis(Kind::A, 1), invalid_argument);
    EXPECT_FALSE(build_basis(Kind::D, 3, BuildOptions{false, {}}).warnings.empty());
    EXPECT_TRUE(build_basis(Kind::D, 4, BuildOptions{false, {}}).warnings.empty());
}

TEST(BuildBasis, MembershipOfEveryOperator) {
    for (int l = 2; l <= 5; ++l)
        for (Kind k : {Kind::A, Kind::B, Kind::D}) {
            if (k == Kind::D && l < 4) continue;
            auto arr = build_arrangement(k, l);
            for (const auto& op : build_basis(k, l, BuildOptions{false, {}}).operators()) EXPECT_TRUE(member_of(op, arr));
        }
}

TEST(BuildBasis, CertifiesSmallCases) {
    for (auto [k, l] : std::vector<std::pair<Kind, int>>{{Kind::A, 2}, {Kind::A, 3}, {Kind::A, 4}, {Kind::B, 2},
                                                         {Kind::B, 3}, {Kind::D, 3}, {Kind::D, 4}}) {
        auto set = build_basis(k, l);
        EXPECT_TRUE(set.certified) << to_string(k) << l;
        ASSERT_TRUE(set.c.has_value());
        EXPECT_EQ(set.certificate->t_m, l);
        EXPECT_EQ(exponents(set.operators()), exponent_multiset(k, l));
        auto arr = build_arrangement(k, l);
        if (set.certificate->det_known && l <= 3) {
            EXPECT_EQ(set.certificate->det(l), Polynomial::constant(l, *set.c) * arr.q.pow(static_cast<unsigned>(l)));
        }
    }
}

TEST(BuildBasis, ExampleMatrix) {
    // Paper layout: rows d1^2, d2^2, d3^2, d1d2, d1d3, d2d3; columns
    // eta_1..eta_3, theta_(1,1), theta_(1,0), theta_(0,0). Two entries are
    // corrected: the eta entries carry 1/2, and row 3 of theta_(1,0) is x3.
    auto x1 = x(3, 1), x2 = x(3, 2), x3 = x(3, 3);
    auto h = q(3, 1, 2);
    auto z = Polynomial(3);
    std::vector<std::vector<Polynomial>> shown = {
        {h * (x1 - x2) * (x1 - x3), z, z, h * x1 * x1, x1, h},
        {z, h * (x2 - x1) * (x2 - x3), z, h * x2 * x2, x2, h},
        {z, z, h * (x3 - x1) * (x3 - x2), h * x3 * x3, x3, h},
        {z, z, z, x1 * x2, x1 + x2, c(3, 1)},
        {z, z, z, x1 * x3, x1 + x3, c(3, 1)},
        {z, z, z, x2 * x3, x2 + x3, c(3, 1)},
    };
    std::vector<MultiIndex> shown_rows = {d2(1, 1), d2(2, 2), d2(3, 3), d2(1, 2), d2(1, 3), d2(2, 3)};
    auto set = build_basis(Kind::A, 3);
    auto mat = coefficient_matrix(set.operators());
    auto alphas = multi_indices(3, 2);
    for (std::size_t r = 0; r < shown_rows.size(); ++r) {
        auto col = static_cast<int>(std::find(alphas.begin(), alphas.end(), shown_rows[r]) - alphas.begin());
        for (int op = 0; op < 6; ++op) EXPECT_EQ(mat(op, col), shown[r][static_cast<std::size_t>(op)]) << r << "," << op;
    }
    ASSERT_TRUE(set.certified);
    EXPECT_EQ(*set.c, Rational(1, 8));
}
