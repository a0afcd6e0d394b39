#include <gtest/gtest.h>

#include "support.hpp"

using namespace coxops;
using namespace testing_support;

TEST(Arrangement, Examples) {
    auto a = build_arrangement(Kind::A, 3);
    ASSERT_EQ(a.forms.size(), 3u);
    EXPECT_EQ(a.forms[0], x(3, 1) - x(3, 2));
    EXPECT_EQ(a.forms[1], x(3, 1) - x(3, 3));
    EXPECT_EQ(a.forms[2], x(3, 2) - x(3, 3));
    EXPECT_EQ(a.q, vandermonde(3));
    EXPECT_EQ(a.name(), "A2");

    auto b = build_arrangement(Kind::B, 2);
    ASSERT_EQ(b.forms.size(), 4u);
    for (const auto& f : {x(2, 1), x(2, 2), x(2, 1) - x(2, 2), x(2, 1) + x(2, 2)})
        EXPECT_NE(std::find(b.forms.begin(), b.forms.end(), f), b.forms.end());
    EXPECT_EQ(b.name(), "B2");

    auto d = build_arrangement(Kind::D, 4);
    EXPECT_EQ(d.forms.size(), 12u);
    EXPECT_EQ(d.q.degree(), 12);
    EXPECT_EQ(d.q, vandermonde(4, 2));
    EXPECT_THROW(build_arrangement(Kind::A, 1), invalid_argument);
    EXPECT_THROW(build_arrangement(Kind::A, kMaxVars + 1), invalid_argument);
}

TEST(Arrangement, BinomialSizes) {
    auto a3 = build_arrangement(Kind::A, 3);
    EXPECT_EQ(s_m_size(3, 2), 6);
    EXPECT_EQ(t_m_exponent(a3, 2), 3);
    auto a4 = build_arrangement(Kind::B, 4);
    EXPECT_EQ(s_m_size(4, 2), 10);
    EXPECT_EQ(t_m_exponent(a4, 2), 4);
    for (int l = 2; l <= 8; ++l) {
        EXPECT_EQ(s_m_size(l, 1), l);
        EXPECT_EQ(t_m_exponent(build_arrangement(Kind::A, l), 1), 1);
    }
    EXPECT_THROW(s_m_size(3, 0), invalid_argument);
}

TEST(ArrangementProperty, CountsAndDegrees) {
    for (int l = 2; l <= 7; ++l)
        for (Kind k : {Kind::A, Kind::B, Kind::D}) {
            auto a = build_arrangement(k, l);
            std::size_t pairs = static_cast<std::size_t>(l * (l - 1) / 2);
            std::size_t want = k == Kind::A ? pairs : k == Kind::B ? static_cast<std::size_t>(l) + 2 * pairs : 2 * pairs;
            EXPECT_EQ(a.forms.size(), want);
            EXPECT_TRUE(a.q.is_homogeneous());
            EXPECT_EQ(a.q.degree(), static_cast<int>(want));
        }
}

TEST(ArrangementProperty, SquareFreeAndNonProportional) {
    for (int l = 2; l <= 5; ++l)
        for (Kind k : {Kind::A, Kind::B, Kind::D}) {
            auto a = build_arrangement(k, l);
            for (const auto& f : a.forms) {
                auto once = exact_divide(a.q, f);
                EXPECT_FALSE(is_divisible_by(once, f));
            }
            for (std::size_t i = 0; i < a.forms.size(); ++i)
                for (std::size_t j = i + 1; j < a.forms.size(); ++j) EXPECT_FALSE(is_divisible_by(a.forms[i], a.forms[j]));
        }
}

TEST(ArrangementProperty, Nesting) {
    for (int l = 2; l <= 6; ++l) {
        auto qa = build_arrangement(Kind::A, l).q;
        auto qb = build_arrangement(Kind::B, l).q;
        auto qd = build_arrangement(Kind::D, l).q;
        EXPECT_TRUE(is_divisible_by(qd, qa));
        EXPECT_TRUE(is_divisible_by(qb, qd));
        Polynomial prod = c(l, 1);
        for (int i = 1; i <= l; ++i) prod *= x(l, i);
        EXPECT_EQ(exact_divide(qb, qd), prod);
    }
}
