#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "primerace/constants.hpp"
#include "primerace/error.hpp"
#include "primerace/singular.hpp"

using namespace primerace;

namespace {

const double kPi = std::numbers::pi;

}  // namespace

TEST(Constants, S0cExamples) {
    const Modulus q3(3);
    EXPECT_NEAR(s0c(q3, 0), std::log(3 / (2 * kPi)) / 3 - std::log(3.0) / 6 + 0.5, 1e-14);
    EXPECT_NEAR(s0c(q3, 3), s0c(q3, 0), 0.0);
    EXPECT_NEAR(s0c(Modulus(12), 6), -std::log(2.0) / 6, 1e-14);
    const SingularContext ctx(q3);
    EXPECT_LE(std::abs(s0_brute(ctx, 1, 1e4).value - s0c(q3, 1)), 2 * std::pow(10.0, -1.6));
}

TEST(Constants, S0cAgainstBrute) {
    for (std::int64_t q = 3; q <= 12; ++q) {
        const Modulus m(q);
        const SingularContext ctx(m);
        for (std::int64_t v = 1; v <= q; ++v) {
            const double H = 1e3;
            EXPECT_LE(std::abs(s0_brute(ctx, v, H).value - s0_analytic(m, v, H).value), 2 * std::pow(H, -0.4))
                << q << " " << v;
        }
    }
}

TEST(Constants, C1) {
    EXPECT_DOUBLE_EQ(c1(ResiduePattern(Modulus(3), {1, 2})), 0.5);
    EXPECT_DOUBLE_EQ(c1(ResiduePattern(Modulus(3), {1, 1})), -0.5);
    EXPECT_DOUBLE_EQ(c1(ResiduePattern(Modulus(5), {1, 1, 1})), -3.0);
    EXPECT_THROW(c1(ResiduePattern(Modulus(5), {1})), InvalidArgument);
}

TEST(Constants, ClosedForms) {
    for (std::int64_t q : {3, 4}) {
        const Modulus m(q);
        EXPECT_NEAR(c2_pair(m, 1, q - 1), 0.5 * std::log(2 * kPi / q), 1e-9);
        EXPECT_NEAR(c2_pair(m, 1, 1), -0.5 * std::log(2 * kPi / q), 1e-9);
    }
    const Modulus m8(8);
    for (std::int64_t a : {1, 3, 5, 7}) {
        EXPECT_NEAR(c2_pair(m8, a, a), (5 * std::log(2.0) - 3 * std::log(kPi)) / 2, 1e-9);
        EXPECT_NEAR(c2_pair(m8, a, a + 4), (std::log(kPi) - 3 * std::log(2.0)) / 2, 1e-9);
    }
}

TEST(Constants, Mod12FiveSeven) {
    const auto a = a_q_chi(12, CharacterGroup(3).character(1)).value;
    EXPECT_NEAR(c2_pair(Modulus(12), 5, 7), 0.5 * std::log(2 * kPi) + kPi / std::sqrt(3.0) * a.real(), 1e-8);
}

TEST(Constants, FormsAgree) {
    for (std::int64_t q = 3; q <= 30; ++q) {
        const Modulus m(q);
        const auto t = constants_for(m);
        for (auto a : m.reduced_classes())
            for (auto b : m.reduced_classes()) {
                const auto methods = t->applicable_methods(a, b);
                for (std::size_t i = 0; i < methods.size(); ++i)
                    for (std::size_t j = i + 1; j < methods.size(); ++j)
                        ASSERT_NEAR(t->c2_by(methods[i], a, b), t->c2_by(methods[j], a, b), kC2Agreement)
                            << q << " (" << a << "," << b << ") " << to_string(methods[i]) << " vs "
                            << to_string(methods[j]);
                ASSERT_NEAR(t->c2_pair(a, b), t->c2_pair(-b, -a), 1e-9);
            }
    }
}

TEST(Constants, FormApplicability) {
    const auto t7 = constants_for(Modulus(7));
    EXPECT_EQ(t7->applicable_methods(1, 2).size(), 4u);
    EXPECT_EQ(t7->applicable_methods(1, 1).size(), 4u);
    EXPECT_THROW(t7->c2_by(C2Method::diagonal, 1, 2), InvalidArgument);
    EXPECT_THROW(constants_for(Modulus(8))->c2_by(C2Method::prime_q, 1, 3), InvalidArgument);
    EXPECT_THROW(t7->c2_by(C2Method::reduced, 1, 7), InvalidArgument);
}

TEST(Constants, SymmetricSum) {
    const Modulus m8(8);
    EXPECT_NEAR(c2_symmetric_sum(m8, 1, 3), std::log(2 * kPi) - 2 * std::log(2.0), 1e-12);
    EXPECT_NEAR(c2_symmetric_sum(m8, 1, 3), std::log(kPi) - std::log(2.0), 1e-12);
    EXPECT_NEAR(c2_symmetric_sum(Modulus(3), 1, 2), std::log(2 * kPi / 3), 1e-12);
    EXPECT_NEAR(c2_symmetric_sum(Modulus(5), 1, 2), std::log(2 * kPi) - std::log(5.0), 1e-12);
    EXPECT_THROW(c2_symmetric_sum(Modulus(5), 2, 2), InvalidArgument);
    for (std::int64_t q = 3; q <= 30; ++q) {
        const Modulus m(q);
        for (auto a : m.reduced_classes())
            for (auto b : m.reduced_classes())
                if (a != b) EXPECT_NO_THROW(c2_symmetric_sum(m, a, b));
    }
}

TEST(Constants, Mod8DependsOnDifference) {
    const Modulus m8(8);
    for (std::int64_t d : {0, 2, 4, 6}) {
        const double ref = c2_pair(m8, 1, 1 + d);
        for (std::int64_t a : {3, 5, 7}) EXPECT_NEAR(c2_pair(m8, a, a + d), ref, 1e-9);
    }
}

TEST(Constants, AlwaysBiasIdentity) {
    for (std::int64_t q : {3, 4}) {
        const Modulus m(q);
        for (auto a : m.reduced_classes())
            EXPECT_NEAR(c2_pair(m, a, -a) - c2_pair(m, a, a), std::log(2 * kPi / q), 1e-9);
    }
}

TEST(Constants, General) {
    const Modulus m3(3);
    EXPECT_NEAR(c2(ResiduePattern(m3, {1, 1, 1})), 2 * c2_pair(m3, 1, 1) + (0.5 - 1.0), 1e-12);
    EXPECT_NEAR(c2(ResiduePattern(m3, {1, 2, 1})), c2_pair(m3, 1, 2) + c2_pair(m3, 2, 1) + (0.5 - 1.0), 1e-12);
    EXPECT_THROW(c2_general(ResiduePattern(m3, {1, 2})), InvalidArgument);
    for (std::int64_t q = 3; q <= 12; ++q) {
        const Modulus m(q);
        for (auto a : m.reduced_classes())
            for (auto b : m.reduced_classes()) {
                double s = 0.0;
                for (auto c : m.reduced_classes()) s += c1(ResiduePattern(m, {a, c, b}));
                EXPECT_NEAR(s / static_cast<double>(m.phi()), 0.0, 1e-12);
            }
    }
}

TEST(Constants, Skip) {
    const Modulus m5(5);
    const auto s = skip_coefficient(m5, 1, 2, 2);
    EXPECT_EQ(s.c1, 0.0);
    EXPECT_DOUBLE_EQ(s.c2, 0.5);
    EXPECT_DOUBLE_EQ(skip_coefficient(m5, 3, 3, 3).c2, -0.75);
    EXPECT_LT(skip_coefficient(m5, 1, 2, 1000000).c2, 1e-6);
    EXPECT_THROW(skip_coefficient(m5, 1, 2, 1), InvalidArgument);
}

TEST(Constants, ConjectureConstants) {
    const auto cc = conjecture_constants(ResiduePattern(Modulus(4), {1, 3}));
    EXPECT_DOUBLE_EQ(cc.c1, 0.5);
    EXPECT_EQ(cc.s0c.size(), 4u);
    EXPECT_EQ(cc.c2_method, C2Method::reduced);
}
