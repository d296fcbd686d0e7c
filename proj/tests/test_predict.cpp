#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>

#include "primerace/constants.hpp"
#include "primerace/error.hpp"
#include "primerace/predict.hpp"
#include "primerace/singular.hpp"

using namespace primerace;

namespace {

// composite Simpson in u = log t on a fixed mesh
double li_simpson(double x, int n) {
    const double a = std::log(2.0), b = std::log(x), h = (b - a) / n;
    auto f = [](double u) { return std::exp(u) / u; };
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace

TEST(Predict, Li) {
    EXPECT_EQ(li(2.0), 0.0);
    EXPECT_LT(li(1e6), li(1e9));
    EXPECT_LT(rel(li(1e9), li_simpson(1e9, 2'000'000)), 1e-8);
    for (double x : {10.0, 1e4, 1e12, 1e18})
        EXPECT_LT(rel(li(x), boost::math::expint(std::log(x)) - boost::math::expint(std::log(2.0))), 1e-10) << x;
    EXPECT_THROW(li(1.5), InvalidArgument);
}

TEST(Predict, AsymptoticExamples) {
    const auto row = asymptotic_prediction(ResiduePattern(Modulus(3), {1, 1}), 1e9);
    EXPECT_LT(rel(row.value, 1.156e7), 5e-4);
    EXPECT_NEAR(row.loglog_term, -0.5 * std::log(std::log(1e9)) / std::log(1e9), 1e-15);
    EXPECT_DOUBLE_EQ(row.value, row.main * (1 + row.loglog_term + row.log_term));
    EXPECT_LT(rel(asymptotic_prediction(ResiduePattern(Modulus(4), {1, 3}), 1e9).value, 1.378e7), 5e-4);
    EXPECT_FALSE(asymptotic_prediction(ResiduePattern(Modulus(4), {1, 3}), 1e5).notes.empty());
    EXPECT_THROW(asymptotic_prediction(ResiduePattern(Modulus(4), {1}), 1e9), InvalidArgument);
}

TEST(Predict, C1CancelsOverPatterns) {
    for (std::int64_t q : {3, 5, 8, 10, 12}) {
        const Modulus m(q);
        double s = 0.0;
        for (const auto& p : all_patterns(m, 2)) s += c1(p);
        EXPECT_NEAR(s, 0.0, 1e-12);
    }
}

TEST(Predict, BruteD0IsGeometricPlusS0) {
    const Modulus q(3);
    const double y = 1e6;
    const auto d = density_terms_brute(q, 1, 1, y);
    double geometric = 0.0;
    for (std::int64_t h = 3; h <= d.cutoff; h += 3) geometric += std::exp(-h / d.H);
    const SingularContext ctx(q);
    const auto s = s0_brute(ctx, 0, d.H);
    EXPECT_EQ(s.cutoff, d.cutoff);
    EXPECT_NEAR(d.D0, geometric + s.value, 1e-9);
}

// D1 = -lambda * (sums of S_{q,0} over interior points). Those sums drift negative (the
// singular series average to 1 minus a logarithmic deficit), so D1 comes out positive.
TEST(Predict, BruteD1Sign) {
    const auto d = density_terms_brute(Modulus(3), 1, 2, 1e6);
    EXPECT_GT(d.D1, 0.0);
    EXPECT_LT(d.D2, 0.0);
}

TEST(Predict, BruteCutoffDoubling) {
    const auto a = density_terms_brute(Modulus(5), 1, 3, 1e6);
    const auto b = density_terms_brute(Modulus(5), 1, 3, 1e6, 2 * a.cutoff);
    EXPECT_LT(rel(a.D0, b.D0), 1e-10);
    EXPECT_LT(rel(a.D1, b.D1), 1e-10);
    EXPECT_LT(rel(a.D2, b.D2), 1e-10);
    // alpha(y) <= 0 once log y <= q/phi(q)
    EXPECT_THROW(density_terms_brute(Modulus(5), 1, 3, 3.0), InvalidArgument);
    EXPECT_THROW(density_terms_brute(Modulus(5), 1, 3, 1e6, 10), InvalidArgument);
}

TEST(Predict, SemiAnalyticRegroupsBrute) {
    // with the same S0 values the closed geometric sums reproduce the direct sums
    for (std::int64_t q : {3, 4, 5, 8}) {
        const Modulus m(q);
        for (auto a : m.reduced_classes())
            for (auto b : m.reduced_classes()) {
                const auto s = density_terms_semianalytic(m, a, b, 1e6, S0Source::brute);
                const auto d = density_terms_brute(m, a, b, 1e6);
                EXPECT_LT(rel(s.total(), d.total()), 1e-10) << q << " " << a << " " << b;
            }
    }
}

TEST(Predict, SemiAnalyticMod3NearBrute) {
    const Modulus m(3);
    for (auto a : m.reduced_classes())
        for (auto b : m.reduced_classes())
            EXPECT_LT(rel(density_terms_semianalytic(m, a, b, 1e6).total(), density_terms_brute(m, a, b, 1e6).total()),
                      0.01);
}

TEST(Predict, D0Limit) {
    double prev = 0.0;
    for (double y : {1e10, 1e50, 1e100, 1e300}) {
        const auto d = density_terms_semianalytic(Modulus(3), 1, 1, y);
        const double ratio = d.D0 * 3.0 / d.H;
        EXPECT_GT(ratio, prev);
        prev = ratio;
    }
    EXPECT_NEAR(prev, 1.0, 0.02);
}

TEST(Predict, ScaleInvariants) {
    const Modulus m(5);
    for (double y : {50.0, 1e3, 1e9}) {
        const double alpha = density_alpha(m, y);
        EXPECT_GT(alpha, 0.0);
        EXPECT_LT(alpha, 1.0);
        EXPECT_GT(density_h(m, y), 0.0);
    }
    EXPECT_THROW(density_alpha(m, 3.0), InvalidArgument);
}

TEST(Predict, Reversal) {
    for (std::int64_t q : {5, 7, 12}) {
        const Modulus m(q);
        for (auto a : m.reduced_classes())
            for (auto b : m.reduced_classes()) {
                const double x = density_terms_semianalytic(m, a, b, 1e8).total();
                const double y = density_terms_semianalytic(m, -b, -a, 1e8).total();
                EXPECT_LT(rel(x, y), 1e-10);
            }
    }
    const Modulus m7(7);
    EXPECT_LT(rel(integral_prediction(m7, 2, 3, 1e9).value, integral_prediction(m7, 4, 5, 1e9).value), 2e-7);
}

TEST(Predict, IntegralExamples) {
    EXPECT_LT(rel(integral_prediction(Modulus(3), 1, 1, 1e9).value, 1.137e7), 0.005);
    EXPECT_LT(rel(integral_prediction(Modulus(4), 1, 3, 1e12).value, 1.012e10), 0.005);
    EXPECT_LT(rel(integral_prediction(Modulus(5), 1, 4, 1e12).value, 2.141e9), 0.005);
    const auto row = integral_prediction(Modulus(3), 1, 2, 1e9);
    EXPECT_LE(row.quadrature_error_estimate, 1e-7 * row.value);
    EXPECT_NEAR(row.y_min, std::exp(3.0), 1e-9);
    EXPECT_THROW(integral_prediction(Modulus(3), 1, 2, 1e3), InvalidArgument);
}

TEST(Predict, IntegralThreadIndependent) {
    IntegralOptions one, four;
    one.threads = 1;
    four.threads = 4;
    EXPECT_EQ(integral_prediction(Modulus(5), 2, 3, 1e10, one).value,
              integral_prediction(Modulus(5), 2, 3, 1e10, four).value);
}

TEST(Predict, PatternSumNearLi) {
    for (std::int64_t q : {3, 4, 5}) {
        const Modulus m(q);
        double s = 0.0;
        for (auto a : m.reduced_classes())
            for (auto b : m.reduced_classes()) s += integral_prediction(m, a, b, 1e9).value;
        EXPECT_LT(rel(s, li(1e9)), 0.01) << q;
    }
}

TEST(Predict, IntegralAndAsymptoticConverge) {
    const Modulus m(3);
    for (const auto& p : all_patterns(m, 2)) {
        const double e9 = rel(integral_prediction(m, p[0], p[1], 1e9).value, asymptotic_prediction(p, 1e9).value);
        const double e12 = rel(integral_prediction(m, p[0], p[1], 1e12).value, asymptotic_prediction(p, 1e12).value);
        EXPECT_LT(e12, e9) << p.to_string();
    }
}

TEST(Predict, Mod8DifferenceSymmetry) {
    const Modulus m(8);
    for (std::int64_t d : {0, 2, 4, 6}) {
        const double ref = integral_prediction(m, 1, 1 + d, 1e9).value;
        for (std::int64_t a : {3, 5, 7}) EXPECT_LT(rel(integral_prediction(m, a, a + d, 1e9).value, ref), 2e-7);
    }
}

TEST(Predict, AlwaysBias) {
    const auto diff = [](std::int64_t q, std::int64_t a, double x) {
        const Modulus m(q);
        return asymptotic_prediction(ResiduePattern(m, {a, -a}), x).value -
               asymptotic_prediction(ResiduePattern(m, {a, a}), x).value;
    };
    EXPECT_NEAR(diff(3, 1, 1e16) / always_bias_difference(3, 1e16), 1.0, 0.05);
    EXPECT_NEAR(diff(4, 1, 1e16) / always_bias_difference(4, 1e16), 1.0, 0.05);
    EXPECT_LT(std::abs(diff(3, 1, 1e20) / always_bias_difference(3, 1e20) - 1.0),
              std::abs(diff(3, 1, 1e10) / always_bias_difference(3, 1e10) - 1.0));
    for (double x : {10.0, 1e3, 1e9}) EXPECT_GT(always_bias_difference(3, x), 0.0);
    EXPECT_GT(always_bias_difference(3, 1e9), always_bias_difference(4, 1e9));
    EXPECT_THROW(always_bias_difference(5, 1e9), InvalidArgument);
}

TEST(Predict, QuadResidueSum) {
    for (double x : {10.0, 1e6, 1e12}) EXPECT_LT(quad_residue_sum_prediction(3, x), 0.0);
    EXPECT_DOUBLE_EQ(quad_residue_sum_prediction(3, 1e6), -2.0 * always_bias_difference(3, 1e6));
    EXPECT_THROW(quad_residue_sum_prediction(9, 1e6), InvalidArgument);
    EXPECT_THROW(quad_residue_sum_prediction(2, 1e6), InvalidArgument);
}

TEST(Predict, Skip) {
    const Modulus m(10);
    const double x = 1e9, L = std::log(x);
    const auto r = skip_prediction(m, 1, 3, 2, x);
    EXPECT_DOUBLE_EQ(r.value, li(x) / 16 * (1 + 0.5 / L));
    EXPECT_NEAR(skip_prediction(m, 3, 3, 2, x).value, li(x) / 16 * (1 - 1.5 / L), 1e-6);
    EXPECT_LT(rel(skip_prediction(m, 1, 3, 1'000'000, x).value, li(x) / 16), 1e-6);
    EXPECT_THROW(skip_prediction(m, 1, 3, 1, x), InvalidArgument);
}

TEST(Predict, MiddleAverageMatchesSkip) {
    // averaging the r = 3 constants over the middle class gives the skip-2 constant
    for (std::int64_t q : {3, 4, 5, 7, 8, 12}) {
        const Modulus m(q);
        for (auto a : m.reduced_classes())
            for (auto b : m.reduced_classes()) {
                double s = 0.0;
                for (auto c : m.reduced_classes()) s += c2(ResiduePattern(m, {a, c, b}));
                EXPECT_NEAR(s / static_cast<double>(m.phi()), skip_coefficient(m, a, b, 2).c2, 1e-8);
            }
    }
}
