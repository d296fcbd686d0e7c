#include <gtest/gtest.h>

#include <complex>
#include <numeric>
#include <set>

#include "primerace/characters.hpp"

using namespace primerace;

namespace {

using cd = std::complex<double>;

bool close(cd a, cd b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST(Characters, Mod4) {
    const auto g = build_group(Modulus(4));
    EXPECT_EQ(g.order(), 2);
    int nonprincipal = 0;
    for (const auto& chi : g.characters()) {
        if (chi.is_principal()) continue;
        ++nonprincipal;
        EXPECT_TRUE(close(chi(3), -1.0));
        EXPECT_TRUE(chi.is_odd());
    }
    EXPECT_EQ(nonprincipal, 1);
}

TEST(Characters, Mod5Cyclic) {
    const auto g = build_group(Modulus(5));
    EXPECT_EQ(g.order(), 4);
    EXPECT_EQ(g.generators().size(), 1u);
    for (const auto& chi : g.characters()) {
        EXPECT_TRUE(close(std::pow(chi(2), 4), 1.0));
        EXPECT_TRUE(close(chi(2) * chi(2), chi(4)));
    }
}

TEST(Characters, Mod12AllReal) {
    const auto g = build_group(Modulus(12));
    EXPECT_EQ(g.order(), 4);
    for (const auto& chi : g.characters()) EXPECT_TRUE(chi.is_real());
}

TEST(Characters, Evaluation) {
    for (std::int64_t q : {7, 9, 12, 16, 20, 21}) {
        const auto g = build_group(Modulus(q));
        for (const auto& chi : g.characters()) {
            for (std::int64_t n = -q; n <= 2 * q; ++n) {
                if (std::gcd(n, q) != 1) {
                    EXPECT_EQ(chi(n), cd(0.0, 0.0));
                    EXPECT_FALSE(chi.exact(n).has_value());
                } else {
                    EXPECT_NEAR(std::abs(chi(n)), 1.0, 1e-14);
                    if (chi.is_principal()) EXPECT_TRUE(close(chi(n), 1.0));
                }
            }
            EXPECT_EQ(chi.parity() == 1, close(chi(q - 1), 1.0));
        }
    }
}

TEST(Characters, MultiplicativeAndPeriodic) {
    for (std::int64_t q = 3; q <= 30; ++q) {
        const auto g = build_group(Modulus(q));
        for (const auto& chi : g.characters())
            for (std::int64_t m = 0; m <= 3 * q; ++m)
                for (std::int64_t n = 0; n <= 3 * q; ++n) {
                    ASSERT_TRUE(close(chi(m * n), chi(m) * chi(n), 1e-12)) << q;
                    ASSERT_TRUE(chi.exact(m * n) == chi.exact(m * n + q));
                }
    }
}

TEST(Characters, Orthogonality) {
    for (std::int64_t q = 3; q <= 100; ++q) {
        const Modulus m(q);
        const auto g = build_group(m);
        const auto chars = g.characters();
        ASSERT_EQ(static_cast<std::int64_t>(chars.size()), m.phi());
        std::set<std::vector<std::int64_t>> tables;
        for (const auto& chi : chars) {
            std::vector<std::int64_t> t;
            for (auto a : m.reduced_classes()) t.push_back(*chi.exponent_at(a));
            tables.insert(t);
        }
        EXPECT_EQ(static_cast<std::int64_t>(tables.size()), m.phi()) << "characters not distinct mod " << q;
        for (auto a : m.reduced_classes())
            for (auto b : m.reduced_classes()) {
                cd s = 0.0;
                for (const auto& chi : chars) s += chi(a) * std::conj(chi(b));
                s /= static_cast<double>(m.phi());
                ASSERT_TRUE(close(s, a == b ? 1.0 : 0.0, 1e-12)) << q << " " << a << " " << b;
            }
    }
}

TEST(Characters, OddCount) {
    for (std::int64_t q = 3; q <= 60; ++q) {
        const auto g = build_group(Modulus(q));
        int odd = 0;
        for (const auto& chi : g.characters()) odd += chi.is_odd();
        EXPECT_EQ(odd, g.order() / 2) << q;
    }
    for (std::int64_t q : {8, 12}) {
        int odd = 0;
        for (const auto& chi : build_group(Modulus(q)).characters()) odd += chi.is_odd();
        EXPECT_EQ(odd, 2);
    }
}

TEST(Characters, Conjugate) {
    const auto g = build_group(Modulus(13));
    for (const auto& chi : g.characters())
        for (std::int64_t n = 1; n < 13; ++n) EXPECT_TRUE(close(chi.conj()(n), std::conj(chi(n))));
}

TEST(Characters, ConductorExamples) {
    const auto g12 = build_group(Modulus(12));
    const auto p = conductor_and_primitive(g12.principal());
    EXPECT_EQ(p.conductor, 1);

    // quadratic character mod 3 lifted to 12: values 1, -1, 1, -1 on 1, 5, 7, 11
    bool found = false;
    for (const auto& chi : g12.characters()) {
        if (!(close(chi(1), 1) && close(chi(5), -1) && close(chi(7), 1) && close(chi(11), -1))) continue;
        found = true;
        const auto info = conductor_and_primitive(chi);
        EXPECT_EQ(info.conductor, 3);
        for (std::int64_t n : {1, 5, 7, 11}) EXPECT_TRUE(close(info.primitive(n), chi(n)));
    }
    EXPECT_TRUE(found);

    const auto g5 = build_group(Modulus(5));
    for (const auto& chi : g5.characters()) {
        if (chi.is_principal()) continue;
        const auto info = conductor_and_primitive(chi);
        EXPECT_EQ(info.conductor, 5);
        for (std::int64_t n = 0; n < 5; ++n) EXPECT_TRUE(close(info.primitive(n), chi(n)));
    }
}

TEST(Characters, ConductorInducesEverywhere) {
    for (std::int64_t q = 3; q <= 64; ++q) {
        const auto g = build_group(Modulus(q));
        for (const auto& chi : g.characters()) {
            const auto info = conductor_and_primitive(chi);
            ASSERT_EQ(q % info.conductor, 0);
            for (std::int64_t n = 1; n <= q; ++n)
                if (std::gcd(n, q) == 1) ASSERT_TRUE(close(info.primitive(n), chi(n)));
            // no proper divisor of the conductor induces chi
            for (std::int64_t f = 1; f < info.conductor; ++f) {
                if (info.conductor % f) continue;
                bool periodic = true;
                for (std::int64_t n = 1; n <= q && periodic; ++n)
                    for (std::int64_t m = n + f; m <= q && periodic; m += f)
                        if (std::gcd(n, q) == 1 && std::gcd(m, q) == 1 && !close(chi(n), chi(m))) periodic = false;
                ASSERT_FALSE(periodic) << "q=" << q << " conductor " << info.conductor << " but period " << f;
            }
        }
    }
}
