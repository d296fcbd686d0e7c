#include "primerace/lfun.hpp"

#include <cmath>

#include "primerace/error.hpp"
#include "primerace/primes.hpp"

namespace primerace {

double digamma(double x) {
    if (!(x > 0.0)) throw InvalidArgument("digamma: argument must be positive");
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    // psi(x) ~ log x - 1/(2x) - sum_k B_{2k} / (2k x^{2k})
    const double inv2 = 1.0 / (x * x);
    const double series =
        inv2 * (1.0 / 12 -
                 inv2 * (1.0 / 120 -
                         inv2 * (1.0 / 252 -
                                 inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))));
    return shift + std::log(x) - 0.5 / x - series;
}

namespace {

void require_non_principal(const DirichletCharacter& chi, const char* what) {
    if (chi.is_principal()) throw InvalidArgument(std::string(what) + ": principal character is not supported");
}

}  // namespace

std::complex<double> l_at_zero(const DirichletCharacter& chi) {
    require_non_principal(chi, "l_at_zero");
    if (!chi.is_odd()) return {0.0, 0.0};
    const std::int64_t m = chi.modulus();
    std::complex<double> sum{0.0, 0.0};
    for (std::int64_t a = 1; a < m; ++a) sum += chi(a) * static_cast<double>(a);
    return -sum / static_cast<double>(m);
}

std::complex<double> l_at_one(const DirichletCharacter& chi) {
    require_non_principal(chi, "l_at_one");
    const std::int64_t m = chi.modulus();
    std::complex<double> sum{0.0, 0.0};
    for (std::int64_t a = 1; a < m; ++a) {
        const auto v = chi(a);
        if (v == std::complex<double>{0.0, 0.0}) continue;
        sum += v * digamma(static_cast<double>(a) / static_cast<double>(m));
    }
    return -sum / static_cast<double>(m);
}

double euler_tail_bound(std::int64_t truncation) {
    const double p = static_cast<double>(truncation);
    return 5.0 / (p * std::log(p));
}

EulerProduct a_q_chi(std::int64_t q, const DirichletCharacter& chi, std::int64_t truncation) {
    if (truncation < 100) throw InvalidArgument("a_q_chi: truncation must be >= 100");
    const std::int64_t m = chi.modulus();
    if (q < 1 || q % m != 0) throw InvalidArgument("a_q_chi: character modulus must divide q");

    const auto values = chi.value_table();
    std::complex<double> prod{1.0, 0.0};
    for (const auto& [p, e] : factorize(q)) prod *= 1.0 - values[static_cast<std::size_t>(p % m)] / static_cast<double>(p);

    const auto table = prime_table(static_cast<std::uint64_t>(truncation));
    for (const std::uint32_t p : primes_up_to(*table, static_cast<std::uint64_t>(truncation))) {
        if (q % p == 0) continue;
        const auto c = values[p % static_cast<std::uint64_t>(m)];
        const double pm1 = static_cast<double>(p) - 1.0;
        const auto w = 1.0 - c;
        prod *= 1.0 - w * w / (pm1 * pm1);
    }
    return {prod, euler_tail_bound(truncation), truncation};
}

std::complex<double> c_q_chi(std::int64_t q, const DirichletCharacter& chi, std::int64_t truncation) {
    require_non_principal(chi, "c_q_chi");
    if (!chi.is_odd()) return {0.0, 0.0};
    return l_at_zero(chi) * l_at_one(chi) * a_q_chi(q, chi, truncation).value;
}

std::complex<double> reduce_c(std::int64_t q, const DirichletCharacter& chi, std::int64_t truncation) {
    require_non_principal(chi, "reduce_c");
    if (q % chi.modulus() != 0) throw InvalidArgument("reduce_c: character modulus must divide q");
    if (!chi.is_odd()) return {0.0, 0.0};
    const auto [conductor, primitive] = conductor_and_primitive(chi);

    // Euler factors at primes dividing the modulus of chi but not its conductor.
    std::complex<double> factor{1.0, 0.0};
    for (const auto& [p, e] : factorize(chi.modulus()))
        if (conductor % p != 0) factor *= 1.0 - primitive(p);

    if (q % 2 == 0 && conductor % 2 == 1) {
        std::int64_t q0 = q;
        while (q0 % 2 == 0) q0 /= 2;
        return factor * std::conj(primitive(2)) / 2.0 * c_q_chi(q0, primitive, truncation);
    }
    return factor * c_q_chi(q, primitive, truncation);
}

CTable build_ctable(std::int64_t q, std::int64_t m, std::int64_t truncation) {
    if (m < 1 || q % m != 0) throw InvalidArgument("build_ctable: m must divide q");
    CTable table{q, m, {}, truncation, euler_tail_bound(truncation)};
    const CharacterGroup group(m);
    for (auto& chi : group.characters()) {
        if (chi.is_principal()) continue;
        CEntry e{chi, l_at_zero(chi), l_at_one(chi), a_q_chi(q, chi, truncation).value, {}};
        e.c = chi.is_odd() ? e.l0 * e.l1 * e.a : std::complex<double>{0.0, 0.0};
        table.entries.push_back(std::move(e));
    }
    return table;
}

}  // namespace primerace
