#include "primerace/constants.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include "primerace/error.hpp"

namespace primerace {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

double sum_log_p_over_p_minus_1(const Modulus& q) {
    double s = 0.0;
    for (const auto& [p, e] : q.factors()) s += std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
    return s;
}

std::complex<double> conj_value(const DirichletCharacter& chi, std::int64_t n) { return std::conj(chi(n)); }

}  // namespace

std::string to_string(C2Method m) {
    switch (m) {
        case C2Method::s0c_sums: return "s0c_sums";
        case C2Method::odd_character: return "odd_character";
        case C2Method::reduced: return "reduced";
        case C2Method::diagonal: return "diagonal";
        case C2Method::prime_q: return "prime_q";
    }
    return "unknown";
}

ConstantsTable::ConstantsTable(const Modulus& q, std::int64_t truncation)
    : q_(q), truncation_(truncation), q0_(q.q()) {
    while (q0_ % 2 == 0) q0_ /= 2;
    for (const std::int64_t m : divisors(q.q()))
        if (m > 1) tables_.emplace(m, build_ctable(q.q(), m, truncation));
    if (q0_ != q.q()) {
        for (const std::int64_t m : divisors(q0_))
            if (m > 1) odd_tables_.emplace(m, build_ctable(q0_, m, truncation));
    }

    const double phi = static_cast<double>(q.phi());
    const double qd = static_cast<double>(q.q());
    s0c_.resize(static_cast<std::size_t>(q.q()));
    s0c_[0] = phi / (2.0 * qd) * std::log(qd / (2.0 * std::numbers::pi)) - phi / (2.0 * qd) * sum_log_p_over_p_minus_1(q) + 0.5;
    for (std::int64_t v = 1; v < q.q(); ++v) s0c_[static_cast<std::size_t>(v)] = s0c_nonzero(v);
}

const CTable& ConstantsTable::ctable(std::int64_t m) const {
    const auto it = tables_.find(m);
    if (it == tables_.end()) throw InvalidArgument("ctable: m must be a divisor of q greater than 1");
    return it->second;
}

const CTable& ConstantsTable::ctable_odd_part(std::int64_t m) const {
    if (q0_ == q_.q()) return ctable(m);
    const auto it = odd_tables_.find(m);
    if (it == odd_tables_.end()) throw InvalidArgument("ctable_odd_part: m must divide the odd part of q");
    return it->second;
}

double ConstantsTable::s0c_nonzero(std::int64_t v) const {
    const double phi = static_cast<double>(q_.phi());
    const double qd = static_cast<double>(q_.q());
    const std::int64_t d = gcd(v, q_.q());
    const std::int64_t m = q_.q() / d;
    const double phi_m = static_cast<double>(totient(m));
    double value = -phi / (2.0 * qd) * von_mangoldt(m) / phi_m - sawtooth_b(q_, v);
    std::complex<double> sum{0.0, 0.0};
    for (const auto& e : ctable(m).entries) sum += conj_value(e.chi, v / d) * e.c;
    return value + sum.real() / phi_m;
}

double ConstantsTable::s0c(std::int64_t v) const { return s0c_[static_cast<std::size_t>(mod(v, q_.q()))]; }

double ConstantsTable::c2_s0c_sums(std::int64_t a, std::int64_t b) const {
    const std::int64_t q = q_.q();
    const double phi = static_cast<double>(q_.phi());
    double s = -epsilon_q(q_, a, b) / phi + s0c(b - a) + sawtooth_b(q_, b - a) - 1.0 / (2.0 * phi);
    double left = 0.0, right = 0.0;
    for (std::int64_t v = 0; v < q; ++v) {
        if (gcd(mod(v + a, q), q) == 1) left += s0c(v);
        if (gcd(mod(v - b, q), q) == 1) right += s0c(v);
    }
    double pairs = 0.0;
    for (const auto v1 : q_.reduced_classes())
        for (const auto v2 : q_.reduced_classes()) pairs += s0c(v2 - v1);
    s += -(left + right) / phi + pairs / (phi * phi);
    return static_cast<double>(q) * s;
}

double ConstantsTable::c2_odd_character(std::int64_t a, std::int64_t b) const {
    const std::int64_t q = q_.q();
    const double qd = static_cast<double>(q);
    const double phi = static_cast<double>(q_.phi());
    std::complex<double> total{0.0, 0.0};
    for (const auto& [d, table] : tables_) {
        const std::int64_t step = q / d;
        std::complex<double> inner{0.0, 0.0};
        for (const auto& e : table.entries) {
            if (!e.chi.is_odd()) continue;
            std::complex<double> u_sum{0.0, 0.0};
            for (std::int64_t u = 0; u < d; ++u) {
                if (gcd(mod(u * step + a, q), q) == 1) u_sum += conj_value(e.chi, u);
                if (gcd(mod(u * step - b, q), q) == 1) u_sum += conj_value(e.chi, u);
            }
            inner += e.c * u_sum;
        }
        total += inner / static_cast<double>(totient(d));
    }
    const double s = kLog2Pi / (2.0 * qd) + s0c(b - a) + sawtooth_b(q_, b - a) - total.real() / phi;
    return qd * s;
}

double ConstantsTable::c2_reduced(std::int64_t a, std::int64_t b) const {
    const double qd = static_cast<double>(q_.q());
    std::complex<double> sum{0.0, 0.0};
    for (const std::int64_t d : divisors(q0_)) {
        const int mu = mobius(d);
        if (d == 1 || mu == 0) continue;
        std::complex<double> inner{0.0, 0.0};
        for (const auto& e : ctable_odd_part(d).entries) inner += e.c * (conj_value(e.chi, b) - conj_value(e.chi, a));
        sum += static_cast<double>(mu) / static_cast<double>(totient(d)) * inner;
    }
    const double lead = static_cast<double>(q0_) / static_cast<double>(totient(q0_));
    return kLog2Pi / 2.0 + qd * s0c(b - a) + qd * sawtooth_b(q_, b - a) - lead * sum.real();
}

double ConstantsTable::c2_diagonal() const {
    const double phi = static_cast<double>(q_.phi());
    const double qd = static_cast<double>(q_.q());
    return (phi * std::log(qd / (2.0 * std::numbers::pi)) + kLog2Pi) / 2.0 - phi / 2.0 * sum_log_p_over_p_minus_1(q_);
}

double ConstantsTable::c2_prime_q(std::int64_t a, std::int64_t b) const {
    const double phi = static_cast<double>(q_.phi());
    const double qd = static_cast<double>(q_.q());
    std::complex<double> sum{0.0, 0.0};
    for (const auto& e : ctable(q_.q()).entries)
        sum += e.c * (conj_value(e.chi, b - a) + (conj_value(e.chi, b) - conj_value(e.chi, a)) / phi);
    return 0.5 * std::log(2.0 * std::numbers::pi / qd) + qd / phi * sum.real();
}

std::vector<C2Method> ConstantsTable::applicable_methods(std::int64_t a, std::int64_t b) const {
    std::vector<C2Method> out{C2Method::reduced, C2Method::s0c_sums, C2Method::odd_character};
    const bool same = mod(a - b, q_.q()) == 0;
    if (same) out.push_back(C2Method::diagonal);
    if (!same && is_prime(q_.q())) out.push_back(C2Method::prime_q);
    return out;
}

double ConstantsTable::c2_by(C2Method method, std::int64_t a, std::int64_t b) const {
    if (!q_.is_reduced(a) || !q_.is_reduced(b)) throw InvalidArgument("c2: classes must be reduced mod q");
    const bool same = mod(a - b, q_.q()) == 0;
    switch (method) {
        case C2Method::s0c_sums: return c2_s0c_sums(a, b);
        case C2Method::odd_character: return c2_odd_character(a, b);
        case C2Method::reduced: return c2_reduced(a, b);
        case C2Method::diagonal:
            if (!same) throw InvalidArgument("diagonal c2 form needs a = b");
            return c2_diagonal();
        case C2Method::prime_q:
            if (same || !is_prime(q_.q())) throw InvalidArgument("prime-q c2 form needs q prime and a != b");
            return c2_prime_q(a, b);
    }
    throw InvalidArgument("unknown c2 method");
}

double ConstantsTable::c2_pair(std::int64_t a, std::int64_t b) const {
    const double ref = c2_by(C2Method::reduced, a, b);
    for (const auto method : applicable_methods(a, b)) {
        const double other = c2_by(method, a, b);
        if (!(std::abs(other - ref) <= kC2Agreement)) {
            std::ostringstream os;
            os.precision(17);
            os << "c2(" << q_.q() << ";(" << a << "," << b << ")): form " << to_string(method) << " gives " << other
               << " but reduced form gives " << ref;
            throw ConsistencyError(os.str());
        }
    }
    return ref;
}

std::shared_ptr<const ConstantsTable> constants_for(const Modulus& q, std::int64_t truncation) {
    static std::mutex lock;
    static std::map<std::pair<std::int64_t, std::int64_t>, std::shared_ptr<const ConstantsTable>> cache;
    std::scoped_lock guard(lock);
    auto& slot = cache[{q.q(), truncation}];
    if (!slot) slot = std::make_shared<const ConstantsTable>(q, truncation);
    return slot;
}

double s0c(const Modulus& q, std::int64_t v) { return constants_for(q)->s0c(v); }

double c1(const ResiduePattern& pattern) {
    if (pattern.r() < 2) throw InvalidArgument("c1 needs r >= 2");
    const double phi = static_cast<double>(pattern.modulus().phi());
    const double r = static_cast<double>(pattern.r());
    return phi / 2.0 * ((r - 1.0) / phi - count_repeats(pattern, 1));
}

double c2_pair(const Modulus& q, std::int64_t a, std::int64_t b, std::int64_t truncation) {
    return constants_for(q, truncation)->c2_pair(a, b);
}

double c2_symmetric_sum(const Modulus& q, std::int64_t a, std::int64_t b) {
    if (!q.is_reduced(a) || !q.is_reduced(b)) throw InvalidArgument("c2_symmetric_sum: classes must be reduced");
    if (mod(a - b, q.q()) == 0) throw InvalidArgument("c2_symmetric_sum needs a != b (mod q)");
    const std::int64_t n = q.q() / gcd(mod(b - a, q.q()), q.q());
    const double closed = kLog2Pi - static_cast<double>(q.phi()) * von_mangoldt(n) / static_cast<double>(totient(n));
    const double pairs = c2_pair(q, a, b) + c2_pair(q, b, a);
    if (!(std::abs(closed - pairs) <= kC2Agreement))
        throw ConsistencyError("c2(a,b) + c2(b,a) disagrees with the symmetric closed form");
    return closed;
}

double c2_general(const ResiduePattern& pattern, std::int64_t truncation) {
    if (pattern.r() < 3) throw InvalidArgument("c2_general needs r >= 3");
    const Modulus& q = pattern.modulus();
    const auto table = constants_for(q, truncation);
    const std::size_t r = pattern.r();
    const double phi = static_cast<double>(q.phi());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < r; ++i) sum += table->c2_pair(pattern[i], pattern[i + 1]);
    double extra = 0.0;
    for (std::size_t j = 1; j + 1 < r; ++j) {
        const double expected = static_cast<double>(r - 1 - j) / phi;
        extra += (expected - count_repeats(pattern, j + 1)) / static_cast<double>(j);
    }
    return sum + phi / 2.0 * extra;
}

double c2(const ResiduePattern& pattern, std::int64_t truncation) {
    if (pattern.r() < 2) throw InvalidArgument("c2 needs r >= 2");
    if (pattern.r() == 2) return c2_pair(pattern.modulus(), pattern[0], pattern[1], truncation);
    return c2_general(pattern, truncation);
}

ConjectureConstants conjecture_constants(const ResiduePattern& pattern) {
    const auto table = constants_for(pattern.modulus());
    ConjectureConstants out{pattern, c1(pattern), c2(pattern), C2Method::reduced, {}};
    for (std::int64_t v = 1; v <= pattern.modulus().q(); ++v) out.s0c.push_back(table->s0c(v));
    return out;
}

S0Sum s0_analytic(const Modulus& q, std::int64_t v, double H, int k) {
    if (!(H > 0.0)) throw InvalidArgument("s0: H must be positive");
    if (k < 0) throw InvalidArgument("s0: k must be >= 0");
    S0Sum out{q.q(), q.canonical(v), H, k};
    out.method = S0Method::analytic;
    const double lead = static_cast<double>(q.phi()) / (2.0 * static_cast<double>(q.q()));
    const bool zero = mod(v, q.q()) == 0;
    if (k == 0)
        out.value = constants_for(q)->s0c(v) - (zero ? lead * std::log(H) : 0.0);
    else
        out.value = zero ? -lead * std::tgamma(k) * std::pow(H, k) : 0.0;
    return out;
}

SkipCoefficients skip_coefficient(const Modulus& q, std::int64_t a, std::int64_t b, int k) {
    if (k < 2) throw InvalidArgument("skip_coefficient needs k >= 2");
    if (!q.is_reduced(a) || !q.is_reduced(b)) throw InvalidArgument("skip_coefficient: classes must be reduced");
    const double denom = 2.0 * (k - 1);
    if (mod(a - b, q.q()) != 0) return {0.0, 1.0 / denom};
    return {0.0, -(static_cast<double>(q.phi()) - 1.0) / denom};
}

}  // namespace primerace
