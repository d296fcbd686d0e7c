#include "primerace/singular.hpp"

#include <cmath>
#include <vector>

#include <omp.h>

#include "primerace/error.hpp"
#include "primerace/primes.hpp"

namespace primerace {

namespace {

constexpr std::int64_t kChunk = 1 << 15;

// Neumaier-compensated sum.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

void check_s0_args(double H, int k) {
    if (!(H >= 10.0)) throw InvalidArgument("s0: H must be >= 10");
    if (k < 0) throw InvalidArgument("s0: k must be >= 0");
}

std::int64_t s0_cutoff(double H, int k) {
    return static_cast<std::int64_t>(std::ceil(kS0CutoffFactor * H * (k + 1)));
}

// sum_{h > cutoff} h^k e^{-h/H}, bounded by an integral; |S_{q,0}| stays below a few units.
double s0_tail(double H, int k, std::int64_t cutoff) {
    const double c = static_cast<double>(cutoff);
    return 4.0 * std::pow(c, k) * std::exp(-c / H) * (H + 1.0) * (k + 1);
}

std::vector<std::int64_t> distinct_primes(std::int64_t h) {
    std::vector<std::int64_t> out;
    for (const auto& pp : factorize(h)) out.push_back(pp.p);
    return out;
}

}  // namespace

SingularContext::SingularContext(const Modulus& q, std::int64_t truncation)
    : q_(q), twin_tail_(1.0), truncation_(truncation), tail_bound_(0.0) {
    if (truncation < 100) throw InvalidArgument("singular context: truncation must be >= 100");
    const auto table = prime_table(static_cast<std::uint64_t>(truncation));
    Accumulator log_sum;
    for (const std::uint32_t p : primes_up_to(*table, static_cast<std::uint64_t>(truncation))) {
        if (p == 2 || q.q() % p == 0) continue;
        const double pm1 = static_cast<double>(p) - 1.0;
        log_sum.add(std::log1p(-1.0 / (pm1 * pm1)));
    }
    twin_tail_ = std::exp(log_sum.value());
    const double P = static_cast<double>(truncation);
    tail_bound_ = 1.25 / (P * std::log(P));
}

double SingularContext::pair_from_primes(std::int64_t h, std::span<const std::int64_t> primes_of_h) const {
    double local = 1.0;
    if (q_.q() % 2 != 0) {
        // p = 2 away from q: the factor is 0 for odd h and 2 for even h.
        if (h % 2 != 0) return 0.0;
        local = 2.0;
    }
    double value = local * twin_tail_;
    for (const std::int64_t p : primes_of_h) {
        if (p == 2 || q_.q() % p == 0) continue;
        const double pd = static_cast<double>(p);
        // p | h turns 1 - 1/(p-1)^2 into p/(p-1); beyond the truncation only the latter is present.
        value *= p <= truncation_ ? (pd - 1.0) / (pd - 2.0) : pd / (pd - 1.0);
    }
    return value;
}

double singular_pair(const SingularContext& ctx, std::int64_t h) {
    if (h < 1) throw InvalidArgument("singular_pair: h must be >= 1");
    const auto primes = distinct_primes(h);
    return ctx.pair_from_primes(h, primes);
}

double singular_pair_0(const SingularContext& ctx, std::int64_t h) { return singular_pair(ctx, h) - 1.0; }

S0Sum s0_brute(const SingularContext& ctx, std::int64_t v, double H, int k, int threads) {
    check_s0_args(H, k);
    const Modulus& q = ctx.modulus();
    const std::int64_t qq = q.q();
    const std::int64_t h0 = q.canonical(v);
    const std::int64_t cutoff = s0_cutoff(H, k);
    const std::int64_t nchunks = (cutoff + kChunk) / kChunk;  // chunk c covers [c*kChunk, (c+1)*kChunk)

    // Odd primes up to cutoff that do not divide q; these are the only ones that move S_q.
    const auto table = prime_table(static_cast<std::uint64_t>(std::max<std::int64_t>(cutoff, 100)));
    std::vector<std::int64_t> sieve_primes;
    for (const std::uint32_t p : primes_up_to(*table, static_cast<std::uint64_t>(cutoff)))
        if (p != 2 && qq % p != 0) sieve_primes.push_back(p);

    std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::int64_t lo = c * kChunk;
        const std::int64_t hi = std::min(lo + kChunk, cutoff + 1);
        // correction[h - lo] = prod_{p | h} (p-1)/(p-2) over the sieving primes
        std::vector<double> correction(static_cast<std::size_t>(hi - lo), 1.0);
        for (const std::int64_t p : sieve_primes) {
            if (p >= hi) break;
            const double f = p <= ctx.truncation() ? (static_cast<double>(p) - 1.0) / (static_cast<double>(p) - 2.0)
                                                   : static_cast<double>(p) / (static_cast<double>(p) - 1.0);
            for (std::int64_t m = (lo + p - 1) / p * p; m < hi; m += p) correction[static_cast<std::size_t>(m - lo)] *= f;
        }
        std::int64_t first = lo + mod(h0 - lo, qq);
        if (first < 1) first += qq;
        Accumulator acc;
        const double base = (qq % 2 != 0 ? 2.0 : 1.0) * ctx.twin_tail();
        for (std::int64_t h = first; h < hi; h += qq) {
            double s = 0.0;
            if (qq % 2 == 0 || h % 2 == 0) s = base * correction[static_cast<std::size_t>(h - lo)];
            const double hd = static_cast<double>(h);
            acc.add(std::pow(hd, k) * (s - 1.0) * std::exp(-hd / H));
        }
        partial[static_cast<std::size_t>(c)] = acc.value();
    }

    Accumulator total;
    for (const double x : partial) total.add(x);
    return {qq, h0, H, k, total.value(), S0Method::brute, cutoff, s0_tail(H, k, cutoff)};
}

S0Sum s0_brute_serial(const SingularContext& ctx, std::int64_t v, double H, int k) {
    check_s0_args(H, k);
    const Modulus& q = ctx.modulus();
    const std::int64_t h0 = q.canonical(v);
    const std::int64_t cutoff = s0_cutoff(H, k);
    Accumulator acc;
    for (std::int64_t h = h0; h <= cutoff; h += q.q()) {
        const double hd = static_cast<double>(h);
        acc.add(std::pow(hd, k) * singular_pair_0(ctx, h) * std::exp(-hd / H));
    }
    return {q.q(), h0, H, k, acc.value(), S0Method::brute, cutoff, s0_tail(H, k, cutoff)};
}

}  // namespace primerace
