#pragma once

#include <cstdint>
#include <span>

#include "primerace/arith.hpp"
#include "primerace/lfun.hpp"

namespace primerace {

// Holds prod_{2 < p <= P, p !| q} (1 - 1/(p-1)^2) so that each S_q({0,h}) costs only a
// factorization of h. Immutable after construction.
class SingularContext {
public:
    explicit SingularContext(const Modulus& q, std::int64_t truncation = kDefaultTruncation);

    const Modulus& modulus() const { return q_; }
    double twin_tail() const { return twin_tail_; }
    std::int64_t truncation() const { return truncation_; }
    double tail_bound() const { return tail_bound_; }

    // S_q({0,h}) given the distinct prime factors of h.
    double pair_from_primes(std::int64_t h, std::span<const std::int64_t> primes_of_h) const;

private:
    Modulus q_;
    double twin_tail_;
    std::int64_t truncation_;
    double tail_bound_;
};

// S_q({0,h}), h >= 1.
double singular_pair(const SingularContext& ctx, std::int64_t h);
// S_{q,0}({0,h}) = S_q({0,h}) - 1.
double singular_pair_0(const SingularContext& ctx, std::int64_t h);

enum class S0Method { brute, analytic };

struct S0Sum {
    std::int64_t q = 0;
    std::int64_t v = 0;  // canonical in [1, q]
    double H = 0.0;
    int k = 0;
    double value = 0.0;
    S0Method method = S0Method::brute;
    std::int64_t cutoff = 0;       // brute only
    double tail_estimate = 0.0;    // brute only: bound on the dropped h > cutoff
};

// Cutoff multiplier: terms up to h = ceil(kS0CutoffFactor * H * (k + 1)).
inline constexpr double kS0CutoffFactor = 50.0;

// sum_{h = v (mod q), 1 <= h <= cutoff} h^k S_{q,0}({0,h}) e^{-h/H}.
// Parallel over fixed-size h-chunks reduced in index order, so the result does not depend
// on the thread count. threads <= 0 uses the OpenMP default.
S0Sum s0_brute(const SingularContext& ctx, std::int64_t v, double H, int k = 0, int threads = 0);

// Single-threaded reference: per-h trial division and one running sum.
S0Sum s0_brute_serial(const SingularContext& ctx, std::int64_t v, double H, int k = 0);

}  // namespace primerace
