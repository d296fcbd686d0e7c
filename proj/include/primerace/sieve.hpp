#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "primerace/arith.hpp"

namespace primerace {

// Refuse to sieve past this bound: the bit array alone would pass any desk budget in time.
inline constexpr std::uint64_t kMaxSieveLimit = 10'000'000'000'000ULL;
// Largest number of distinct patterns (phi(q)^r) a count table may hold.
inline constexpr std::uint64_t kMaxPatternTable = 1ULL << 24;

struct SieveOptions {
    std::uint64_t segment_bits = 1ULL << 22;  // odd numbers per segment; multiple of 64
    int threads = 0;                          // <= 0: OpenMP default
};

// Plain byte sieve of Eratosthenes, single-threaded. Used as the reference.
std::vector<std::uint64_t> reference_primes(std::uint64_t limit);

// Receives consecutive, increasing batches of primes; return false to stop.
using PrimeSink = std::function<bool(std::span<const std::uint64_t>)>;

// Every prime <= limit, in order, through a bit-packed odd-only segmented sieve. Segments
// are sieved concurrently and handed to the sink strictly in order.
void stream_primes(std::uint64_t limit, const PrimeSink& sink, const SieveOptions& opts = {});

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, const SieveOptions& opts = {});
std::uint64_t prime_count(std::uint64_t x, const SieveOptions& opts = {});
// The n-th prime, p_1 = 2.
std::uint64_t nth_prime(std::uint64_t n, const SieveOptions& opts = {});

enum class LimitMode { by_x, by_count };

// Which primes may open or join a window.
enum class StartRule {
    after_q,  // only primes > q (the published tables use this)
    coprime,  // every prime not dividing q
};

struct SieveConfig {
    LimitMode mode = LimitMode::by_x;
    // by_x: windows whose least prime is <= limit.
    // by_count: windows starting at the first `limit` primes coprime to q.
    std::uint64_t limit = 0;
    std::int64_t q = 3;
    int r = 2;
    int skip = 1;
    StartRule start = StartRule::after_q;
    int threads = 0;
    std::uint64_t segment_bits = 1ULL << 22;
};

// Pattern counts indexed by code = sum_i idx(a_i) phi^(r-1-i), where idx is the position of
// the class in Modulus::reduced_classes(); all_patterns(q, r) lists patterns in code order.
struct CountTable {
    SieveConfig config;
    Modulus modulus;
    std::vector<std::uint64_t> counts;
    std::uint64_t primes_seen = 0;    // primes admitted by the start rule
    std::uint64_t largest_prime = 0;  // last prime read from the stream
    std::uint64_t windows = 0;        // sum of counts
    std::uint64_t last_start = 0;     // least prime of the last counted window

    std::uint64_t count(const ResiduePattern& pattern) const;
    std::size_t code(const ResiduePattern& pattern) const;
};

void validate(const SieveConfig& config);

// A window (p_n, p_{n+k}, ..., p_{n+(r-1)k}) of admitted primes is counted when its least
// member satisfies the limit rule. Primes rejected by the start rule are dropped from the stream.
CountTable count_patterns(const SieveConfig& config);

// Same counts by trial division over consecutive integers; for small limits only.
CountTable count_patterns_naive(const SieveConfig& config);

int legendre(std::int64_t a, std::int64_t p);

// sum over consecutive pairs with p_n <= x of (p_n/q)(p_{n+1}/q), q an odd prime.
std::int64_t character_sum(std::int64_t q, std::uint64_t x, int threads = 0);
std::int64_t character_sum_from_counts(const CountTable& table);

}  // namespace primerace
