#include "primerace/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <omp.h>

#include "primerace/error.hpp"

namespace primerace {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void check_limit(std::uint64_t limit) {
    if (limit <= kMaxSieveLimit) return;
    std::ostringstream os;
    os << "sieving to " << limit << " is refused: the limit is " << kMaxSieveLimit << "; it would read about "
       << limit / 16 / (1ULL << 20) << " MiB of bit segments and take hours";
    throw ResourceLimit(os.str());
}

// Odd numbers lo, lo+2, ..., lo+2(bits-1); primes <= limit are appended to out.
void sieve_segment(std::uint64_t lo, std::uint64_t bits, std::uint64_t limit, const std::vector<std::uint64_t>& base,
                   std::vector<std::uint64_t>& out) {
    std::vector<std::uint64_t> words(bits / 64, ~0ULL);
    const std::uint64_t hi = lo + 2 * bits;
    for (const std::uint64_t p : base) {
        if (p * p >= hi) break;
        std::uint64_t start = p * p;
        if (start < lo) {
            start = (lo + p - 1) / p * p;
            if (start % 2 == 0) start += p;
        }
        for (std::uint64_t i = (start - lo) / 2; i < bits; i += p) words[i >> 6] &= ~(1ULL << (i & 63));
    }
    if (lo == 1) words[0] &= ~1ULL;
    out.clear();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t x = words[w];
        while (x) {
            const std::uint64_t n = lo + 2 * (64 * w + static_cast<std::uint64_t>(std::countr_zero(x)));
            if (n > limit) return;
            out.push_back(n);
            x &= x - 1;
        }
    }
}

// Primes in [from, limit]; returns false if the sink asked to stop.
bool stream_range(std::uint64_t from, std::uint64_t limit, const PrimeSink& sink, const SieveOptions& opts) {
    check_limit(limit);
    if (opts.segment_bits < 1024 || opts.segment_bits % 64 != 0)
        throw InvalidArgument("segment size must be a multiple of 64 and at least 1024");
    if (limit < 2 || from > limit) return true;
    if (from <= 2) {
        const std::uint64_t two = 2;
        if (!sink(std::span<const std::uint64_t>(&two, 1))) return false;
    }
    if (limit < 3) return true;

    std::vector<std::uint64_t> base = reference_primes(isqrt(limit) + 1);
    if (!base.empty() && base.front() == 2) base.erase(base.begin());

    const std::uint64_t bits = opts.segment_bits;
    const std::uint64_t span = 2 * bits;
    const std::uint64_t first_seg = from <= 1 ? 0 : (from - 1) / span;
    const std::uint64_t last_seg = (limit - 1) / span;
    const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
    const std::uint64_t batch = static_cast<std::uint64_t>(std::max(1, 2 * threads));
    std::vector<std::vector<std::uint64_t>> out(batch);

    for (std::uint64_t seg = first_seg; seg <= last_seg; seg += batch) {
        const auto n = static_cast<std::int64_t>(std::min(batch, last_seg - seg + 1));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::int64_t i = 0; i < n; ++i)
            sieve_segment(1 + (seg + static_cast<std::uint64_t>(i)) * span, bits, limit, base,
                          out[static_cast<std::size_t>(i)]);
        for (std::int64_t i = 0; i < n; ++i) {
            auto& v = out[static_cast<std::size_t>(i)];
            auto it = std::lower_bound(v.begin(), v.end(), std::max<std::uint64_t>(from, 3));
            if (it == v.end()) continue;
            if (!sink(std::span<const std::uint64_t>(&*it, static_cast<std::size_t>(v.end() - it)))) return false;
        }
    }
    return true;
}

// Upper bound for p_n (Rosser: n (log n + log log n) for n >= 6).
std::uint64_t nth_prime_bound(std::uint64_t n) {
    if (n < 6) return 13;
    const double x = static_cast<double>(n);
    return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 10;
}

// Windows of class indices over the stream of primes coprime to q.
class WindowCounter {
public:
    explicit WindowCounter(CountTable& t)
        : t_(t), q_(static_cast<std::uint64_t>(t.modulus.q())), phi_(static_cast<std::uint64_t>(t.modulus.phi())),
          r_(static_cast<std::size_t>(t.config.r)), k_(static_cast<std::size_t>(t.config.skip)),
          width_((r_ - 1) * k_ + 1), after_q_(t.config.start == StartRule::after_q), idx_(width_), primes_(width_) {
        for (std::uint64_t d = 0; d < kDeltaTable; ++d) delta_mod_[d] = d % q_;
        for (std::uint64_t v = 0; v < q_; ++v) class_of_[v] = t.modulus.class_index(static_cast<std::int64_t>(v));
    }

    // false once the limit rule is exhausted
    bool push(std::uint64_t p) {
        t_.largest_prime = p;
        if (p <= q_ && (after_q_ || q_ % p == 0)) return true;
        if (have_prev_) {
            const std::uint64_t d = p - prev_;
            res_ += d < kDeltaTable ? delta_mod_[d] : d % q_;
            if (res_ >= q_) res_ -= q_;
        } else {
            res_ = p % q_;
            have_prev_ = true;
        }
        prev_ = p;
        const std::size_t slot = static_cast<std::size_t>(t_.primes_seen % width_);
        idx_[slot] = class_of_[res_];
        primes_[slot] = p;
        ++t_.primes_seen;
        if (t_.primes_seen < width_) return true;

        const std::size_t first = static_cast<std::size_t>((t_.primes_seen - width_) % width_);
        const std::uint64_t start = primes_[first];
        if (t_.config.mode == LimitMode::by_x ? start > t_.config.limit : t_.windows >= t_.config.limit) return false;
        std::size_t code = 0;
        for (std::size_t i = 0; i < r_; ++i) code = code * phi_ + static_cast<std::size_t>(idx_[(first + i * k_) % width_]);
        ++t_.counts[code];
        ++t_.windows;
        t_.last_start = start;
        return true;
    }

    bool done() const {
        return t_.config.mode == LimitMode::by_count && t_.windows >= t_.config.limit;
    }

private:
    static constexpr std::uint64_t kDeltaTable = 4096;
    CountTable& t_;
    std::uint64_t q_, phi_;
    std::size_t r_, k_, width_;
    bool after_q_;
    std::vector<int> idx_;
    std::vector<std::uint64_t> primes_;
    std::uint64_t delta_mod_[kDeltaTable];
    std::vector<int> class_of_ = std::vector<int>(q_);
    std::uint64_t res_ = 0, prev_ = 0;
    bool have_prev_ = false;
};

CountTable empty_table(const SieveConfig& config) {
    validate(config);
    Modulus m(config.q);
    std::uint64_t size = 1;
    for (int i = 0; i < config.r; ++i) size *= static_cast<std::uint64_t>(m.phi());
    return CountTable{config, m, std::vector<std::uint64_t>(size, 0)};
}

bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

std::vector<std::uint64_t> reference_primes(std::uint64_t limit) {
    check_limit(limit);
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<std::uint8_t> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
}

void stream_primes(std::uint64_t limit, const PrimeSink& sink, const SieveOptions& opts) {
    stream_range(0, limit, sink, opts);
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, const SieveOptions& opts) {
    std::vector<std::uint64_t> out;
    stream_primes(limit, [&](std::span<const std::uint64_t> b) {
        out.insert(out.end(), b.begin(), b.end());
        return true;
    }, opts);
    return out;
}

std::uint64_t prime_count(std::uint64_t x, const SieveOptions& opts) {
    std::uint64_t n = 0;
    stream_primes(x, [&](std::span<const std::uint64_t> b) {
        n += b.size();
        return true;
    }, opts);
    return n;
}

std::uint64_t nth_prime(std::uint64_t n, const SieveOptions& opts) {
    if (n < 1) throw InvalidArgument("nth_prime: n must be >= 1");
    std::uint64_t seen = 0, found = 0;
    stream_primes(nth_prime_bound(n), [&](std::span<const std::uint64_t> b) {
        if (seen + b.size() >= n) {
            found = b[n - seen - 1];
            return false;
        }
        seen += b.size();
        return true;
    }, opts);
    return found;
}

void validate(const SieveConfig& c) {
    if (c.r < 1) throw InvalidArgument("r must be >= 1");
    if (c.skip < 1) throw InvalidArgument("skip must be >= 1");
    if (c.segment_bits < 1024 || c.segment_bits % 64 != 0)
        throw InvalidArgument("segment size must be a multiple of 64 and at least 1024");
    if (c.q < 3) throw InvalidArgument("q must be >= 3");
    if (c.mode == LimitMode::by_x && c.limit < 2) throw InvalidArgument("x must be >= 2");
    if (c.mode == LimitMode::by_count && c.limit < 1) throw InvalidArgument("prime count must be >= 1");
    const auto phi = static_cast<double>(totient(c.q));
    if (std::pow(phi, c.r) > static_cast<double>(kMaxPatternTable))
        throw ResourceLimit("pattern table phi(q)^r exceeds 2^24 entries");
}

std::size_t CountTable::code(const ResiduePattern& pattern) const {
    if (!(pattern.modulus() == modulus) || pattern.r() != static_cast<std::size_t>(config.r))
        throw InvalidArgument("pattern length or modulus does not match the count table");
    std::size_t c = 0;
    for (std::size_t i = 0; i < pattern.r(); ++i)
        c = c * static_cast<std::size_t>(modulus.phi()) + static_cast<std::size_t>(modulus.class_index(pattern[i]));
    return c;
}

std::uint64_t CountTable::count(const ResiduePattern& pattern) const { return counts[code(pattern)]; }

CountTable count_patterns(const SieveConfig& config) {
    CountTable table = empty_table(config);
    WindowCounter counter(table);
    const SieveOptions opts{config.segment_bits, config.threads};
    const std::uint64_t extra = static_cast<std::uint64_t>((config.r - 1) * config.skip) + 16;

    // by_x needs the stream to run past x until the last window closes; the slack doubles on demand.
    const std::uint64_t base = config.mode == LimitMode::by_x ? config.limit : nth_prime_bound(config.limit + extra);
    std::uint64_t slack = config.mode == LimitMode::by_x ? std::max<std::uint64_t>(100'000, config.limit / 1000) : 1000;
    std::uint64_t from = 0;
    for (;;) {
        const std::uint64_t to = base + slack;
        check_limit(to);
        const bool open = stream_range(from, to, [&](std::span<const std::uint64_t> batch) {
            for (const std::uint64_t p : batch)
                if (!counter.push(p)) return false;
            return true;
        }, opts);
        if (!open || counter.done()) break;
        from = to + 1;
        slack *= 2;
    }
    return table;
}

CountTable count_patterns_naive(const SieveConfig& config) {
    CountTable table = empty_table(config);
    const std::uint64_t limit_cap = 100'000'000;
    WindowCounter counter(table);
    for (std::uint64_t n = 2;; ++n) {
        if (n > limit_cap) throw ResourceLimit("naive counter is limited to numbers below 1e8");
        if (!is_prime_trial(n)) continue;
        if (!counter.push(n) || counter.done()) break;
    }
    return table;
}

int legendre(std::int64_t a, std::int64_t p) {
    const std::int64_t r = mod(a, p);
    if (r == 0) return 0;
    unsigned __int128 acc = 1, base = static_cast<unsigned __int128>(r);
    for (std::int64_t e = (p - 1) / 2; e > 0; e >>= 1) {
        if (e & 1) acc = acc * base % static_cast<unsigned __int128>(p);
        base = base * base % static_cast<unsigned __int128>(p);
    }
    return acc == 1 ? 1 : -1;
}

std::int64_t character_sum_from_counts(const CountTable& table) {
    const std::int64_t q = table.modulus.q();
    if (q < 3 || !is_prime(q)) throw InvalidArgument("character_sum: q must be an odd prime");
    if (table.config.r != 2 || table.config.skip != 1) throw InvalidArgument("character_sum needs r = 2, skip = 1");
    const auto& cls = table.modulus.reduced_classes();
    const std::size_t phi = cls.size();
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < phi; ++i)
        for (std::size_t j = 0; j < phi; ++j)
            sum += legendre(cls[i], q) * legendre(cls[j], q) * static_cast<std::int64_t>(table.counts[i * phi + j]);
    return sum;
}

std::int64_t character_sum(std::int64_t q, std::uint64_t x, int threads) {
    if (q < 3 || !is_prime(q)) throw InvalidArgument("character_sum: q must be an odd prime");
    SieveConfig c;
    c.mode = LimitMode::by_x;
    c.limit = x;
    c.q = q;
    c.r = 2;
    c.threads = threads;
    return character_sum_from_counts(count_patterns(c));
}

}  // namespace primerace
