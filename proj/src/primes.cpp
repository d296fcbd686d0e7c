#include "primerace/primes.hpp"

#include <algorithm>
#include <mutex>

#include "primerace/error.hpp"

namespace primerace {

namespace {

std::vector<std::uint32_t> byte_sieve(std::uint64_t limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (composite[n]) continue;
        primes.push_back(static_cast<std::uint32_t>(n));
        for (std::uint64_t m = n * n; m <= limit; m += n) composite[m] = 1;
    }
    return primes;
}

}  // namespace

std::shared_ptr<const std::vector<std::uint32_t>> prime_table(std::uint64_t limit) {
    if (limit > 4'000'000'000ULL) throw ResourceLimit("prime table limit above 4e9 is not supported");
    static std::mutex lock;
    static std::shared_ptr<const std::vector<std::uint32_t>> cached;
    static std::uint64_t cached_limit = 0;
    std::scoped_lock guard(lock);
    if (!cached || cached_limit < limit) {
        cached = std::make_shared<const std::vector<std::uint32_t>>(byte_sieve(limit));
        cached_limit = limit;
    }
    return cached;
}

std::span<const std::uint32_t> primes_up_to(const std::vector<std::uint32_t>& table, std::uint64_t limit) {
    const auto end = std::upper_bound(table.begin(), table.end(), limit,
                                      [](std::uint64_t v, std::uint32_t p) { return v < p; });
    return {table.data(), static_cast<std::size_t>(end - table.begin())};
}

}  // namespace primerace
