#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace primerace {

// Primes below a truncation bound, sieved once (byte sieve) and shared read-only.
// The returned table holds every prime <= limit and possibly more.
std::shared_ptr<const std::vector<std::uint32_t>> prime_table(std::uint64_t limit);

// The primes <= limit from a shared table.
std::span<const std::uint32_t> primes_up_to(const std::vector<std::uint32_t>& table, std::uint64_t limit);

}  // namespace primerace
