#pragma once

#include <cstdint>
#include <vector>

namespace cenormal::primes {

/// Deterministic Miller-Rabin over the full 64-bit range (first twelve prime witnesses).
bool is_prime(std::uint64_t n);

/// Primes <= limit by a plain sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Primality flags for [lo, hi): flags[i] != 0 iff lo + i is prime.
std::vector<std::uint8_t> sieve_segment(std::uint64_t lo, std::uint64_t hi);

/// pi(x) by a segmented sieve. Results come from a process-wide table that is
/// grown on demand and shared between threads.
std::uint64_t prime_pi(std::uint64_t x);

/// Ascending enumeration of primes strictly greater than a starting point,
/// one sieve window at a time.
class PrimeWalker {
public:
    explicit PrimeWalker(std::uint64_t after = 0);

    std::uint64_t next();

private:
    void refill();

    std::uint64_t window_lo_;
    std::vector<std::uint8_t> window_;
    std::size_t index_ = 0;
};

}  // namespace cenormal::primes
