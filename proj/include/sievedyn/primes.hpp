#pragma once

#include <cstdint>
#include <vector>

#include "sievedyn/arith.hpp"

namespace sievedyn {

/// All primes <= limit by a plain sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Deterministic trial division; intended for the small values used as
/// stage primes and gap factors (up to ~1e13).
bool is_prime(std::uint64_t n);

std::uint64_t next_prime_after(std::uint64_t n);

/// Largest prime <= n, or 0 when n < 2.
std::uint64_t prime_at_most(std::uint64_t n);

/// Primes q with lo <= q <= hi.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// p# = product of the primes <= p.
BigInt primorial(std::uint64_t p);

/// phi(p#) = product of (q - 1) over primes q <= p.
BigInt primorial_totient(std::uint64_t p);

/// Distinct prime factors in increasing order (trial division).
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

}  // namespace sievedyn
