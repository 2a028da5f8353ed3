#pragma once

// Repetition constellations (g, g, ..., g) and arithmetic progressions of
// primes.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sievedyn/arith.hpp"
#include "sievedyn/constellation.hpp"
#include "sievedyn/sieve.hpp"

namespace sievedyn {

/// (g, ..., g) with J gaps.
Constellation repetition(std::size_t J, std::uint64_t g);

/// p# | g for p the largest prime <= J+1. Necessary for an admissible
/// repetition of length J.
bool cpap_divisibility_check(std::size_t J, std::uint64_t g);

/// phi(Q) / prod_{q | Q, q > J+1} (q - J - 1), Q the product of the odd
/// primes dividing g. Throws ValidationError if the repetition is not
/// admissible.
Rational repetition_w_infinity(std::size_t J, std::uint64_t g);

struct ApStart {
  std::uint64_t start = 0;
  bool consecutive = false;  // no other primes between the terms
  auto operator<=>(const ApStart&) const = default;
};

/// Every start in [lo, hi] of a (J+1)-term progression of primes with
/// difference g. Throws BoundError when hi + J*g passes the sieve bound.
std::vector<ApStart> ap_scan(std::size_t J, std::uint64_t g, std::uint64_t lo, std::uint64_t hi,
                             const SieveOptions& options = {});

}  // namespace sievedyn
