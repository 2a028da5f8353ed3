#include "sievedyn/progressions.hpp"

#include <algorithm>

#include "sievedyn/errors.hpp"
#include "sievedyn/primes.hpp"

namespace sievedyn {

Constellation repetition(std::size_t J, std::uint64_t g) {
  if (J == 0) throw ValidationError("repetition length must be >= 1");
  return Constellation(std::vector<std::uint64_t>(J, g));
}

bool cpap_divisibility_check(std::size_t J, std::uint64_t g) {
  const BigInt modulus = primorial(prime_at_most(J + 1));
  return BigInt(g) % modulus == 0;
}

Rational repetition_w_infinity(std::size_t J, std::uint64_t g) {
  const Constellation s = repetition(J, g);
  if (!cpap_divisibility_check(J, g) || !is_admissible(s)) {
    throw ValidationError("repetition of " + std::to_string(g) + " with length " +
                          std::to_string(J) + " is not admissible");
  }
  Rational w = 1;
  for (std::uint64_t q : distinct_prime_factors(g)) {
    if (q == 2) continue;
    w *= (q - 1);
    if (q > J + 1) w /= (q - J - 1);
  }
  return w;
}

std::vector<ApStart> ap_scan(std::size_t J, std::uint64_t g, std::uint64_t lo, std::uint64_t hi,
                             const SieveOptions& options) {
  if (g == 0 || J == 0) throw ValidationError("progression needs J >= 1 and g >= 1");
  if (lo > hi) return {};
  const std::uint64_t reach = static_cast<std::uint64_t>(J) * g;
  if (hi > options.bound || reach > options.bound - hi) {
    throw BoundError("progression search up to " + std::to_string(hi) + " + " +
                     std::to_string(J) + "*" + std::to_string(g) + " passes the sieve bound " +
                     std::to_string(options.bound));
  }
  const SegmentedSieve sieve(options);
  const auto primes = sieve.primes(std::max<std::uint64_t>(lo, 2), hi + reach);
  std::vector<ApStart> out;
  for (std::size_t i = 0; i < primes.size() && primes[i] <= hi; ++i) {
    bool all_prime = true;
    bool consecutive = true;
    std::size_t at = i;
    for (std::size_t k = 1; k <= J && all_prime; ++k) {
      const std::uint64_t want = primes[i] + k * g;
      const auto it = std::lower_bound(primes.begin() + static_cast<std::ptrdiff_t>(at),
                                       primes.end(), want);
      all_prime = it != primes.end() && *it == want;
      const auto idx = static_cast<std::size_t>(it - primes.begin());
      consecutive = consecutive && idx == at + 1;
      at = idx;
    }
    if (all_prime) out.push_back({primes[i], consecutive});
  }
  return out;
}

}  // namespace sievedyn
