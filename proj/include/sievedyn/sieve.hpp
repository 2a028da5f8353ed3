#pragma once

// Segmented sieve of Eratosthenes over odd numbers, one bit per odd value.

#include <cstdint>
#include <functional>
#include <vector>

namespace sievedyn {

struct SieveOptions {
  std::uint64_t bound = 2'000'000'000;
  std::uint64_t segment_bits = std::uint64_t{1} << 20;
  unsigned jobs = 1;
};

class SegmentedSieve {
 public:
  explicit SegmentedSieve(SieveOptions options = {});

  const SieveOptions& options() const { return options_; }

  /// Primes in [lo, hi] in increasing order. Throws BoundError if hi exceeds
  /// the configured bound, ValidationError if lo > hi.
  std::vector<std::uint64_t> primes(std::uint64_t lo, std::uint64_t hi) const;

  /// Calls f for each prime in [lo, hi], in order. Segments are sieved `jobs`
  /// at a time; the callback always runs on the calling thread.
  void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                      const std::function<void(std::uint64_t)>& f) const;

  std::uint64_t count(std::uint64_t lo, std::uint64_t hi) const;

 private:
  void check_range(std::uint64_t lo, std::uint64_t hi) const;
  /// Primes of one segment [lo, hi] (odd-only, plus 2 when in range).
  void sieve_segment(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) const;

  SieveOptions options_;
  std::vector<std::uint32_t> base_primes_;  // odd primes <= sqrt(bound)
};

}  // namespace sievedyn
