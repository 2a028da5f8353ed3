#include "sievedyn/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "sievedyn/errors.hpp"
#include "sievedyn/primes.hpp"

namespace sievedyn {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

SegmentedSieve::SegmentedSieve(SieveOptions options) : options_(options) {
  if (options_.segment_bits < 64) options_.segment_bits = 64;
  options_.segment_bits &= ~std::uint64_t{63};
  if (options_.jobs == 0) options_.jobs = 1;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(isqrt(options_.bound)))) {
    if (p != 2) base_primes_.push_back(p);
  }
}

void SegmentedSieve::check_range(std::uint64_t lo, std::uint64_t hi) const {
  if (lo > hi) throw ValidationError("sieve range is empty (lo > hi)");
  if (hi > options_.bound) {
    throw BoundError("sieve range end " + std::to_string(hi) + " exceeds the bound " +
                     std::to_string(options_.bound));
  }
}

void SegmentedSieve::sieve_segment(std::uint64_t lo, std::uint64_t hi,
                                   std::vector<std::uint64_t>& out) const {
  if (lo <= 2 && hi >= 2) out.push_back(2);
  std::uint64_t first = std::max<std::uint64_t>(lo, 3) | 1;  // first odd >= max(lo,3)
  if (first > hi) return;
  const std::uint64_t last = (hi % 2 == 0) ? hi - 1 : hi;
  const std::uint64_t n = (last - first) / 2 + 1;  // odd values first, first+2, ..., last
  std::vector<std::uint64_t> bits((n + 63) / 64, ~std::uint64_t{0});
  if (n % 64) bits.back() = (std::uint64_t{1} << (n % 64)) - 1;

  for (std::uint32_t p : base_primes_) {
    const std::uint64_t pp = std::uint64_t{p} * p;
    if (pp > last) break;
    std::uint64_t start = std::max(pp, (first + p - 1) / p * p);
    if (start % 2 == 0) start += p;
    for (std::uint64_t m = start; m <= last; m += 2 * std::uint64_t{p}) {
      const std::uint64_t idx = (m - first) / 2;
      bits[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
    }
  }
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    while (word) {
      const int b = std::countr_zero(word);
      out.push_back(first + 2 * (w * 64 + static_cast<std::uint64_t>(b)));
      word &= word - 1;
    }
  }
}

void SegmentedSieve::for_each_prime(std::uint64_t lo, std::uint64_t hi,
                                    const std::function<void(std::uint64_t)>& f) const {
  check_range(lo, hi);
  const std::uint64_t span = options_.segment_bits * 2;  // odd-only: two values per bit
  const unsigned jobs = options_.jobs;
  std::vector<std::vector<std::uint64_t>> batch(jobs);
  std::uint64_t next = lo;
  bool finished = false;
  while (!finished) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    for (unsigned j = 0; j < jobs && !finished; ++j) {
      const std::uint64_t seg_hi = (hi - next < span) ? hi : next + span - 1;
      ranges.emplace_back(next, seg_hi);
      if (seg_hi == hi) {
        finished = true;
      } else {
        next = seg_hi + 1;
      }
    }
    for (auto& b : batch) b.clear();
    if (ranges.size() == 1) {
      sieve_segment(ranges[0].first, ranges[0].second, batch[0]);
    } else {
      std::vector<std::thread> workers;
      for (std::size_t j = 0; j < ranges.size(); ++j) {
        workers.emplace_back([&, j] { sieve_segment(ranges[j].first, ranges[j].second, batch[j]); });
      }
      for (auto& t : workers) t.join();
    }
    for (std::size_t j = 0; j < ranges.size(); ++j) {
      for (std::uint64_t p : batch[j]) f(p);
    }
  }
}

std::vector<std::uint64_t> SegmentedSieve::primes(std::uint64_t lo, std::uint64_t hi) const {
  std::vector<std::uint64_t> out;
  for_each_prime(lo, hi, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

std::uint64_t SegmentedSieve::count(std::uint64_t lo, std::uint64_t hi) const {
  std::uint64_t n = 0;
  for_each_prime(lo, hi, [&](std::uint64_t) { ++n; });
  return n;
}

}  // namespace sievedyn
