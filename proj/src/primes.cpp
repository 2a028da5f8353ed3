#include "sievedyn/primes.hpp"

#include <cmath>

#include "sievedyn/errors.hpp"

namespace sievedyn {

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t m = i * i; m <= limit; m += i) composite[m] = true;
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::uint64_t next_prime_after(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::uint64_t prime_at_most(std::uint64_t n) {
  while (n >= 2) {
    if (is_prime(n)) return n;
    --n;
  }
  return 0;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = lo < 2 ? 2 : lo; q <= hi; ++q) {
    if (is_prime(q)) out.push_back(q);
  }
  return out;
}

BigInt primorial(std::uint64_t p) {
  BigInt out = 1;
  for (std::uint64_t q = 2; q <= p; ++q) {
    if (is_prime(q)) out *= q;
  }
  return out;
}

BigInt primorial_totient(std::uint64_t p) {
  BigInt out = 1;
  for (std::uint64_t q = 2; q <= p; ++q) {
    if (is_prime(q)) out *= (q - 1);
  }
  return out;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace sievedyn
