#include "sievedyn/crt.hpp"

#include <algorithm>

#include "sievedyn/errors.hpp"
#include "sievedyn/primes.hpp"

namespace sievedyn {

namespace {

std::uint64_t mod_small(const BigInt& v, std::uint64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  // p is prime and a != 0 mod p: a^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (std::uint64_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = static_cast<std::uint64_t>((unsigned __int128)result * base % p);
    base = static_cast<std::uint64_t>((unsigned __int128)base * base % p);
  }
  return result;
}

bool in_upsilon(const Constellation& s, std::uint64_t p, std::uint64_t r) {
  for (std::uint64_t off : s.offsets()) {
    if ((r + off) % p == 0) return false;
  }
  return true;
}

}  // namespace

BigInt PrimorialCoordinates::value() const {
  BigInt v = base;
  BigInt scale = primorial(ladder.front());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    v += scale * digits[i];
    scale *= ladder[i + 1];
  }
  return v;
}

std::string PrimorialCoordinates::to_string() const {
  std::string out = base.str();
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == 0) continue;
    out += " + " + std::to_string(digits[i]) + "*" + std::to_string(ladder[i]) + "#";
  }
  return out;
}

std::vector<std::uint64_t> prime_ladder(std::uint64_t p0, std::uint64_t pk) {
  if (!is_prime(p0) || !is_prime(pk) || p0 > pk) {
    throw ValidationError("prime ladder needs primes p0 <= pk (got " + std::to_string(p0) + ".." +
                          std::to_string(pk) + ")");
  }
  return primes_in_range(p0, pk);
}

PrimorialCoordinates to_primorial_coordinates(const BigInt& gamma, std::uint64_t p0,
                                              std::uint64_t pk) {
  PrimorialCoordinates c{0, prime_ladder(p0, pk), {}};
  const BigInt top = primorial(pk);
  if (gamma < 0 || gamma >= top) {
    throw ValidationError(gamma.str() + " is outside [0, " + std::to_string(pk) + "#) = [0, " +
                          top.str() + ")");
  }
  std::vector<BigInt> scales{primorial(p0)};
  for (std::size_t i = 1; i + 1 < c.ladder.size(); ++i) scales.push_back(scales.back() * c.ladder[i]);
  c.digits.assign(c.ladder.size() - 1, 0);
  BigInt rest = gamma;
  for (std::size_t i = c.digits.size(); i-- > 0;) {
    c.digits[i] = BigInt(rest / scales[i]).convert_to<std::uint64_t>();
    rest -= scales[i] * c.digits[i];
  }
  c.base = rest;
  return c;
}

bool verify_instance(const Constellation& s, const BigInt& gamma, std::uint64_t p) {
  for (std::uint64_t q : primes_in_range(2, p)) {
    const std::uint64_t g = mod_small(gamma, q);
    if (!in_upsilon(s, q, g)) return false;
  }
  return true;
}

BigInt instance_from_residues(const Constellation& s, const BigInt& seed, std::uint64_t p0,
                              const std::vector<ResidueChoice>& choices) {
  const BigInt p0_primorial = primorial(p0);
  if (seed < 0 || seed >= p0_primorial) {
    throw ValidationError("seed must lie in [0, " + std::to_string(p0) + "#)");
  }
  if (!verify_instance(s, seed, p0)) {
    throw ValidationError("seed " + seed.str() + " is not an instance of " + s.to_string() +
                          " in G(" + std::to_string(p0) + "#)");
  }
  BigInt gamma = seed;
  BigInt scale = p0_primorial;
  std::uint64_t expected = next_prime_after(p0);
  for (const ResidueChoice& ch : choices) {
    if (ch.prime != expected) {
      throw ValidationError("residue choices must follow consecutive primes after p0; expected " +
                            std::to_string(expected) + ", got " + std::to_string(ch.prime));
    }
    const std::uint64_t p = ch.prime;
    const std::uint64_t r = ch.residue % p;
    if (!in_upsilon(s, p, r)) {
      throw ValidationError("residue " + std::to_string(ch.residue) + " mod " + std::to_string(p) +
                            " is not admissible for " + s.to_string() + " at prime " +
                            std::to_string(p));
    }
    const std::uint64_t current = mod_small(gamma, p);
    const std::uint64_t diff = (r + p - current) % p;
    const std::uint64_t m = static_cast<std::uint64_t>(
        (unsigned __int128)diff * inverse_mod(mod_small(scale, p), p) % p);
    gamma += scale * m;
    scale *= p;
    expected = next_prime_after(p);
  }
  return gamma;
}

std::vector<ReplicationImage> images_under_replication(const Constellation& s,
                                                       const BigInt& gamma, std::uint64_t pk,
                                                       std::uint64_t p_next) {
  const BigInt scale = primorial(pk);
  std::vector<ReplicationImage> out;
  out.reserve(p_next);
  for (std::uint64_t m = 0; m < p_next; ++m) {
    ReplicationImage img{m, gamma + scale * m, 0, false};
    img.residue = mod_small(img.gamma, p_next);
    img.survives = in_upsilon(s, p_next, img.residue);
    out.push_back(std::move(img));
  }
  return out;
}

// -- enumeration -------------------------------------------------------------

InstanceEnumerator::InstanceEnumerator(const Constellation& s, std::uint64_t p0, std::uint64_t pk)
    : s_(s), ladder_(prime_ladder(p0, pk)) {
  const std::uint64_t period = to_u64(primorial(p0), "seed period");
  if (period > (std::uint64_t{1} << 32)) {
    throw BoundError("seed scan over [0, " + std::to_string(p0) + "#) is too large");
  }
  for (std::uint64_t g = 0; g < period; ++g) {
    if (verify_instance(s_, BigInt(g), p0)) seeds_.push_back(g);
  }
  BigInt scale = primorial(p0);
  for (std::size_t i = 1; i < ladder_.size(); ++i) {
    choices_.push_back(upsilon(s_, ladder_[i]));
    moduli_.push_back(scale);
    scale *= ladder_[i];
  }
  cursor_.assign(ladder_.size(), 0);
  done_ = seeds_.empty() ||
          std::any_of(choices_.begin(), choices_.end(), [](const auto& c) { return c.empty(); });
}

BigInt InstanceEnumerator::count() const {
  BigInt n = seeds_.size();
  for (const auto& c : choices_) n *= c.size();
  return n;
}

std::optional<BigInt> InstanceEnumerator::next() {
  if (done_) return std::nullopt;
  BigInt gamma = seeds_[cursor_[0]];
  for (std::size_t i = 0; i < choices_.size(); ++i) {
    const std::uint64_t p = ladder_[i + 1];
    const std::uint64_t r = choices_[i][cursor_[i + 1]];
    const std::uint64_t diff = (r + p - mod_small(gamma, p)) % p;
    const std::uint64_t m = static_cast<std::uint64_t>(
        (unsigned __int128)diff * inverse_mod(mod_small(moduli_[i], p), p) % p);
    gamma += moduli_[i] * m;
  }
  // odometer, last prime fastest
  std::size_t level = cursor_.size();
  while (level-- > 0) {
    const std::size_t limit = level == 0 ? seeds_.size() : choices_[level - 1].size();
    if (++cursor_[level] < limit) break;
    cursor_[level] = 0;
    if (level == 0) done_ = true;
  }
  return gamma;
}

}  // namespace sievedyn
