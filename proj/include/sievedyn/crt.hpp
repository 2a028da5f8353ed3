#pragma once

// Admissible instances of a constellation built one prime at a time.
//
// Over a ladder p0 < p1 < ... < pk of consecutive primes every residue mod
// p_k# has a unique mixed-radix form
//
//     gamma = base + m_1 * p0# + m_2 * p1# + ... + m_k * p_{k-1}#
//
// with 0 <= base < p0# and 0 <= m_i < p_i. Choosing the residue of gamma mod
// p_i fixes m_i, which is how instances are constructed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievedyn/arith.hpp"
#include "sievedyn/constellation.hpp"

namespace sievedyn {

struct PrimorialCoordinates {
  BigInt base;
  std::vector<std::uint64_t> ladder;  // p0, p1, ..., pk
  std::vector<std::uint64_t> digits;  // m_1 .. m_k; digits[i-1] multiplies ladder[i-1]#

  BigInt value() const;
  /// "base + m1*p0# + m2*p1# + ...", zero digits omitted.
  std::string to_string() const;
};

/// Consecutive primes p0..pk. Throws ValidationError unless both are prime
/// and p0 <= pk.
std::vector<std::uint64_t> prime_ladder(std::uint64_t p0, std::uint64_t pk);

/// Mixed-radix decomposition of 0 <= gamma < pk#. Throws ValidationError
/// outside that range.
PrimorialCoordinates to_primorial_coordinates(const BigInt& gamma, std::uint64_t p0,
                                              std::uint64_t pk);

/// True iff gamma + offset has no prime factor <= p for every offset of s.
bool verify_instance(const Constellation& s, const BigInt& gamma, std::uint64_t p);

struct ResidueChoice {
  std::uint64_t prime = 0;
  std::uint64_t residue = 0;
};

/// The unique gamma < pk# with gamma == seed (mod p0#) and gamma == r_i
/// (mod p_i) for the consecutive primes p_1..p_k after p0 given in `choices`.
/// The seed must be an instance of s (or a driving term) in G(p0#), and each
/// residue must lie in Upsilon_s(p_i); violations throw ValidationError
/// naming the prime.
BigInt instance_from_residues(const Constellation& s, const BigInt& seed, std::uint64_t p0,
                              const std::vector<ResidueChoice>& choices);

struct ReplicationImage {
  std::uint64_t m = 0;
  BigInt gamma;
  std::uint64_t residue = 0;  // gamma mod p_next
  bool survives = false;
};

/// The p_next images gamma + m * pk# (0 <= m < p_next), each classified by
/// whether its residue mod p_next lies in Upsilon_s(p_next).
std::vector<ReplicationImage> images_under_replication(const Constellation& s,
                                                       const BigInt& gamma, std::uint64_t pk,
                                                       std::uint64_t p_next);

/// Streams every instance of s and its driving terms modulo pk#: seeds are
/// the instances in [0, p0#) found by direct scan, extended lexicographically
/// over Upsilon_s(p_1) x ... x Upsilon_s(p_k).
class InstanceEnumerator {
 public:
  InstanceEnumerator(const Constellation& s, std::uint64_t p0, std::uint64_t pk);

  /// prod_{q <= pk} (q - nu_q(s)).
  BigInt count() const;
  std::optional<BigInt> next();

  const std::vector<std::uint64_t>& seeds() const { return seeds_; }

 private:
  Constellation s_;
  std::vector<std::uint64_t> ladder_;
  std::vector<std::uint64_t> seeds_;
  std::vector<std::vector<std::uint64_t>> choices_;  // Upsilon per p_1..p_k
  std::vector<BigInt> moduli_;                       // p0#, p1#, ..., p_{k-1}#
  std::vector<std::size_t> cursor_;                  // seed index, then one per prime
  bool done_ = false;
};

}  // namespace sievedyn
