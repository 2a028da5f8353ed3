#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sievedyn/arith.hpp"

namespace sievedyn {

/// A sequence of J >= 1 even gaps, each >= 2. An instance with initial
/// generator g0 covers the J+1 generators g0 + offsets()[j].
class Constellation {
 public:
  explicit Constellation(std::vector<std::uint64_t> gaps);

  /// Parses the comma-separated text form, e.g. "2,10,2,10,2".
  static Constellation parse(std::string_view text);

  std::span<const std::uint64_t> gaps() const { return gaps_; }
  std::size_t length() const { return gaps_.size(); }
  std::uint64_t span() const { return span_; }

  /// Cumulative sums 0, g1, g1+g2, ..., |s| (J+1 values).
  std::vector<std::uint64_t> offsets() const;

  std::string to_string() const;

  auto operator<=>(const Constellation&) const = default;

 private:
  std::vector<std::uint64_t> gaps_;
  std::uint64_t span_ = 0;
};

/// nu_p(s): residue classes mod p covered by the J+1 generators.
unsigned nu(const Constellation& s, std::uint64_t p);

/// Upsilon_s(p): residues r mod p with r + offset != 0 (mod p) for every offset.
std::vector<std::uint64_t> upsilon(const Constellation& s, std::uint64_t p);

struct ResidueProfile {
  std::uint64_t prime = 0;
  unsigned nu = 0;
  std::vector<std::uint64_t> upsilon;
};

ResidueProfile residue_profile(const Constellation& s, std::uint64_t p);

bool is_admissible_for(const Constellation& s, std::uint64_t p);

/// Admissible for every prime; only primes <= J+1 need checking.
bool is_admissible(const Constellation& s);

/// Odd primes dividing some span between two generators of s, increasing.
std::vector<std::uint64_t> q_primes(const Constellation& s);

/// Q(s), the product of q_primes(s).
BigInt q_of(const Constellation& s);

/// prod_{q <= p} (q - nu_q(s)): admissible instances of s modulo p#.
BigInt admissible_instance_count(const Constellation& s, std::uint64_t p);

// -- driving terms ----------------------------------------------------------

/// A constellation that collapses to s under interior fusions. Positions index
/// the generators of `term` (0..j); boundary positions are the J+1 generators
/// shared with s, interior positions the remaining j-J.
struct DrivingTerm {
  Constellation term;
  std::vector<std::size_t> boundary_positions;
  std::vector<std::size_t> interior_positions;

  std::size_t length() const { return term.length(); }
};

/// Guard on the raw composition space explored by driving_terms().
inline constexpr std::uint64_t kMaxCompositionSpace = std::uint64_t{1} << 24;

/// All admissible refinements of s obtained by splitting each gap into even
/// parts >= 2, in lexicographic order of their gaps. Throws BoundError when
/// the composition space exceeds kMaxCompositionSpace.
std::vector<DrivingTerm> driving_terms(const Constellation& s, bool include_self = true);

/// J1: length of the longest admissible driving term (>= J).
std::size_t longest_driving_term(const Constellation& s);

/// |t| = |s| and the offsets of s are a subsequence of the offsets of t.
bool is_driving_term(const Constellation& t, const Constellation& s);

/// Labels t's generators against s. Throws ValidationError if t does not
/// drive s.
DrivingTerm label_driving_term(const Constellation& t, const Constellation& s);

/// Removes generator `position` (1..j-1) of t, merging its two adjacent gaps.
Constellation fuse_at(const Constellation& t, std::size_t position);

}  // namespace sievedyn
