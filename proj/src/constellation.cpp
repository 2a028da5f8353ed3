#include "sievedyn/constellation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "sievedyn/errors.hpp"
#include "sievedyn/primes.hpp"

namespace sievedyn {

Constellation::Constellation(std::vector<std::uint64_t> gaps) : gaps_(std::move(gaps)) {
  if (gaps_.empty()) throw ValidationError("a constellation needs at least one gap");
  for (std::uint64_t g : gaps_) {
    if (g < 2 || g % 2 != 0) {
      throw ValidationError("constellation gaps must be even and >= 2 (got " + std::to_string(g) +
                            ")");
    }
    span_ += g;
  }
}

Constellation Constellation::parse(std::string_view text) {
  std::vector<std::uint64_t> gaps;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view field = text.substr(start, comma - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw ValidationError("cannot parse constellation '" + std::string(text) + "'");
    }
    gaps.push_back(value);
    start = comma + 1;
  }
  return Constellation(std::move(gaps));
}

std::vector<std::uint64_t> Constellation::offsets() const {
  std::vector<std::uint64_t> out{0};
  out.reserve(gaps_.size() + 1);
  for (std::uint64_t g : gaps_) out.push_back(out.back() + g);
  return out;
}

std::string Constellation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(gaps_[i]);
  }
  return out;
}

namespace {

std::vector<bool> covered_residues(std::span<const std::uint64_t> offsets, std::uint64_t p) {
  std::vector<bool> covered(p, false);
  for (std::uint64_t off : offsets) covered[off % p] = true;
  return covered;
}

unsigned coverage(std::span<const std::uint64_t> offsets, std::uint64_t p) {
  const auto covered = covered_residues(offsets, p);
  return static_cast<unsigned>(std::count(covered.begin(), covered.end(), true));
}

// Admissible for every prime <= offsets.size(); larger primes cannot be covered.
bool offsets_admissible(std::span<const std::uint64_t> offsets) {
  for (std::uint64_t q = 2; q <= offsets.size(); ++q) {
    if (is_prime(q) && coverage(offsets, q) == q) return false;
  }
  return true;
}

}  // namespace

unsigned nu(const Constellation& s, std::uint64_t p) {
  if (p == 0) throw ValidationError("nu: modulus must be positive");
  return coverage(s.offsets(), p);
}

std::vector<std::uint64_t> upsilon(const Constellation& s, std::uint64_t p) {
  const auto covered = covered_residues(s.offsets(), p);
  // r + off == 0 (mod p) iff r == -off; r is admissible iff -r is uncovered.
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (!covered[(p - r) % p]) out.push_back(r);
  }
  return out;
}

ResidueProfile residue_profile(const Constellation& s, std::uint64_t p) {
  return ResidueProfile{p, nu(s, p), upsilon(s, p)};
}

bool is_admissible_for(const Constellation& s, std::uint64_t p) { return nu(s, p) < p; }

bool is_admissible(const Constellation& s) { return offsets_admissible(s.offsets()); }

std::vector<std::uint64_t> q_primes(const Constellation& s) {
  const auto off = s.offsets();
  std::set<std::uint64_t> spans;
  for (std::size_t i = 0; i < off.size(); ++i) {
    for (std::size_t j = i + 1; j < off.size(); ++j) spans.insert(off[j] - off[i]);
  }
  std::set<std::uint64_t> primes;
  for (std::uint64_t d : spans) {
    for (std::uint64_t q : distinct_prime_factors(d)) {
      if (q != 2) primes.insert(q);
    }
  }
  return {primes.begin(), primes.end()};
}

BigInt q_of(const Constellation& s) {
  BigInt q = 1;
  for (std::uint64_t p : q_primes(s)) q *= p;
  return q;
}

BigInt admissible_instance_count(const Constellation& s, std::uint64_t p) {
  BigInt out = 1;
  for (std::uint64_t q : primes_in_range(2, p)) out *= (q - nu(s, q));
  return out;
}

// -- driving terms ----------------------------------------------------------

namespace {

struct TermSearch {
  std::span<const std::uint64_t> target_gaps;
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint64_t> parts;
  std::vector<std::vector<std::uint64_t>> found;

  void split(std::size_t gap_index, std::uint64_t remaining) {
    if (remaining == 0) {
      if (gap_index + 1 == target_gaps.size()) {
        found.push_back(parts);
      } else {
        split(gap_index + 1, target_gaps[gap_index + 1]);
      }
      return;
    }
    for (std::uint64_t part = 2; part <= remaining; part += 2) {
      parts.push_back(part);
      offsets.push_back(offsets.back() + part);
      if (offsets_admissible(offsets)) split(gap_index, remaining - part);
      offsets.pop_back();
      parts.pop_back();
    }
  }
};

}  // namespace

std::vector<DrivingTerm> driving_terms(const Constellation& s, bool include_self) {
  double space = 1.0;
  for (std::uint64_t g : s.gaps()) space *= std::ldexp(1.0, static_cast<int>(g / 2 - 1));
  if (space > static_cast<double>(kMaxCompositionSpace)) {
    throw BoundError("driving-term enumeration for " + s.to_string() +
                     " exceeds the composition cap of 2^24 candidates");
  }

  TermSearch search;
  search.target_gaps = s.gaps();
  search.split(0, s.gaps()[0]);

  std::vector<DrivingTerm> out;
  for (auto& parts : search.found) {
    Constellation t(std::move(parts));
    if (!include_self && t == s) continue;
    out.push_back(label_driving_term(t, s));
  }
  return out;
}

std::size_t longest_driving_term(const Constellation& s) {
  std::size_t longest = s.length();
  for (const auto& t : driving_terms(s)) longest = std::max(longest, t.length());
  return longest;
}

bool is_driving_term(const Constellation& t, const Constellation& s) {
  if (t.span() != s.span()) return false;
  const auto tt = t.offsets();
  const auto ss = s.offsets();
  return std::includes(tt.begin(), tt.end(), ss.begin(), ss.end());
}

DrivingTerm label_driving_term(const Constellation& t, const Constellation& s) {
  if (!is_driving_term(t, s)) {
    throw ValidationError(t.to_string() + " is not a driving term of " + s.to_string());
  }
  const auto tt = t.offsets();
  const auto ss = s.offsets();
  DrivingTerm dt{t, {}, {}};
  for (std::size_t i = 0; i < tt.size(); ++i) {
    if (std::binary_search(ss.begin(), ss.end(), tt[i])) {
      dt.boundary_positions.push_back(i);
    } else {
      dt.interior_positions.push_back(i);
    }
  }
  return dt;
}

Constellation fuse_at(const Constellation& t, std::size_t position) {
  if (position == 0 || position >= t.length()) {
    throw ValidationError("fusion position must be an inner generator (1..j-1)");
  }
  std::vector<std::uint64_t> gaps(t.gaps().begin(), t.gaps().end());
  gaps[position - 1] += gaps[position];
  gaps.erase(gaps.begin() + static_cast<std::ptrdiff_t>(position));
  return Constellation(std::move(gaps));
}

}  // namespace sievedyn
