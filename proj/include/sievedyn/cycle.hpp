#pragma once

// Cycles of gaps G(p#) and the three-step recursion G(p_k#) -> G(p_{k+1}#).
//
// A cycle lists the differences between consecutive p-rough numbers over one
// period p#, starting at the generator 1. Gaps are stored as 16-bit values;
// the largest gap of any materializable cycle (up to 29#) is far below 2^16
// and every narrowing is checked.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sievedyn/arith.hpp"

namespace sievedyn {

using Gap = std::uint16_t;

/// Default cap on the bytes a materialized cycle may occupy (2^32).
inline constexpr std::uint64_t kDefaultCycleBudget = std::uint64_t{1} << 32;

/// Largest p0 accepted by initial_cycle().
inline constexpr std::uint64_t kMaxBootstrapPrime = 13;

/// Narrows a gap value, throwing BoundError if it does not fit in Gap.
Gap checked_gap(std::uint64_t value);

class GapCycle {
 public:
  GapCycle(std::uint64_t stage_prime, std::vector<Gap> gaps);

  std::uint64_t stage_prime() const { return stage_prime_; }
  std::span<const Gap> gaps() const { return gaps_; }
  std::size_t length() const { return gaps_.size(); }

  /// Sum of the gaps; equals p# for a valid cycle.
  BigInt span() const;

  /// 1-based access, g_1 ... g_phi.
  Gap gap(std::size_t i) const { return gaps_.at(i - 1); }

  friend bool operator==(const GapCycle&, const GapCycle&) = default;

 private:
  std::uint64_t stage_prime_;
  std::vector<Gap> gaps_;
};

/// G(p0#) by a direct coprimality scan of [1, p0# + 1]; p0 in {3,5,7,11,13}.
GapCycle initial_cycle(std::uint64_t p0);

/// The prime confirmed by the next recursion step: g_1 + 1.
std::uint64_t next_prime(const GapCycle& c);

/// One removal performed in step R3. The removed generator is p_{k+1} * r for
/// a p_k-rough r; left_index is the 1-based index, in the concatenation of
/// p_{k+1} copies, of the gap that ends at the removed generator and absorbs
/// its right neighbour.
struct FusionEvent {
  std::uint64_t removed_generator = 0;
  std::uint64_t left_index = 0;

  friend bool operator==(const FusionEvent&, const FusionEvent&) = default;
};

using FusionObserver = std::function<void(const FusionEvent&)>;

/// Bytes needed to materialize the cycle that follows c.
BigInt next_cycle_bytes(const GapCycle& c);

/// G(p_{k+1}#) from G(p_k#). Throws BoundError when the result would exceed
/// budget_bytes; callers should then switch to stream_gaps().
GapCycle next_cycle(const GapCycle& c, std::uint64_t budget_bytes = kDefaultCycleBudget);
GapCycle next_cycle(const GapCycle& c, const FusionObserver& on_fusion,
                    std::uint64_t budget_bytes = kDefaultCycleBudget);

/// Chains next_cycle from initial_cycle(p0) up to G(p_target#).
GapCycle build_cycle(std::uint64_t p_target, std::uint64_t p0,
                     std::uint64_t budget_bytes = kDefaultCycleBudget);

/// Lazily yields the fusions of the step out of c, in increasing generator
/// order, without building the next cycle.
class FusionEventStream {
 public:
  explicit FusionEventStream(const GapCycle& c);

  std::optional<FusionEvent> next();
  std::uint64_t total() const { return cycle_->length(); }

 private:
  const GapCycle* cycle_;
  std::uint64_t prime_;
  std::uint64_t emitted_ = 0;
  std::uint64_t target_;
  std::uint64_t position_ = 1;    // current generator in the concatenation
  std::uint64_t concat_index_ = 0;
  std::size_t walk_ = 0;          // index into c's gaps for the concatenation
};

std::vector<FusionEvent> fusion_events(const GapCycle& c);

struct CycleCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CycleReport {
  std::vector<CycleCheck> checks;

  bool all_passed() const;
  const CycleCheck* find(const std::string& name) const;
};

/// Checks length = phi(p#), span = p#, g_1 = next prime - 1, last gap = 2,
/// and the mirror symmetry g_i = g_{phi-i}.
CycleReport verify_cycle(const GapCycle& c);

}  // namespace sievedyn
