#pragma once

// Constant-memory generation of G(p#).
//
// Each recursion level is a lazy source that replays the level below twice:
// one cursor walks the concatenation, the other (scaled by the level's prime)
// supplies the next generator to remove. Only the bootstrap cycle G(p0#) is
// stored. A stream over k levels holds 2^k small cursors.

#include <cstdint>
#include <iterator>
#include <memory>

#include "sievedyn/cycle.hpp"

namespace sievedyn {

namespace detail {
class GapSource;
}

class GapStream {
 public:
  GapStream(std::uint64_t p_target, std::uint64_t p0);
  GapStream(GapStream&&) noexcept;
  GapStream& operator=(GapStream&&) noexcept;
  ~GapStream();

  std::uint64_t stage_prime() const { return stage_prime_; }
  /// phi(p_target#): the number of gaps in one period.
  const BigInt& length() const { return length_; }
  std::uint64_t produced() const { return produced_; }

  /// Next gap of the period; false once all length() gaps were produced.
  /// Periods longer than 2^64 gaps never run out in practice.
  bool next(Gap& out);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Gap;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(GapStream* s) : stream_(s) { ++*this; }

    Gap operator*() const { return current_; }
    iterator& operator++() {
      if (stream_ && !stream_->next(current_)) stream_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, std::default_sentinel_t) { return a.stream_ == nullptr; }

   private:
    GapStream* stream_ = nullptr;
    Gap current_ = 0;
  };

  iterator begin() { return iterator(this); }
  std::default_sentinel_t end() { return {}; }

 private:
  std::unique_ptr<detail::GapSource> source_;
  std::uint64_t stage_prime_;
  BigInt length_;
  std::uint64_t limit_;  // length_ clamped to 64 bits
  std::uint64_t produced_ = 0;
};

/// Gaps of G(p_target#) built up from the bootstrap G(p0#), p0 <= 13.
GapStream stream_gaps(std::uint64_t p_target, std::uint64_t p0);

}  // namespace sievedyn
