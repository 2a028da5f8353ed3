#pragma once

// Occurrence counting of a constellation and its driving terms inside a cycle
// of gaps. Windows are evaluated cyclically: the cycle is Z mod p#, so a
// window may wrap past the last gap.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <vector>

#include "sievedyn/constellation.hpp"
#include "sievedyn/cycle.hpp"
#include "sievedyn/gap_stream.hpp"

namespace sievedyn {

/// n_{s,j}(p#) for j = J .. J + counts.size() - 1.
struct PopulationCount {
  Constellation s;
  std::uint64_t stage_prime = 0;
  std::vector<std::uint64_t> counts;

  std::size_t J() const { return s.length(); }
  /// Largest j with a slot (J when nothing longer was seen).
  std::size_t max_length() const { return J() + counts.size() - 1; }
  std::uint64_t count(std::size_t j) const;
  std::uint64_t total() const;
};

/// Single-pass counter. Each start position is matched with an automaton over
/// the cumulative sums of s: walking the gaps, every running sum must either
/// fall strictly between two offsets of s (an interior generator) or hit the
/// next offset exactly.
class PopulationCounter {
 public:
  explicit PopulationCounter(const Constellation& s);

  void push(std::uint32_t gap);
  /// Replays the head of the cycle to close wrapping windows.
  PopulationCount finish(std::uint64_t stage_prime);

 private:
  void evaluate_front();
  void drain();

  Constellation s_;
  std::vector<std::uint64_t> offsets_;
  std::size_t max_window_;
  std::vector<std::uint32_t> head_;
  std::deque<std::uint32_t> window_;
  std::uint64_t window_sum_ = 0;
  std::uint64_t pushed_ = 0;
  std::uint64_t evaluated_ = 0;
  std::vector<std::uint64_t> counts_;
};

PopulationCount count_populations(const Constellation& s, const GapCycle& cycle);
/// Consumes the stream.
PopulationCount count_populations(const Constellation& s, GapStream& stream);

/// An occurrence of s or one of its driving terms: the window starting at
/// generator start_generator (in [1, p#)) with `length` gaps.
struct Occurrence {
  std::uint64_t start_generator = 0;
  std::size_t length = 0;

  auto operator<=>(const Occurrence&) const = default;
};

std::vector<Occurrence> locate_occurrences(const Constellation& s, const GapCycle& cycle);

/// CSV rows "stage_prime,j,count" with a header line.
void write_population_csv(std::ostream& out, const PopulationCount& pc, bool header = true);

}  // namespace sievedyn
