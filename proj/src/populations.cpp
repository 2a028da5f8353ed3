#include "sievedyn/populations.hpp"

#include <numeric>
#include <ostream>

#include "sievedyn/errors.hpp"

namespace sievedyn {

std::uint64_t PopulationCount::count(std::size_t j) const {
  if (j < J() || j > max_length()) return 0;
  return counts[j - J()];
}

std::uint64_t PopulationCount::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

// Length (in gaps) of the match starting at gaps[0..], or 0 if none.
template <class Gaps>
std::size_t match_length(const Gaps& gaps, std::size_t available,
                         const std::vector<std::uint64_t>& offsets) {
  const std::uint64_t span = offsets.back();
  std::size_t next_boundary = 1;
  std::uint64_t sum = 0;
  for (std::size_t k = 0; k < available; ++k) {
    sum += gaps[k];
    if (sum < offsets[next_boundary]) continue;
    if (sum > offsets[next_boundary]) return 0;
    if (sum == span) return k + 1;
    ++next_boundary;
  }
  return 0;
}

}  // namespace

PopulationCounter::PopulationCounter(const Constellation& s)
    : s_(s), offsets_(s.offsets()), max_window_(s.span() / 2), counts_(1, 0) {}

void PopulationCounter::evaluate_front() {
  const std::size_t len = match_length(window_, window_.size(), offsets_);
  if (len != 0) {
    const std::size_t slot = len - s_.length();
    if (slot >= counts_.size()) counts_.resize(slot + 1, 0);
    ++counts_[slot];
  }
  window_sum_ -= window_.front();
  window_.pop_front();
  ++evaluated_;
}

void PopulationCounter::drain() {
  while (evaluated_ < pushed_ && window_sum_ >= s_.span()) evaluate_front();
}

void PopulationCounter::push(std::uint32_t gap) {
  if (head_.size() < max_window_) head_.push_back(gap);
  window_.push_back(gap);
  window_sum_ += gap;
  ++pushed_;
  drain();
}

PopulationCount PopulationCounter::finish(std::uint64_t stage_prime) {
  if (pushed_ == 0) throw ValidationError("cannot count populations in an empty cycle");
  // Feed the cycle head again (repeatedly if the whole cycle is shorter than a
  // window) until every original start has been evaluated.
  std::size_t h = 0;
  while (evaluated_ < pushed_) {
    if (window_sum_ >= s_.span()) {
      evaluate_front();
      continue;
    }
    const std::uint32_t g = head_[h];
    h = (h + 1) % head_.size();
    window_.push_back(g);
    window_sum_ += g;
  }
  return PopulationCount{s_, stage_prime, counts_};
}

PopulationCount count_populations(const Constellation& s, const GapCycle& cycle) {
  PopulationCounter counter(s);
  for (Gap g : cycle.gaps()) counter.push(g);
  return counter.finish(cycle.stage_prime());
}

PopulationCount count_populations(const Constellation& s, GapStream& stream) {
  PopulationCounter counter(s);
  Gap g;
  while (stream.next(g)) counter.push(g);
  return counter.finish(stream.stage_prime());
}

std::vector<Occurrence> locate_occurrences(const Constellation& s, const GapCycle& cycle) {
  const auto gaps = cycle.gaps();
  const std::size_t n = gaps.size();
  const auto offsets = s.offsets();
  const std::size_t max_window = s.span() / 2;

  struct Wrapped {
    std::span<const Gap> gaps;
    std::size_t start;
    std::uint64_t operator[](std::size_t k) const { return gaps[(start + k) % gaps.size()]; }
  };

  std::vector<Occurrence> out;
  std::uint64_t generator = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = match_length(Wrapped{gaps, i}, max_window, offsets);
    if (len != 0) out.push_back({generator, len});
    generator += gaps[i];
  }
  return out;
}

void write_population_csv(std::ostream& out, const PopulationCount& pc, bool header) {
  if (header) out << "stage_prime,j,count\n";
  for (std::size_t k = 0; k < pc.counts.size(); ++k) {
    out << pc.stage_prime << ',' << pc.J() + k << ',' << pc.counts[k] << '\n';
  }
}

}  // namespace sievedyn
