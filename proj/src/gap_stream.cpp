#include "sievedyn/gap_stream.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

#include "sievedyn/errors.hpp"
#include "sievedyn/primes.hpp"

namespace sievedyn {

namespace detail {

// An endless periodic gap sequence starting at generator 1.
class GapSource {
 public:
  virtual ~GapSource() = default;
  virtual std::uint32_t next() = 0;
};

namespace {

class CycleReplay final : public GapSource {
 public:
  explicit CycleReplay(std::shared_ptr<const GapCycle> cycle) : cycle_(std::move(cycle)) {}

  std::uint32_t next() override {
    const auto gaps = cycle_->gaps();
    const std::uint32_t g = gaps[index_];
    if (++index_ == gaps.size()) index_ = 0;
    return g;
  }

 private:
  std::shared_ptr<const GapCycle> cycle_;
  std::size_t index_ = 0;
};

using SourceFactory = std::function<std::unique_ptr<GapSource>()>;

// G(p#) from two replays of G(q#), q the prime before p. Only the distance
// from the current generator to the next multiple of p to remove is kept, so
// no absolute position (and no bound on p#) is involved.
class FusionLevel final : public GapSource {
 public:
  FusionLevel(std::uint64_t prime, SourceFactory lower)
      : prime_(prime), ahead_(prime - 1), lower_(std::move(lower)) {}

  std::uint32_t next() override {
    if (!concat_) concat_ = lower_();
    std::uint64_t acc = 0;
    for (;;) {
      const std::uint32_t g = concat_->next();
      acc += g;
      if (g < ahead_) {
        ahead_ -= g;
        return static_cast<std::uint32_t>(acc);
      }
      if (g > ahead_) throw std::logic_error("stream skipped a fusion target");
      if (!scaled_) scaled_ = lower_();
      ahead_ = prime_ * scaled_->next();
    }
  }

 private:
  std::uint64_t prime_;
  std::uint64_t ahead_;  // target - position; the first target p is p - 1 past generator 1
  SourceFactory lower_;
  std::unique_ptr<GapSource> concat_;
  std::unique_ptr<GapSource> scaled_;
};

SourceFactory make_factory(const std::shared_ptr<const GapCycle>& base,
                           const std::vector<std::uint64_t>& ladder, std::size_t level) {
  if (level == 0) {
    return [base] { return std::unique_ptr<GapSource>(std::make_unique<CycleReplay>(base)); };
  }
  SourceFactory lower = make_factory(base, ladder, level - 1);
  const std::uint64_t prime = ladder[level];
  return [prime, lower] {
    return std::unique_ptr<GapSource>(std::make_unique<FusionLevel>(prime, lower));
  };
}

}  // namespace
}  // namespace detail

GapStream::GapStream(std::uint64_t p_target, std::uint64_t p0) : stage_prime_(p_target) {
  if (!is_prime(p_target) || p_target < p0) {
    throw ValidationError("stream target must be a prime >= the bootstrap prime");
  }
  length_ = primorial_totient(p_target);
  limit_ = length_ < (BigInt(1) << 64) ? length_.convert_to<std::uint64_t>() : UINT64_MAX;

  auto base = std::make_shared<const GapCycle>(initial_cycle(p0));
  std::vector<std::uint64_t> ladder{p0};
  while (ladder.back() < p_target) ladder.push_back(next_prime_after(ladder.back()));
  source_ = detail::make_factory(base, ladder, ladder.size() - 1)();
}

GapStream::GapStream(GapStream&&) noexcept = default;
GapStream& GapStream::operator=(GapStream&&) noexcept = default;
GapStream::~GapStream() = default;

bool GapStream::next(Gap& out) {
  if (produced_ == limit_) return false;
  out = checked_gap(source_->next());
  ++produced_;
  return true;
}

GapStream stream_gaps(std::uint64_t p_target, std::uint64_t p0) { return GapStream(p_target, p0); }

}  // namespace sievedyn
