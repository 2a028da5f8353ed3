#include "sievedyn/cycle.hpp"

#include <algorithm>
#include <numeric>

#include "sievedyn/errors.hpp"
#include "sievedyn/primes.hpp"

namespace sievedyn {

Gap checked_gap(std::uint64_t value) {
  if (value > UINT16_MAX) {
    throw BoundError("gap " + std::to_string(value) + " does not fit the 16-bit gap width");
  }
  return static_cast<Gap>(value);
}

GapCycle::GapCycle(std::uint64_t stage_prime, std::vector<Gap> gaps)
    : stage_prime_(stage_prime), gaps_(std::move(gaps)) {
  if (gaps_.empty()) throw ValidationError("a cycle of gaps cannot be empty");
}

BigInt GapCycle::span() const {
  std::uint64_t total = 0;
  for (Gap g : gaps_) total += g;
  return BigInt(total);
}

GapCycle initial_cycle(std::uint64_t p0) {
  if (p0 < 3 || p0 > kMaxBootstrapPrime || !is_prime(p0)) {
    throw ValidationError("bootstrap prime must be one of 3, 5, 7, 11, 13 (got " +
                          std::to_string(p0) + ")");
  }
  const std::uint64_t modulus = to_u64(primorial(p0), "bootstrap primorial");
  std::vector<Gap> gaps;
  std::uint64_t last = 1;
  for (std::uint64_t n = 2; n <= modulus + 1; ++n) {
    if (std::gcd(n, modulus) != 1) continue;
    gaps.push_back(checked_gap(n - last));
    last = n;
  }
  return GapCycle(p0, std::move(gaps));
}

std::uint64_t next_prime(const GapCycle& c) { return std::uint64_t{c.gap(1)} + 1; }

BigInt next_cycle_bytes(const GapCycle& c) {
  const std::uint64_t p = next_prime(c);
  return BigInt(c.length()) * (p - 1) * sizeof(Gap);
}

namespace {

// Walks the concatenation of p copies of c, removing p*r for each generator r
// of c. Emits surviving gaps and the fusion events.
template <class EmitGap>
void run_recursion(const GapCycle& c, const FusionObserver& on_fusion, EmitGap&& emit) {
  const std::uint64_t p = next_prime(c);
  const auto gaps = c.gaps();
  const std::size_t n = gaps.size();

  std::uint64_t position = 1;
  std::uint64_t target = p;  // p * r with r = 1
  std::size_t r_walk = 0;
  std::uint64_t concat_index = 0;
  std::uint64_t acc = 0;

  for (std::uint64_t copy = 0; copy < p; ++copy) {
    for (std::size_t i = 0; i < n; ++i) {
      const Gap g = gaps[i];
      position += g;
      acc += g;
      ++concat_index;
      if (position == target) {
        if (on_fusion) on_fusion(FusionEvent{target, concat_index});
        target += p * gaps[r_walk % n];
        ++r_walk;
        continue;
      }
      emit(acc);
      acc = 0;
    }
  }
  if (acc != 0 || r_walk != n) {
    throw std::logic_error("recursion left an unfused tail; input is not a valid cycle");
  }
}

}  // namespace

GapCycle next_cycle(const GapCycle& c, std::uint64_t budget_bytes) {
  return next_cycle(c, FusionObserver{}, budget_bytes);
}

GapCycle next_cycle(const GapCycle& c, const FusionObserver& on_fusion,
                    std::uint64_t budget_bytes) {
  const BigInt bytes = next_cycle_bytes(c);
  if (bytes > budget_bytes) {
    throw BoundError("G(" + std::to_string(next_prime(c)) + "#) needs " + bytes.str() +
                     " bytes, above the materialization budget of " +
                     std::to_string(budget_bytes) + "; use the streaming mode");
  }
  const std::uint64_t p = next_prime(c);
  std::vector<Gap> out;
  out.reserve(static_cast<std::size_t>(c.length() * (p - 1)));
  run_recursion(c, on_fusion, [&](std::uint64_t g) { out.push_back(checked_gap(g)); });
  return GapCycle(p, std::move(out));
}

GapCycle build_cycle(std::uint64_t p_target, std::uint64_t p0, std::uint64_t budget_bytes) {
  if (!is_prime(p_target) || p_target < p0) {
    throw ValidationError("target must be a prime >= the bootstrap prime");
  }
  GapCycle c = initial_cycle(p0);
  while (c.stage_prime() < p_target) c = next_cycle(c, budget_bytes);
  return c;
}

FusionEventStream::FusionEventStream(const GapCycle& c)
    : cycle_(&c), prime_(next_prime(c)), target_(next_prime(c)) {}

std::optional<FusionEvent> FusionEventStream::next() {
  if (emitted_ == cycle_->length()) return std::nullopt;
  const auto gaps = cycle_->gaps();
  const std::size_t n = gaps.size();
  while (position_ < target_) {
    position_ += gaps[walk_ % n];
    ++walk_;
    ++concat_index_;
  }
  if (position_ != target_) {
    throw std::logic_error("fusion target skipped; input is not a valid cycle");
  }
  FusionEvent ev{target_, concat_index_};
  target_ += prime_ * gaps[emitted_];
  ++emitted_;
  return ev;
}

std::vector<FusionEvent> fusion_events(const GapCycle& c) {
  std::vector<FusionEvent> out;
  out.reserve(c.length());
  FusionEventStream s(c);
  while (auto ev = s.next()) out.push_back(*ev);
  return out;
}

bool CycleReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CycleCheck& c) { return c.passed; });
}

const CycleCheck* CycleReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

CycleReport verify_cycle(const GapCycle& c) {
  CycleReport report;
  const std::uint64_t p = c.stage_prime();
  const auto gaps = c.gaps();
  const std::size_t n = gaps.size();

  const BigInt phi = primorial_totient(p);
  report.checks.push_back({"length", BigInt(n) == phi,
                           "length " + std::to_string(n) + ", expected " + phi.str()});

  const BigInt span = c.span();
  const BigInt pp = primorial(p);
  report.checks.push_back({"span", span == pp, "span " + span.str() + ", expected " + pp.str()});

  const std::uint64_t np = next_prime_after(p);
  report.checks.push_back({"first_gap", gaps.front() + std::uint64_t{1} == np,
                           "g1 = " + std::to_string(gaps.front()) + ", next prime " +
                               std::to_string(np)});

  report.checks.push_back({"last_gap", gaps.back() == 2,
                           "last gap " + std::to_string(gaps.back())});

  std::size_t mismatch = 0;
  for (std::size_t i = 1; i < n; ++i) {
    // g_i vs g_{n-i}, 1-based
    if (gaps[i - 1] != gaps[n - i - 1]) {
      mismatch = i;
      break;
    }
  }
  report.checks.push_back({"symmetry", mismatch == 0,
                           mismatch == 0 ? "g_i = g_{phi-i} for all i"
                                         : "first asymmetry at i = " + std::to_string(mismatch)});
  return report;
}

}  // namespace sievedyn
