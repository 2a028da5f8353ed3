#include "sievedyn/census.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sievedyn/errors.hpp"
#include "sievedyn/population_model.hpp"
#include "sievedyn/primes.hpp"

namespace sievedyn {

SurvivalInterval survival_interval(std::uint64_t p) {
  if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
  const std::uint64_t q = next_prime_after(p);
  return SurvivalInterval{p, q, p * p, q * q};
}

std::vector<SurvivalInterval> survival_intervals(std::uint64_t stage_lo, std::uint64_t stage_hi) {
  std::vector<SurvivalInterval> out;
  if (stage_hi <= stage_lo) return out;
  for (std::uint64_t p : primes_in_range(stage_lo, stage_hi - 1)) out.push_back(survival_interval(p));
  return out;
}

namespace {

struct Window {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

// Index of the window containing v, or npos.
std::size_t locate(const std::vector<Window>& windows, std::uint64_t v) {
  auto it = std::upper_bound(windows.begin(), windows.end(), v,
                             [](std::uint64_t x, const Window& w) { return x < w.lo; });
  if (it == windows.begin()) return std::string::npos;
  --it;
  return v < it->hi ? static_cast<std::size_t>(it - windows.begin()) : std::string::npos;
}

struct Tally {
  std::vector<std::uint64_t> prime_counts;
  std::vector<std::vector<std::uint64_t>> counts;  // [window][constellation]
};

Tally tally_runs(const std::vector<Constellation>& constellations,
                 const std::vector<Window>& windows, const SieveOptions& options) {
  Tally t;
  t.prime_counts.assign(windows.size(), 0);
  t.counts.assign(windows.size(), std::vector<std::uint64_t>(constellations.size(), 0));
  if (windows.empty()) return t;
  for (std::size_t i = 1; i < windows.size(); ++i) {
    if (windows[i].lo < windows[i - 1].hi) throw ValidationError("census intervals must be sorted and disjoint");
  }

  std::size_t max_len = 0;
  std::uint64_t max_span = 0;
  for (const auto& s : constellations) {
    max_len = std::max(max_len, s.length());
    max_span = std::max(max_span, s.span());
  }
  const std::uint64_t lo = std::max<std::uint64_t>(windows.front().lo, 2);
  const std::uint64_t last_start = windows.back().hi - 1;
  const std::uint64_t end = last_start + max_span;
  if (lo > last_start) return t;

  // The trailing max_len + 1 primes; a run ending at the newest prime is
  // checked gap by gap backwards.
  std::vector<std::uint64_t> ring(max_len + 1, 0);
  std::size_t seen = 0;
  SegmentedSieve sieve(options);
  sieve.for_each_prime(lo, end, [&](std::uint64_t q) {
    ring[seen % ring.size()] = q;
    ++seen;
    if (q <= last_start) {
      const std::size_t w = locate(windows, q);
      if (w != std::string::npos) ++t.prime_counts[w];
    }
    for (std::size_t c = 0; c < constellations.size(); ++c) {
      const auto gaps = constellations[c].gaps();
      const std::size_t J = gaps.size();
      if (seen < J + 1) continue;
      bool match = true;
      for (std::size_t k = 0; k < J && match; ++k) {
        const std::uint64_t later = ring[(seen - 1 - k) % ring.size()];
        const std::uint64_t earlier = ring[(seen - 2 - k) % ring.size()];
        match = later - earlier == gaps[J - 1 - k];
      }
      if (!match) continue;
      const std::uint64_t start = ring[(seen - 1 - J) % ring.size()];
      const std::size_t w = locate(windows, start);
      if (w != std::string::npos) ++t.counts[w][c];
    }
  });
  return t;
}

}  // namespace

std::vector<CensusRecord> census(const std::vector<Constellation>& constellations,
                                 const std::vector<SurvivalInterval>& intervals,
                                 const SieveOptions& options) {
  std::vector<Window> windows;
  for (const auto& iv : intervals) windows.push_back({iv.lo, iv.hi});
  const Tally t = tally_runs(constellations, windows, options);
  std::vector<CensusRecord> out;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    out.push_back(CensusRecord{intervals[i], t.prime_counts[i], t.counts[i]});
  }
  return out;
}

std::uint64_t count_runs(const Constellation& s, std::uint64_t lo, std::uint64_t hi,
                         const SieveOptions& options) {
  if (hi <= lo) return 0;
  return tally_runs({s}, {{lo, hi}}, options).counts[0][0];
}

void write_census_csv(std::ostream& out, const std::vector<Constellation>& constellations,
                      const std::vector<CensusRecord>& records, bool header) {
  if (header) out << "stage_prime,interval_lo,interval_hi,constellation,count\n";
  for (const auto& r : records) {
    for (std::size_t c = 0; c < constellations.size(); ++c) {
      out << r.interval.prime << ',' << r.interval.lo << ',' << r.interval.hi << ",\""
          << constellations[c].to_string() << "\"," << r.counts[c] << '\n';
    }
  }
}

SurvivalComparison survival_comparison(const std::vector<Constellation>& battery,
                                       std::uint64_t stage_lo, std::uint64_t stage_hi,
                                       const ComparisonOptions& options) {
  if (battery.empty()) throw ValidationError("survival comparison needs at least one constellation");
  const std::size_t J = battery.front().length();
  for (const auto& s : battery) {
    if (s.length() != J) {
      throw ValidationError("survival comparison needs constellations of one length; " +
                            battery.front().to_string() + " and " + s.to_string() + " differ");
    }
  }
  if (options.reference >= battery.size()) throw ValidationError("reference index out of range");
  const auto intervals = survival_intervals(stage_lo, stage_hi);
  if (intervals.empty()) throw ValidationError("stage window contains no primes");

  SurvivalComparison cmp;
  cmp.reference = options.reference;
  cmp.model_stage = intervals.back().prime;
  cmp.lambda_p0 = options.lambda_p0;
  cmp.lambda = to_double(lambda_param(J, options.lambda_p0, cmp.model_stage));

  const auto records = census(battery, intervals, options.sieve);
  for (std::size_t c = 0; c < battery.size(); ++c) {
    ComparisonRow row{battery[c]};
    for (const auto& r : records) row.census_count += r.counts[c];
    PopulationCurve curve(initial_population(battery[c], markov_start_prime(battery[c])));
    while (curve.stage_prime() < cmp.model_stage) curve.advance();
    row.model_w = curve.weight(0);
    cmp.rows.push_back(std::move(row));
  }

  const ComparisonRow& ref = cmp.rows[cmp.reference];
  if (ref.census_count == 0 || ref.model_w == 0.0) {
    throw ValidationError("reference constellation " + ref.s.to_string() +
                          " has a zero count or weight");
  }
  const double ref_count = static_cast<double>(ref.census_count);
  const double ref_w = ref.model_w;
  double total = 0.0;
  std::size_t n = 0;
  for (std::size_t c = 0; c < cmp.rows.size(); ++c) {
    ComparisonRow& row = cmp.rows[c];
    row.census_ratio = static_cast<double>(row.census_count) / ref_count;
    row.model_ratio = row.model_w / ref_w;
    row.deviation = row.model_ratio > 0.0
                        ? std::abs(row.census_ratio - row.model_ratio) / row.model_ratio
                        : (row.census_ratio > 0.0 ? 1.0 : 0.0);
    if (c == cmp.reference) continue;
    total += row.deviation;
    ++n;
  }
  cmp.mard = n ? total / static_cast<double>(n) : 0.0;
  return cmp;
}

}  // namespace sievedyn
