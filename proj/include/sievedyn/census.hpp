#pragma once

// Constellation counts among actual primes, by interval of survival.
//
// DeltaH(p) = [p^2, p_next^2), half-open so that every prime belongs to one
// interval. A run of consecutive primes q_0 < ... < q_J is attributed to the
// interval containing q_0, even when it ends past the interval.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sievedyn/constellation.hpp"
#include "sievedyn/sieve.hpp"

namespace sievedyn {

struct SurvivalInterval {
  std::uint64_t prime = 0;
  std::uint64_t next_prime = 0;
  std::uint64_t lo = 0;  // prime^2
  std::uint64_t hi = 0;  // next_prime^2, exclusive

  std::uint64_t gap() const { return next_prime - prime; }
  auto operator<=>(const SurvivalInterval&) const = default;
};

SurvivalInterval survival_interval(std::uint64_t p);

/// One interval per stage prime p with stage_lo <= p < stage_hi.
std::vector<SurvivalInterval> survival_intervals(std::uint64_t stage_lo, std::uint64_t stage_hi);

struct CensusRecord {
  SurvivalInterval interval;
  std::uint64_t prime_count = 0;
  std::vector<std::uint64_t> counts;  // parallel to the constellation list
};

/// Counts runs of consecutive primes matching each constellation, per
/// interval. The intervals must be sorted and disjoint. Results do not depend
/// on options.jobs.
std::vector<CensusRecord> census(const std::vector<Constellation>& constellations,
                                 const std::vector<SurvivalInterval>& intervals,
                                 const SieveOptions& options = {});

/// Runs of consecutive primes matching s whose first prime lies in [lo, hi).
std::uint64_t count_runs(const Constellation& s, std::uint64_t lo, std::uint64_t hi,
                         const SieveOptions& options = {});

/// CSV "stage_prime,interval_lo,interval_hi,constellation,count"; the
/// constellation field is quoted since it contains commas.
void write_census_csv(std::ostream& out, const std::vector<Constellation>& constellations,
                      const std::vector<CensusRecord>& records, bool header = true);

struct ComparisonRow {
  Constellation s;
  std::uint64_t census_count = 0;
  double model_w = 0.0;        // w_{s,J} at the model stage
  double census_ratio = 0.0;   // census_count / reference count
  double model_ratio = 0.0;    // model_w / reference w
  double deviation = 0.0;      // |census_ratio - model_ratio| / model_ratio
};

struct SurvivalComparison {
  std::size_t reference = 0;
  std::uint64_t model_stage = 0;
  double lambda = 0.0;        // relative to lambda_p0
  std::uint64_t lambda_p0 = 0;
  std::vector<ComparisonRow> rows;
  double mard = 0.0;          // mean deviation over the non-reference rows
};

struct ComparisonOptions {
  std::size_t reference = 0;
  std::uint64_t lambda_p0 = 37;
  SieveOptions sieve;
};

/// Census counts summed over the window vs the model weights w_{s,J} at the
/// last stage prime of the window, both normalized to the reference
/// constellation. All constellations must have the same length.
SurvivalComparison survival_comparison(const std::vector<Constellation>& battery,
                                       std::uint64_t stage_lo, std::uint64_t stage_hi,
                                       const ComparisonOptions& options = {});

}  // namespace sievedyn
