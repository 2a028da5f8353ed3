#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "sievedyn/census.hpp"
#include "sievedyn/errors.hpp"
#include "sievedyn/population_model.hpp"
#include "sievedyn/progressions.hpp"
#include "sievedyn/sieve.hpp"

using namespace sievedyn;

TEST_CASE("sieve against trial division") {
  const SegmentedSieve sieve;
  CHECK(sieve.count(2, 30) == 10);
  CHECK(sieve.primes(2, 30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(sieve.primes(1, 1).empty());
  CHECK(sieve.primes(0, 2) == std::vector<std::uint64_t>{2});
  CHECK(sieve.primes(2, 1'000'000) == oracle::primes_between(2, 1'000'000));

  // Tiny segments and several workers produce the same stream.
  const SegmentedSieve small({.bound = 2'000'000'000, .segment_bits = 64, .jobs = 3});
  CHECK(small.primes(999'000, 1'001'000) == oracle::primes_between(999'000, 1'001'000));
  CHECK(small.primes(2, 100'000) == sieve.primes(2, 100'000));
}

TEST_CASE("sieve range checks") {
  const SegmentedSieve sieve({.bound = 1000});
  CHECK_THROWS_AS(sieve.count(2, 1001), BoundError);
  CHECK_THROWS_AS(sieve.count(10, 5), ValidationError);
  CHECK(sieve.count(2, 1000) == 168);
}

TEST_CASE("prime count in the 35537..35969 window") {
  const std::uint64_t lo = 35537ull * 35537ull;
  const std::uint64_t hi = 35969ull * 35969ull;
  CHECK(lo == 1'262'878'369ull);
  CHECK(hi == 1'293'768'961ull);
  // Independent check: primepi(hi) - primepi(lo) = 64931790 - 63458407.
  const std::uint64_t one = SegmentedSieve({.jobs = 1}).count(lo, hi);
  const std::uint64_t four = SegmentedSieve({.jobs = 4}).count(lo, hi);
  CHECK(one == 1'473'383);
  CHECK(four == one);
}

TEST_CASE("survival intervals") {
  const auto iv = survival_interval(5);
  CHECK(iv.lo == 25);
  CHECK(iv.hi == 49);
  CHECK(iv.gap() == 2);
  CHECK(survival_intervals(35537, 35969).size() == 35);
  CHECK(survival_intervals(35537, 35969).back().prime == 35963);
  CHECK(survival_intervals(10, 10).empty());
  CHECK_THROWS_AS(survival_interval(9), ValidationError);
}

TEST_CASE("census over small intervals") {
  const std::vector<Constellation> twin{Constellation({2})};
  const auto rec = census(twin, {survival_interval(5)});
  REQUIRE(rec.size() == 1);
  CHECK(rec[0].counts[0] == 2);  // (29,31), (41,43)
  CHECK(rec[0].prime_count == 6);  // 29 31 37 41 43 47

  CHECK(count_runs(Constellation({2}), 100, 100) == 0);
  // starts 7, 13, 37, 67, 97; the run from 97 ends at 103, past the window
  CHECK(count_runs(Constellation({4, 2}), 2, 100) == 5);
}

TEST_CASE("census matches a brute-force run count") {
  const auto primes = oracle::primes_between(2, 200'100);
  auto brute = [&](const std::vector<std::uint64_t>& gaps, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i + gaps.size() < primes.size(); ++i) {
      if (primes[i] < lo || primes[i] >= hi) continue;
      bool ok = true;
      for (std::size_t k = 0; k < gaps.size() && ok; ++k) ok = primes[i + k + 1] - primes[i + k] == gaps[k];
      n += ok;
    }
    return n;
  };
  const std::vector<Constellation> battery{Constellation({2}), Constellation({4, 2}),
                                           Constellation({6, 6, 6}), Constellation({2, 4, 2}),
                                           Constellation({2, 10, 2})};
  const auto intervals = survival_intervals(101, 443);
  const auto records = census(battery, intervals, {.jobs = 2});
  for (std::size_t c = 0; c < battery.size(); ++c) {
    const std::vector<std::uint64_t> gaps(battery[c].gaps().begin(), battery[c].gaps().end());
    std::uint64_t total = 0;
    for (const auto& r : records) {
      CHECK(r.counts[c] == brute(gaps, r.interval.lo, r.interval.hi));
      total += r.counts[c];
    }
    // additivity: the union of the adjacent intervals counts the same runs
    CHECK(count_runs(battery[c], intervals.front().lo, intervals.back().hi) == total);
  }
}

TEST_CASE("census is independent of worker count and segment size") {
  const std::vector<Constellation> battery{Constellation({6, 6, 6}), Constellation({2, 4})};
  const auto intervals = survival_intervals(3001, 3203);
  const auto a = census(battery, intervals, {.jobs = 1});
  const auto b = census(battery, intervals, {.bound = 2'000'000'000, .segment_bits = 4096, .jobs = 3});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].counts == b[i].counts);
    CHECK(a[i].prime_count == b[i].prime_count);
  }
}

TEST_CASE("census CSV") {
  const std::vector<Constellation> cs{Constellation({2}), Constellation({2, 4})};
  std::ostringstream out;
  write_census_csv(out, cs, census(cs, {survival_interval(5)}));
  CHECK(out.str() ==
        "stage_prime,interval_lo,interval_hi,constellation,count\n"
        "5,25,49,\"2\",2\n"
        "5,25,49,\"2,4\",1\n");
}

TEST_CASE("survival comparison") {
  const std::vector<Constellation> mixed{Constellation({6, 6, 6}), Constellation({6, 6})};
  CHECK_THROWS_AS(survival_comparison(mixed, 101, 131), ValidationError);

  const auto self = survival_comparison({Constellation({6, 6, 6})}, 101, 131);
  REQUIRE(self.rows.size() == 1);
  CHECK(self.rows[0].census_ratio == 1.0);
  CHECK(self.rows[0].model_ratio == 1.0);
  CHECK(self.mard == 0.0);
  CHECK(self.model_stage == 127);

  const auto pair = survival_comparison({Constellation({6, 6, 6}), Constellation({2, 4, 2})}, 1009, 1103);
  CHECK(pair.rows[1].model_w == doctest::Approx(
                                    to_double(evolve(initial_population(Constellation({2, 4, 2}), 5), 1097).w_J())));
  CHECK(pair.rows[1].deviation == doctest::Approx(std::abs(pair.rows[1].census_ratio - pair.rows[1].model_ratio) /
                                                   pair.rows[1].model_ratio));
}

TEST_CASE("repetitions and progressions") {
  CHECK(cpap_divisibility_check(3, 6));
  CHECK_FALSE(cpap_divisibility_check(3, 4));
  CHECK(cpap_divisibility_check(21, 9699690));
  CHECK_FALSE(cpap_divisibility_check(21, 9699690 / 19));

  CHECK(repetition_w_infinity(3, 6) == 2);
  CHECK(repetition_w_infinity(3, 12) == 2);
  CHECK(repetition_w_infinity(3, 30) == 8);
  CHECK(repetition_w_infinity(3, 30) == w_asymptotic_closed(repetition(3, 30)));
  for (std::uint64_t g : {6, 12, 18, 24, 30, 42, 60, 66, 210}) {
    CHECK(repetition_w_infinity(3, g) == w_asymptotic_closed(repetition(3, g)));
  }
  CHECK_THROWS_AS(repetition_w_infinity(3, 4), ValidationError);

  auto starts = [](const std::vector<ApStart>& v) {
    std::vector<std::uint64_t> out;
    for (const auto& a : v) out.push_back(a.start);
    return out;
  };
  CHECK(starts(ap_scan(3, 6, 1, 100)) == std::vector<std::uint64_t>{5, 11, 41, 61});

  std::vector<std::uint64_t> twins;
  const auto primes = oracle::primes_between(2, 1002);
  for (std::size_t i = 0; i + 1 < primes.size(); ++i) {
    if (primes[i] <= 1000 && primes[i + 1] - primes[i] == 2) twins.push_back(primes[i]);
  }
  const auto twin_aps = ap_scan(1, 2, 1, 1000);
  CHECK(starts(twin_aps) == twins);
  for (const auto& a : twin_aps) CHECK(a.consecutive);

  // 5, 11, 17, 23 skips 7, 13, 19; 251, 257, 263, 269 has no prime in between.
  const auto six = ap_scan(3, 6, 1, 300);
  CHECK_FALSE(six.front().consecutive);
  bool found = false;
  for (const auto& a : six) found = found || (a.start == 251 && a.consecutive);
  CHECK(found);

  // Any 4-term progression of primes above 5 has 6 | g.
  for (std::uint64_t g = 2; g <= 30; g += 2) {
    for (const auto& a : ap_scan(3, g, 7, 20'000)) CHECK_MESSAGE(cpap_divisibility_check(3, g), g);
  }

  CHECK_THROWS_AS(ap_scan(21, 9699690, 11410337850553ull, 11410337850553ull), BoundError);
}
