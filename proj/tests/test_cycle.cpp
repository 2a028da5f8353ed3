#include <doctest.h>

#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "sievedyn/cycle.hpp"
#include "sievedyn/cycle_io.hpp"
#include "sievedyn/errors.hpp"
#include "sievedyn/gap_stream.hpp"
#include "sievedyn/primes.hpp"
#include "sievedyn/sieve.hpp"

using namespace sievedyn;

namespace {

std::vector<std::uint64_t> widen(const GapCycle& c) {
  return {c.gaps().begin(), c.gaps().end()};
}

std::vector<std::uint64_t> drain(GapStream& s) {
  std::vector<std::uint64_t> out;
  for (Gap g : s) out.push_back(g);
  return out;
}

}  // namespace

TEST_CASE("initial cycles for the bootstrap primes") {
  CHECK(widen(initial_cycle(3)) == std::vector<std::uint64_t>{4, 2});
  CHECK(widen(initial_cycle(5)) == std::vector<std::uint64_t>{6, 4, 2, 4, 2, 4, 6, 2});
  const GapCycle c7 = initial_cycle(7);
  CHECK(c7.length() == 48);
  CHECK(c7.span() == 210);
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    CHECK(widen(initial_cycle(p)) == oracle::cycle_gaps(p));
  }
}

TEST_CASE("bootstrap rejects unsupported primes") {
  CHECK_THROWS_AS(initial_cycle(2), ValidationError);
  CHECK_THROWS_AS(initial_cycle(9), ValidationError);
  CHECK_THROWS_AS(initial_cycle(17), ValidationError);
}

TEST_CASE("next prime is read from the first gap") {
  CHECK(next_prime(initial_cycle(3)) == 5);
  CHECK(next_prime(initial_cycle(5)) == 7);
  CHECK(next_prime(initial_cycle(13)) == 17);
}

TEST_CASE("recursion reproduces the direct scans") {
  CHECK(widen(next_cycle(initial_cycle(3))) == std::vector<std::uint64_t>{6, 4, 2, 4, 2, 4, 6, 2});
  GapCycle c = initial_cycle(3);
  while (c.stage_prime() < 17) {
    c = next_cycle(c);
    CHECK(widen(c) == oracle::cycle_gaps(c.stage_prime()));
  }
}

TEST_CASE("invariants hold along every chain up to 19") {
  for (std::uint64_t p0 : {3, 5, 7, 11, 13}) {
    const GapCycle c = build_cycle(19, p0);
    const CycleReport r = verify_cycle(c);
    CHECK_MESSAGE(r.all_passed(), "p0 = " << p0);
    CHECK(c.length() == 1 * 2 * 4 * 6 * 10 * 12 * 16 * 18);
    CHECK(c.span() == 9699690);
  }
}

TEST_CASE("fusion events") {
  SUBCASE("G(3#) removes 5 and 25") {
    std::vector<std::uint64_t> removed;
    for (const auto& ev : fusion_events(initial_cycle(3))) removed.push_back(ev.removed_generator);
    CHECK(removed == std::vector<std::uint64_t>{5, 25});
  }
  SUBCASE("G(5#) removes 7r for r coprime to 30") {
    std::vector<std::uint64_t> removed;
    for (const auto& ev : fusion_events(initial_cycle(5))) removed.push_back(ev.removed_generator);
    std::vector<std::uint64_t> expected;
    for (std::uint64_t r : oracle::rough_numbers(5)) expected.push_back(7 * r);
    CHECK(removed == expected);
    CHECK(removed == std::vector<std::uint64_t>{7, 49, 77, 91, 119, 133, 161, 203});
  }
  SUBCASE("count, spacing and divisibility per step") {
    GapCycle c = initial_cycle(3);
    while (c.stage_prime() < 17) {
      const std::uint64_t p = next_prime(c);
      std::vector<FusionEvent> seen;
      const GapCycle next = next_cycle(c, [&](const FusionEvent& ev) { seen.push_back(ev); });
      CHECK(BigInt(seen.size()) == primorial_totient(c.stage_prime()));
      CHECK(seen == fusion_events(c));
      for (std::size_t i = 0; i < seen.size(); ++i) {
        CHECK(seen[i].removed_generator % p == 0);
        CHECK(oracle::is_rough(seen[i].removed_generator / p, c.stage_prime()));
        if (i > 0) CHECK(seen[i].removed_generator - seen[i - 1].removed_generator >= 2 * p);
      }
      CHECK(seen.front().left_index == 1);  // first fusion joins g1 and g2
      c = next;
    }
  }
}

TEST_CASE("streamed gaps equal the materialized chain") {
  {
    GapStream s = stream_gaps(5, 3);
    CHECK(drain(s) == std::vector<std::uint64_t>{6, 4, 2, 4, 2, 4, 6, 2});
  }
  {
    GapStream s = stream_gaps(13, 5);
    std::uint64_t n = 0, sum = 0;
    for (Gap g : s) {
      ++n;
      sum += g;
    }
    CHECK(n == 5760);
    CHECK(sum == 30030);
  }
  for (std::uint64_t p0 : {3, 7, 13}) {
    GapStream s = stream_gaps(19, p0);
    CHECK(drain(s) == widen(build_cycle(19, 13)));
  }
}

TEST_CASE("cycle front matches sieved primes up to 101") {
  const SegmentedSieve sieve;
  for (std::uint64_t p : primes_in_range(3, 101)) {
    GapStream s = stream_gaps(p, std::min<std::uint64_t>(p, 13));
    std::vector<std::uint64_t> front;
    std::uint64_t gen = 1;
    Gap g = 0;
    while (gen < p * p && s.next(g)) {
      gen += g;
      if (gen > p && gen < p * p) front.push_back(gen);
    }
    CHECK_MESSAGE(front == sieve.primes(p + 1, p * p - 1), "p = " << p);
  }
}

TEST_CASE("verify_cycle reports a perturbed cycle") {
  std::vector<Gap> gaps{6, 4, 2, 4, 2, 4, 6, 2};
  gaps[3] = 6;
  const CycleReport r = verify_cycle(GapCycle(5, gaps));
  CHECK_FALSE(r.find("span")->passed);
  CHECK(r.find("length")->passed);
  CHECK_FALSE(r.all_passed());
  CHECK(verify_cycle(initial_cycle(5)).all_passed());
}

TEST_CASE("materialization budget") {
  const GapCycle c = initial_cycle(13);
  CHECK(next_cycle_bytes(c) == BigInt(5760) * 16 * 2);
  CHECK_THROWS_AS(next_cycle(c, 1000), BoundError);
  CHECK_NOTHROW(next_cycle(c, 184320));
}

TEST_CASE("binary and CSV export") {
  const GapCycle c = build_cycle(11, 5);
  std::stringstream bin;
  write_cycle_binary(bin, c);
  CHECK(bin.str().substr(0, 4) == "GCYC");
  CHECK(read_cycle_binary(bin) == c);

  std::stringstream streamed;
  GapStream s = stream_gaps(11, 5);
  write_cycle_binary(streamed, s);
  CHECK(streamed.str() == [&] {
    std::stringstream again;
    write_cycle_binary(again, c);
    return again.str();
  }());

  std::ostringstream csv;
  write_cycle_csv(csv, initial_cycle(5));
  CHECK(csv.str() == "6\n4\n2\n4\n2\n4\n6\n2\n");

  std::stringstream bad("GCYX");
  CHECK_THROWS_AS(read_cycle_binary(bad), ValidationError);
}
