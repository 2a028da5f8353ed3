#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "sievedyn/constellation.hpp"
#include "sievedyn/errors.hpp"
#include "sievedyn/primes.hpp"

using namespace sievedyn;

namespace {

const Constellation kRunning = Constellation::parse("2,10,2,10,2");

std::vector<std::uint64_t> as_vec(const Constellation& s) { return {s.gaps().begin(), s.gaps().end()}; }

// Admissible constellations with J <= 5 and |s| <= 26.
std::vector<Constellation> battery() {
  std::vector<Constellation> out;
  for (const char* text : {"2", "4", "6", "2,4", "4,2", "6,6", "2,4,2", "4,2,4", "2,6,4", "6,6,6",
                           "2,4,6,2", "2,10,2", "4,2,4,2,4", "2,10,2,10,2", "6,12,6", "12,12"}) {
    out.push_back(Constellation::parse(text));
  }
  return out;
}

}  // namespace

TEST_CASE("parse and text form") {
  CHECK(kRunning.length() == 5);
  CHECK(kRunning.span() == 26);
  CHECK(kRunning.to_string() == "2,10,2,10,2");
  CHECK(kRunning.offsets() == std::vector<std::uint64_t>{0, 2, 12, 14, 24, 26});
  CHECK(Constellation::parse(" 6, 6 ,6").to_string() == "6,6,6");
  CHECK_THROWS_AS(Constellation::parse("2,,4"), ValidationError);
  CHECK_THROWS_AS(Constellation::parse("3"), ValidationError);
  CHECK_THROWS_AS(Constellation::parse("0"), ValidationError);
  CHECK_THROWS_AS(Constellation::parse(""), ValidationError);
  CHECK_THROWS_AS(Constellation::parse("2,x"), ValidationError);
}

TEST_CASE("nu and upsilon for the running example") {
  const std::vector<std::pair<std::uint64_t, unsigned>> nus{{5, 4}, {7, 4}, {11, 5}, {13, 5}, {17, 6}};
  for (auto [p, n] : nus) CHECK(nu(kRunning, p) == n);
  CHECK(upsilon(kRunning, 5) == std::vector<std::uint64_t>{2});
  CHECK(upsilon(kRunning, 7) == std::vector<std::uint64_t>{1, 3, 6});
  const Constellation twin({2});
  CHECK(nu(twin, 3) == 2);
  CHECK(upsilon(twin, 3) == std::vector<std::uint64_t>{2});  // twins start at 2 mod 3: 5, 11, 17, ...
}

TEST_CASE("upsilon agrees with brute force and has p - nu members") {
  for (const auto& s : battery()) {
    for (std::uint64_t p : primes_in_range(2, 31)) {
      const auto u = upsilon(s, p);
      CHECK(u.size() == p - nu(s, p));
      CHECK(nu(s, p) == oracle::covered(as_vec(s), p));
      for (std::uint64_t r = 0; r < p; ++r) {
        bool ok = true;
        for (auto o : s.offsets()) ok = ok && (r + o) % p != 0;
        CHECK(ok == std::binary_search(u.begin(), u.end(), r));
      }
    }
  }
}

TEST_CASE("admissibility") {
  CHECK(is_admissible(kRunning));
  CHECK_FALSE(is_admissible(Constellation({2, 2})));
  CHECK(is_admissible(Constellation({6, 6, 6})));
  CHECK_FALSE(is_admissible(Constellation({2, 2, 2})));
  CHECK_FALSE(is_admissible(Constellation({2, 4, 2, 4, 2})));  // covers 0..4 mod 5
  CHECK(is_admissible_for(kRunning, 5));
  for (const auto& s : battery()) CHECK(is_admissible(s) == oracle::admissible(as_vec(s)));
}

TEST_CASE("Q(s) and the residue-coverage lemma") {
  CHECK(q_of(kRunning) == 15015);
  CHECK(q_of(Constellation({2})) == 1);
  CHECK(q_of(Constellation({6})) == 3);
  for (const auto& s : battery()) {
    const auto qs = q_primes(s);
    const std::size_t J = s.length();
    for (std::uint64_t p : primes_in_range(3, 61)) {
      const bool divides = std::binary_search(qs.begin(), qs.end(), p);
      if (p > J + 1) CHECK((nu(s, p) < J + 1) == divides);
      if (p <= J + 1) CHECK(divides);
    }
  }
}

TEST_CASE("admissible instance count") {
  CHECK(admissible_instance_count(kRunning, 17) == 1 * 1 * 1 * 3 * 6 * 8 * 11);
  CHECK(admissible_instance_count(Constellation({2}), 7) == 15);
}

TEST_CASE("driving terms") {
  SUBCASE("running example contains the printed terms") {
    const auto terms = driving_terms(kRunning);
    std::set<std::string> names;
    for (const auto& t : terms) names.insert(t.term.to_string());
    CHECK(names.count("2,4,6,2,10,2"));
    CHECK(names.count("2,4,6,2,6,4,2"));
    CHECK(names.count("2,10,2,10,2"));
    CHECK(names.size() == 4);
    // 2,4,6,2,4,6,2 also collapses to s but covers every residue mod 5.
    CHECK(is_driving_term(Constellation::parse("2,4,6,2,4,6,2"), kRunning));
    CHECK_FALSE(is_admissible(Constellation::parse("2,4,6,2,4,6,2")));
    for (const auto& t : terms) {
      CHECK(is_driving_term(t.term, kRunning));
      CHECK(t.boundary_positions.size() == kRunning.length() + 1);
      CHECK(t.interior_positions.size() == t.length() - kRunning.length());
    }
    CHECK(longest_driving_term(kRunning) == 7);
  }
  SUBCASE("small cases") {
    std::set<std::string> six;
    for (const auto& t : driving_terms(Constellation({6}))) six.insert(t.term.to_string());
    CHECK(six == std::set<std::string>{"6", "2,4", "4,2"});
    const auto two = driving_terms(Constellation({2}));
    REQUIRE(two.size() == 1);
    CHECK(two[0].term.to_string() == "2");
    CHECK(driving_terms(Constellation({6}), false).size() == 2);
  }
  SUBCASE("enumeration equals the unpruned oracle") {
    for (const auto& s : battery()) {
      std::set<std::vector<std::uint64_t>> expected;
      for (const auto& r : oracle::refinements(as_vec(s))) {
        if (oracle::admissible(r)) expected.insert(r);
      }
      std::set<std::vector<std::uint64_t>> got;
      for (const auto& t : driving_terms(s)) got.insert(as_vec(t.term));
      CHECK_MESSAGE(got == expected, s.to_string());
    }
  }
  SUBCASE("composition cap") {
    CHECK_THROWS_AS(driving_terms(Constellation({30, 30, 30})), BoundError);
  }
}

TEST_CASE("is_driving_term") {
  CHECK(is_driving_term(Constellation::parse("2,4,6,2,10,2"), kRunning));
  CHECK(is_driving_term(kRunning, kRunning));
  CHECK_FALSE(is_driving_term(Constellation::parse("4,2,6,2,10,2"), kRunning));
  CHECK_FALSE(is_driving_term(Constellation::parse("2,10,2,10"), kRunning));
  CHECK_THROWS_AS(label_driving_term(Constellation::parse("4,2,6,2,10,2"), kRunning),
                  ValidationError);
}

TEST_CASE("interior fusions keep a driving term, boundary fusions destroy it") {
  for (const auto& t : driving_terms(kRunning)) {
    for (std::size_t pos : t.interior_positions) {
      CHECK(is_driving_term(fuse_at(t.term, pos), kRunning));
    }
    for (std::size_t pos : t.boundary_positions) {
      if (pos == 0 || pos == t.length()) continue;  // endpoints are not inner generators
      CHECK_FALSE(is_driving_term(fuse_at(t.term, pos), kRunning));
    }
  }
  CHECK_THROWS_AS(fuse_at(kRunning, 0), ValidationError);
  CHECK_THROWS_AS(fuse_at(kRunning, 5), ValidationError);
}
