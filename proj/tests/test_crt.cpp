#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "sievedyn/crt.hpp"
#include "sievedyn/errors.hpp"
#include "sievedyn/primes.hpp"

using namespace sievedyn;

TEST_CASE("primorial coordinates of the progression examples") {
  const auto a = to_primorial_coordinates(BigInt("11410337850553"), 19, 41);
  CHECK(a.base == 822463);
  CHECK(a.digits == std::vector<std::uint64_t>{3, 19, 27, 19, 1});
  CHECK(a.to_string() == "822463 + 3*19# + 19*23# + 27*29# + 19*31# + 1*37#");
  CHECK(a.value() == BigInt("11410337850553"));

  const auto b = to_primorial_coordinates(BigInt("56211383760397"), 19, 41);
  CHECK(b.to_string() == "2164027 + 1*19# + 12*23# + 8*29# + 21*31# + 7*37#");
  CHECK(b.value() == BigInt("56211383760397"));
}

TEST_CASE("coordinates below the base period and out of range") {
  const auto c = to_primorial_coordinates(BigInt(1234), 7, 13);
  CHECK(c.base == 184);
  CHECK(c.digits == std::vector<std::uint64_t>{5, 0});
  CHECK(c.to_string() == "184 + 5*7#");
  const auto small = to_primorial_coordinates(BigInt(199), 7, 13);
  CHECK(small.base == 199);
  CHECK(small.digits == std::vector<std::uint64_t>{0, 0});
  CHECK(small.to_string() == "199");
  CHECK_THROWS_AS(to_primorial_coordinates(primorial(13), 7, 13), ValidationError);
  CHECK_THROWS_AS(to_primorial_coordinates(BigInt(-1), 7, 13), ValidationError);
  CHECK_THROWS_AS(to_primorial_coordinates(BigInt(5), 13, 7), ValidationError);
}

TEST_CASE("mixed-radix round trip") {
  std::mt19937_64 rng(20261015);
  const BigInt top = primorial(41);
  for (int i = 0; i < 10000; ++i) {
    BigInt v = (BigInt(rng()) << 64 | BigInt(rng())) % top;
    const auto c = to_primorial_coordinates(v, 19, 41);
    REQUIRE(c.value() == v);
    for (std::size_t k = 0; k < c.digits.size(); ++k) CHECK(c.digits[k] < c.ladder[k + 1]);
    CHECK(c.base < primorial(19));
  }
}

TEST_CASE("verify_instance") {
  const Constellation twin({2});
  CHECK(verify_instance(twin, BigInt(11), 5));
  CHECK_FALSE(verify_instance(twin, BigInt(23), 5));
  CHECK_FALSE(verify_instance(twin, BigInt(11), 13));  // 13 divides 13
}

TEST_CASE("instances from residue choices") {
  const Constellation twin({2});
  CHECK(instance_from_residues(twin, BigInt(11), 5, {{7, 1}}) == 71);
  CHECK(verify_instance(twin, BigInt(71), 7));

  try {
    instance_from_residues(twin, BigInt(11), 5, {{7, 5}});  // 5 + 2 = 0 mod 7
    FAIL("expected a rejected residue");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("prime 7") != std::string::npos);
  }
  CHECK_THROWS_AS(instance_from_residues(twin, BigInt(23), 5, {{7, 1}}), ValidationError);
  CHECK_THROWS_AS(instance_from_residues(twin, BigInt(11), 5, {{11, 1}}), ValidationError);

  // Every admissible choice yields a verified instance with the chosen residues.
  const Constellation s = Constellation::parse("2,10,2,10,2");
  for (std::uint64_t r7 : upsilon(s, 7)) {
    for (std::uint64_t r11 : upsilon(s, 11)) {
      const BigInt g = instance_from_residues(s, BigInt(17), 5, {{7, r7}, {11, r11}});
      CHECK(g < primorial(11));
      CHECK(g % 30 == 17);
      CHECK(g % 7 == r7);
      CHECK(g % 11 == r11);
      CHECK(verify_instance(s, g, 11));
    }
  }
}

TEST_CASE("replication images") {
  const Constellation twin({2});
  const auto images = images_under_replication(twin, BigInt(11), 5, 7);
  REQUIRE(images.size() == 7);
  std::set<std::uint64_t> residues;
  std::size_t survivors = 0;
  for (const auto& img : images) {
    residues.insert(img.residue);
    survivors += img.survives;
    CHECK(img.gamma == 11 + 30 * img.m);
  }
  CHECK(residues.size() == 7);
  CHECK(survivors == 5);
  // Survivors are exactly the twin positions of G(7#) congruent to 11 mod 30.
  std::set<std::uint64_t> expected;
  for (std::uint64_t g : oracle::instances({2}, 7)) {
    if (g % 30 == 11) expected.insert(g);
  }
  std::set<std::uint64_t> got;
  for (const auto& img : images) {
    if (img.survives) got.insert(img.gamma.convert_to<std::uint64_t>());
  }
  CHECK(got == expected);

  const Constellation s = Constellation::parse("2,10,2,10,2");
  for (std::uint64_t p : {11, 13, 17, 19, 23}) {
    const auto imgs = images_under_replication(s, BigInt(17), prime_at_most(p - 1), p);
    std::size_t live = 0;
    for (const auto& img : imgs) live += img.survives;
    CHECK(live == p - nu(s, p));
  }
}

TEST_CASE("enumeration is a bijection with the scanned instances") {
  for (const char* text : {"2", "6", "2,4", "2,4,2", "6,6,6", "2,10,2", "2,10,2,10,2"}) {
    const Constellation s = Constellation::parse(text);
    const std::vector<std::uint64_t> gaps(s.gaps().begin(), s.gaps().end());
    for (std::uint64_t p0 : {3, 5, 7}) {
      for (std::uint64_t pk : {7, 11, 13}) {
        if (pk < p0) continue;
        InstanceEnumerator e(s, p0, pk);
        CHECK(e.count() == admissible_instance_count(s, pk));
        std::vector<std::uint64_t> got;
        while (auto g = e.next()) got.push_back(g->convert_to<std::uint64_t>());
        CHECK(BigInt(got.size()) == e.count());
        std::sort(got.begin(), got.end());
        CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
        CHECK_MESSAGE(got == oracle::instances(gaps, pk), text << " " << p0 << ".." << pk);
      }
    }
  }
  InstanceEnumerator e(Constellation::parse("2,10,2,10,2"), 5, 7);
  CHECK(e.count() == 3);
}
