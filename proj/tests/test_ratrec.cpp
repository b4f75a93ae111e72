#include <nsecc/primes.hpp>
#include <nsecc/ratrec.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace nsecc;

TEST_CASE("reconstruct recovers the worked quotient") {
  // s = 632842 mod 707293 under symmetric bounds 840: the bounds violate
  // 2AB < p, so the result must carry the relaxed flag.
  auto rec = reconstruct(632842, 707293, {840, 840});
  REQUIRE(rec);
  CHECK(rec->value.numerator == 17);
  CHECK(rec->value.denominator == 19);
  CHECK_FALSE(rec->value.negative);
  CHECK(rec->relaxed);
  CHECK(rec->steps <= 40);

  auto oracle = oracle_reconstruct(632842, 707293, {840, 840});
  REQUIRE(oracle);
  CHECK(*oracle == rec->value);
}

TEST_CASE("reconstruct small fixed instances") {
  SECTION("positive fraction") {
    auto rec = reconstruct(87, 101, {7, 7});
    REQUIRE(rec);
    CHECK(rec->value == Fraction{3, 7, false});
    CHECK_FALSE(rec->relaxed);  // 2*7*7 = 98 < 101
    auto oracle = oracle_reconstruct(87, 101, {7, 7});
    REQUIRE(oracle);
    CHECK(*oracle == rec->value);
  }
  SECTION("negative fraction") {
    // s = -3/7 mod 101
    const Natural s = ((101 - 3) * mod_inverse(7, 101)) % 101;
    CHECK(s == 14);
    auto rec = reconstruct(s, 101, {7, 7});
    REQUIRE(rec);
    CHECK(rec->value == Fraction{3, 7, true});
    auto oracle = oracle_reconstruct(s, 101, {7, 7});
    REQUIRE(oracle);
    CHECK(*oracle == rec->value);
  }
  SECTION("edge residues") {
    auto zero = reconstruct(0, 101, {5, 5});
    REQUIRE(zero);
    CHECK(zero->value == Fraction{0, 1, false});
    auto one = reconstruct(1, 101, {5, 5});
    REQUIRE(one);
    CHECK(one->value == Fraction{1, 1, false});
    auto minus_one = reconstruct(100, 101, {5, 5});
    REQUIRE(minus_one);
    CHECK(minus_one->value == Fraction{1, 1, true});
  }
}

TEST_CASE("reconstruct returns nothing when no candidate fits") {
  auto rec = reconstruct(87, 101, {2, 2});
  CHECK_FALSE(rec.has_value());
  auto oracle = oracle_reconstruct(87, 101, {2, 2});
  CHECK_FALSE(oracle.has_value());
}

TEST_CASE("reconstruct validates input") {
  CHECK_THROWS_AS(reconstruct(101, 101, {5, 5}), std::invalid_argument);
  CHECK_THROWS_AS(reconstruct(5, 1, {5, 5}), std::invalid_argument);
  CHECK_THROWS_AS(reconstruct(5, 101, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(reconstruct(5, 101, {5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(oracle_reconstruct(5, 101, {5, 2'000'000}), std::invalid_argument);
}

TEST_CASE("reconstruct equals oracle on planted instances") {
  std::mt19937_64 gen(0x5eed);
  int negatives = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    // Random prime below 2^20, planted fraction with 2AB < p.
    const Natural lo = 1000 + gen() % (1u << 20);
    const Natural p = next_prime_above(lo, 4 * lo);
    const Natural A = 1 + Natural(gen()) % 500;
    const Natural max_b = (p - 1) / (2 * A) < 500 ? (p - 1) / (2 * A) : Natural(500);
    if (max_b < 1) continue;
    const Natural B = 1 + Natural(gen()) % max_b;
    REQUIRE(2 * A * B < p);

    Natural a, b;
    do {
      a = 1 + Natural(gen()) % A;
      b = 1 + Natural(gen()) % B;
    } while (boost::multiprecision::gcd(a, b) != 1);
    const bool negative = (gen() & 1) != 0;

    Natural s = (a * mod_inverse(b, p)) % p;
    if (negative) s = p - s;
    if (negative) ++negatives;

    auto rec = reconstruct(s, p, {A, B});
    REQUIRE(rec);
    CHECK_FALSE(rec->relaxed);
    CHECK(rec->value == Fraction{a, b, negative});
    CHECK(rec->steps <= 2 * bit_length(p));
    CHECK(boost::multiprecision::gcd(rec->value.numerator, rec->value.denominator) == 1);

    auto oracle = oracle_reconstruct(s, p, {A, B});
    REQUIRE(oracle);
    CHECK(*oracle == rec->value);
  }
  CHECK(negatives > 300);  // both signs genuinely exercised
}

TEST_CASE("relaxed flag reflects the bound product") {
  auto tight = reconstruct(87, 101, {7, 7});
  REQUIRE(tight);
  CHECK_FALSE(tight->relaxed);
  auto loose = reconstruct(87, 101, {10, 10});
  REQUIRE(loose);
  CHECK(loose->relaxed);  // 200 >= 101
}
