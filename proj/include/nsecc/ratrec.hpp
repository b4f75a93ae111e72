#pragma once

#include <nsecc/bignum.hpp>

#include <cstdint>
#include <optional>

namespace nsecc {

struct Bounds {
  Natural numerator_bound;    // admissible |numerator| range [0, A]
  Natural denominator_bound;  // admissible denominator range [1, B]
};

// Reduced fraction with an explicit sign on the numerator.
struct Fraction {
  Natural numerator;
  Natural denominator;
  bool negative = false;

  bool operator==(const Fraction&) const = default;
};

struct Reconstruction {
  Fraction value;
  bool relaxed = false;  // bounds did not satisfy 2AB < p; result may be ambiguous
  unsigned steps = 0;    // Euclidean iterations taken
};

// Rational reconstruction: given s in [0, p) and bounds (A, B), finds a
// fraction a/b with s*b == +-a (mod p), |a| <= A, 1 <= b <= B.  When
// 2AB < p the answer is unique; otherwise the first Euclidean candidate is
// returned and flagged `relaxed`.
//
// The search runs the extended Euclidean descent on (p, s), tracking only
// the cofactor of s, and stops at the first remainder <= A.  The candidate
// is the row (r_i, v_i): numerator r_i, denominator |v_i|, sign that of v_i.
inline std::optional<Reconstruction> reconstruct(const Natural& s, const Natural& p,
                                                 const Bounds& bounds) {
  if (p < 2) throw std::invalid_argument("reconstruct: modulus must be >= 2");
  if (s < 0 || s >= p) throw std::invalid_argument("reconstruct: s outside [0, p)");
  if (bounds.numerator_bound < 1 || bounds.denominator_bound < 1)
    throw std::invalid_argument("reconstruct: bounds must be >= 1");

  const bool relaxed = !(2 * bounds.numerator_bound * bounds.denominator_bound < p);

  Natural r0 = p, r1 = s;
  Natural v0 = 0, v1 = 1;
  unsigned steps = 0;
  while (r1 > bounds.numerator_bound) {
    Natural q = r0 / r1;
    Natural r2 = r0 - q * r1;
    Natural v2 = v0 - q * v1;
    r0 = r1;
    r1 = r2;
    v0 = v1;
    v1 = v2;
    ++steps;
  }

  Natural den = v1 < 0 ? Natural(-v1) : v1;
  if (den.is_zero() || den > bounds.denominator_bound) return std::nullopt;
  if (boost::multiprecision::gcd(r1, den) != 1) return std::nullopt;  // unreachable for prime p
  return Reconstruction{Fraction{r1, den, v1 < 0}, relaxed, steps};
}

// Brute-force reference: scans denominators 1..B and checks the centered
// residue of s*b against A.  Only usable for small B; the cap keeps tests
// from accidentally exploding.
inline std::optional<Fraction> oracle_reconstruct(const Natural& s, const Natural& p,
                                                  const Bounds& bounds) {
  if (p < 2) throw std::invalid_argument("oracle_reconstruct: modulus must be >= 2");
  if (s < 0 || s >= p) throw std::invalid_argument("oracle_reconstruct: s outside [0, p)");
  if (bounds.numerator_bound < 1 || bounds.denominator_bound < 1)
    throw std::invalid_argument("oracle_reconstruct: bounds must be >= 1");
  if (bounds.denominator_bound > 1'000'000)
    throw std::invalid_argument("oracle_reconstruct: denominator bound above 10^6");

  const std::uint64_t limit = static_cast<std::uint64_t>(bounds.denominator_bound);
  Natural acc = 0;  // s*b mod p, maintained incrementally
  for (std::uint64_t b = 1; b <= limit; ++b) {
    acc += s;
    if (acc >= p) acc -= p;
    if (acc <= bounds.numerator_bound) return Fraction{acc, b, false};
    Natural neg = p - acc;
    if (neg <= bounds.numerator_bound) return Fraction{neg, b, true};
  }
  return std::nullopt;
}

}  // namespace nsecc
