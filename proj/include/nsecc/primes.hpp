#pragma once

#include <nsecc/bignum.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace nsecc {

struct ResourceLimitError : Error {
  using Error::Error;
};

struct NoPrimeInWindow : Error {
  using Error::Error;
};

struct NotInvertible : Error {
  using Error::Error;
};

// Table of the first `count` primes, 1-indexed: prime(1) == 2.
class PrimeTable {
 public:
  static constexpr std::size_t default_ceiling = 4'000'000;

  std::size_t count() const { return primes_.size(); }

  std::uint64_t prime(std::size_t i) const {
    if (i == 0 || i > primes_.size())
      throw std::out_of_range("PrimeTable::prime: index " + std::to_string(i) +
                              " outside [1, " + std::to_string(primes_.size()) + "]");
    return primes_[i - 1];
  }

  std::uint64_t largest() const { return primes_.back(); }

 private:
  friend PrimeTable build_prime_table(std::size_t, std::size_t);
  std::vector<std::uint32_t> primes_;  // p_{4e6} < 2^32, so 32-bit storage suffices
};

// Rosser-style upper bound on the n-th prime, valid for n >= 6; small n
// are covered by the constant.
inline std::size_t nth_prime_upper(std::size_t n) {
  if (n < 6) return 13;
  double ln = std::log(static_cast<double>(n));
  return static_cast<std::size_t>(static_cast<double>(n) * (ln + std::log(ln))) + 2;
}

inline PrimeTable build_prime_table(std::size_t count,
                                    std::size_t ceiling = PrimeTable::default_ceiling) {
  if (count == 0) throw std::invalid_argument("build_prime_table: count must be positive");
  if (count > ceiling)
    throw ResourceLimitError("build_prime_table: requested " + std::to_string(count) +
                             " primes, ceiling is " + std::to_string(ceiling));

  const std::size_t limit = nth_prime_upper(count);

  // Base primes up to sqrt(limit) by a plain sieve, then a segmented sweep.
  const std::size_t root = static_cast<std::size_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<bool> small(root + 1, true);
  small[0] = small[1] = false;
  for (std::size_t i = 2; i * i <= root; ++i)
    if (small[i])
      for (std::size_t j = i * i; j <= root; j += i) small[j] = false;
  std::vector<std::uint32_t> base;
  for (std::size_t i = 2; i <= root; ++i)
    if (small[i]) base.push_back(static_cast<std::uint32_t>(i));

  PrimeTable table;
  table.primes_.reserve(count);

  constexpr std::size_t segment = 1u << 20;
  std::vector<bool> sieve;
  for (std::size_t low = 2; low <= limit && table.primes_.size() < count; low += segment) {
    const std::size_t high = std::min(low + segment - 1, limit);
    sieve.assign(high - low + 1, true);
    for (std::uint32_t q : base) {
      std::size_t start = std::max<std::size_t>(static_cast<std::size_t>(q) * q,
                                                ((low + q - 1) / q) * q);
      for (std::size_t j = start; j <= high; j += q) sieve[j - low] = false;
    }
    for (std::size_t v = low; v <= high && table.primes_.size() < count; ++v)
      if (sieve[v - low]) table.primes_.push_back(static_cast<std::uint32_t>(v));
  }

  if (table.primes_.size() < count)
    throw Error("build_prime_table: sieve bound too small (internal)");
  return table;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

// One Miller-Rabin round; n-1 == d * 2^s with d odd.
inline bool mr_witness_u64(std::uint64_t n, std::uint64_t d, int s, std::uint64_t a) {
  std::uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for the full 64-bit range.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (mr_witness_u64(n, d, s, a)) return false;
  return true;
}

inline bool mr_witness_nat(const Natural& n, const Natural& d, std::size_t s, const Natural& a) {
  Natural x = boost::multiprecision::powm(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (std::size_t i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;
}

// Derives a reproducible RNG seed from n so is_prime stays a pure function.
inline std::uint64_t fold_seed(const Natural& n) {
  Natural low = n & Natural(~0ull);
  return static_cast<std::uint64_t>(low) ^ (static_cast<std::uint64_t>(bit_length(n)) * 0x9e3779b97f4a7c15ull);
}

}  // namespace detail

inline bool is_prime(const Natural& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max())
    return detail::is_prime_u64(static_cast<std::uint64_t>(n));

  // Quick trial division before the expensive rounds.
  static const std::uint32_t kTiny[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                        41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (std::uint32_t q : kTiny)
    if (n % q == 0) return false;

  Natural d = n - 1;
  std::size_t s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }

  // 64 independent rounds: error probability at most 4^-64.  Bases come
  // from an RNG seeded deterministically from n, so results are stable
  // across runs and platforms.
  std::mt19937_64 gen(detail::fold_seed(n));
  const std::size_t words = (bit_length(n) + 63) / 64;
  const Natural span = n - 3;
  for (int round = 0; round < 64; ++round) {
    Natural acc = 0;
    for (std::size_t w = 0; w < words; ++w) acc = (acc << 64) | Natural(gen());
    Natural a = (acc % span) + 2;  // uniform enough over [2, n-2]
    if (detail::mr_witness_nat(n, d, s, a)) return false;
  }
  return true;
}

// Smallest prime q with lo < q < hi; throws NoPrimeInWindow when the first
// prime above lo is not below hi.
inline Natural next_prime_above(const Natural& lo, const Natural& hi) {
  if (lo < 1) throw std::invalid_argument("next_prime_above: lo must be >= 1");
  if (hi <= lo) throw std::invalid_argument("next_prime_above: empty window");

  // Pre-filter candidates with a windowed sieve over the first few thousand
  // primes; survivors get the full primality test.
  static const PrimeTable filter = build_prime_table(2048);
  const std::uint64_t largest_filter = filter.largest();

  const std::size_t window = std::max<std::size_t>(1024, 8 * bit_length(lo));
  Natural base = lo + 1;
  std::vector<bool> composite;
  while (base < hi) {
    std::size_t size = window;
    if (Natural(base + size) > hi) size = static_cast<std::size_t>(hi - base);
    composite.assign(size, false);
    const bool tiny = base <= largest_filter;
    for (std::size_t fi = 1; fi <= filter.count(); ++fi) {
      const std::uint64_t q = filter.prime(fi);
      std::uint64_t r = static_cast<std::uint64_t>(base % q);
      std::size_t start = r == 0 ? 0 : static_cast<std::size_t>(q - r);
      for (std::size_t j = start; j < size; j += q) {
        if (tiny && base + j == q) continue;  // q itself is prime, skip marking
        composite[j] = true;
      }
    }
    for (std::size_t j = 0; j < size; ++j) {
      if (composite[j]) continue;
      Natural candidate = base + j;
      if (is_prime(candidate)) return candidate;
    }
    base += size;
  }
  throw NoPrimeInWindow("next_prime_above: no prime in (" + lo.str() + ", " + hi.str() + ")");
}

// Inverse of x modulo m, in [1, m).  Throws NotInvertible when gcd(x, m) != 1.
inline Natural mod_inverse(const Natural& x, const Natural& m) {
  if (m < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  Natural r = x % m;
  if (r < 0) r += m;
  EgcdResult e = egcd(r, m);
  if (e.g != 1)
    throw NotInvertible("mod_inverse: gcd(" + x.str() + ", " + m.str() + ") = " + e.g.str());
  Natural inv = e.x % m;
  if (inv < 0) inv += m;
  return inv;
}

}  // namespace nsecc
