#pragma once

#include <nsecc/bitstring.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace nsecc {

struct NoFittingCode : Error {
  using Error::Error;
};

// Binary Reed-Muller code of order r in N variables: length n = 2^N,
// dimension k = sum_{i<=r} C(N, i), corrects t = 2^(N-r-1) - 1 errors.
//
// Message coordinates are monomial coefficients, ordered by ascending
// degree and lexicographically within a degree, the constant monomial
// first.  Variable x_j selects bit (N - j) of the position index, so x_1
// reads the most significant index bit.
struct RMParams {
  unsigned N = 0;
  unsigned r = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t t = 0;
  std::vector<std::uint32_t> masks;        // per-message-coordinate variable sets
  std::vector<std::size_t> layer_begin;    // masks index of first degree-d monomial, d = 0..r+1
};

inline RMParams rm_params(unsigned N, unsigned r) {
  if (N < 3 || N > 17) throw std::invalid_argument("rm_params: N outside [3, 17]");
  if (r < 1 || r + 2 > N) throw std::invalid_argument("rm_params: r outside [1, N-2]");

  RMParams out;
  out.N = N;
  out.r = r;
  out.n = std::size_t{1} << N;
  out.t = (std::size_t{1} << (N - r - 1)) - 1;

  out.layer_begin.push_back(0);
  out.masks.push_back(0);  // constant monomial
  std::vector<unsigned> vars;
  for (unsigned d = 1; d <= r; ++d) {
    out.layer_begin.push_back(out.masks.size());
    vars.resize(d);
    for (unsigned i = 0; i < d; ++i) vars[i] = i + 1;
    for (;;) {
      std::uint32_t mask = 0;
      for (unsigned v : vars) mask |= std::uint32_t{1} << (N - v);
      out.masks.push_back(mask);
      // next d-combination of {1..N} in lexicographic order
      int i = static_cast<int>(d) - 1;
      while (i >= 0 && vars[i] == N - (d - 1 - static_cast<unsigned>(i))) --i;
      if (i < 0) break;
      ++vars[i];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < d; ++j) vars[j] = vars[j - 1] + 1;
    }
  }
  out.layer_begin.push_back(out.masks.size());
  out.k = out.masks.size();
  return out;
}

namespace detail {

// XORs the indicator of {x : x includes mask} into the buffer.
inline void xor_monomial(std::vector<std::uint8_t>& buf, std::uint32_t mask, std::uint32_t full) {
  const std::uint32_t comp = full & ~mask;
  std::uint32_t y = comp;
  for (;;) {
    buf[mask | y] ^= 1;
    if (y == 0) break;
    y = (y - 1) & comp;
  }
}

}  // namespace detail

inline BitString rm_encode(const RMParams& pr, const BitString& msg) {
  if (msg.base() != 2 || msg.size() != pr.k)
    throw std::invalid_argument("rm_encode: expected " + std::to_string(pr.k) + " message bits");
  std::vector<std::uint8_t> cw(pr.n, 0);
  const std::uint32_t full = static_cast<std::uint32_t>(pr.n - 1);
  for (std::size_t i = 0; i < pr.k; ++i)
    if (msg.digit(i)) detail::xor_monomial(cw, pr.masks[i], full);
  return BitString(2, std::move(cw));
}

// Reed majority-logic decoding.  Coefficients are recovered a degree layer
// at a time, from degree r down to 0; each coefficient is the strict
// majority over 2^(N-d) disjoint subcube parities of the residual word.
// A tied vote is a decoding failure (returns nullopt).  Symbols greater
// than 1 (possible when the word travelled through a wider-alphabet
// channel) are clamped to 1 first, which never increases the error weight.
inline std::optional<BitString> rm_decode(const RMParams& pr, const BitString& word) {
  if (word.size() != pr.n)
    throw std::invalid_argument("rm_decode: expected " + std::to_string(pr.n) + " symbols");
  std::vector<std::uint8_t> res(pr.n);
  for (std::size_t i = 0; i < pr.n; ++i) res[i] = word.digit(i) ? 1 : 0;

  const std::uint32_t full = static_cast<std::uint32_t>(pr.n - 1);
  std::vector<std::uint8_t> msg(pr.k, 0);
  for (int d = static_cast<int>(pr.r); d >= 0; --d) {
    const std::size_t begin = pr.layer_begin[static_cast<std::size_t>(d)];
    const std::size_t end = pr.layer_begin[static_cast<std::size_t>(d) + 1];
    for (std::size_t mi = begin; mi < end; ++mi) {
      const std::uint32_t mask = pr.masks[mi];
      const std::uint32_t comp = full & ~mask;
      std::size_t ones = 0, votes = 0;
      std::uint32_t y = comp;
      for (;;) {
        unsigned parity = 0;
        std::uint32_t z = mask;
        for (;;) {
          parity ^= res[y | z];
          if (z == 0) break;
          z = (z - 1) & mask;
        }
        ones += parity;
        ++votes;
        if (y == 0) break;
        y = (y - 1) & comp;
      }
      if (2 * ones == votes) return std::nullopt;
      msg[mi] = 2 * ones > votes ? 1 : 0;
    }
    // Peel the decided layer off the residual before the next degree.
    for (std::size_t mi = begin; mi < end; ++mi)
      if (msg[mi]) detail::xor_monomial(res, pr.masks[mi], full);
  }
  return BitString(2, std::move(msg));
}

// Cheapest family member hosting `payload_bits` data bits with correction
// radius at least t.  Length 2^N grows with N, so the first feasible N is
// optimal; within it the largest feasible r gives the highest rate.
inline RMParams choose_inner_code(std::size_t payload_bits, std::size_t t) {
  if (payload_bits == 0) throw std::invalid_argument("choose_inner_code: empty payload");
  for (unsigned N = 3; N <= 17; ++N) {
    std::size_t k = 1;  // C(N, 0)
    std::uint64_t binom = 1;
    int best_r = -1;
    for (unsigned r = 1; r + 2 <= N; ++r) {
      binom = binom * (N - r + 1) / r;
      k += static_cast<std::size_t>(binom);
      const std::size_t tr = (std::size_t{1} << (N - r - 1)) - 1;
      if (k >= payload_bits && tr >= t) best_r = static_cast<int>(r);
    }
    if (best_r > 0) return rm_params(N, static_cast<unsigned>(best_r));
  }
  throw NoFittingCode("choose_inner_code: no code for " + std::to_string(payload_bits) +
                      " bits at radius " + std::to_string(t));
}

inline BitString rep_encode(const BitString& msg, unsigned copies) {
  if (copies % 2 == 0 || copies == 0)
    throw std::invalid_argument("rep_encode: copies must be odd");
  BitString out(msg.base());
  for (unsigned c = 0; c < copies; ++c) out.append(msg);
  return out;
}

inline BitString rep_decode(const BitString& word, unsigned copies) {
  if (copies % 2 == 0 || copies == 0)
    throw std::invalid_argument("rep_decode: copies must be odd");
  if (word.size() % copies != 0)
    throw std::invalid_argument("rep_decode: length not divisible by copy count");
  const std::size_t len = word.size() / copies;
  BitString out(2, len);
  for (std::size_t i = 0; i < len; ++i) {
    unsigned ones = 0;
    for (unsigned c = 0; c < copies; ++c)
      if (word.digit(c * len + i)) ++ones;
    out.set_digit(i, ones * 2 > copies ? 1 : 0);
  }
  return out;
}

}  // namespace nsecc
