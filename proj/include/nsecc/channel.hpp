#pragma once

#include <nsecc/bitstring.hpp>

#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace nsecc {

struct ChannelSpec {
  std::uint64_t seed = 0;
  std::size_t weight = 0;  // number of symbol positions to disturb
};

namespace detail {

// Unbiased draw from [0, n) via rejection; std::uniform_int_distribution is
// not pinned down by the standard, and reproducibility across platforms
// matters more than elegance here.
inline std::uint64_t bounded_draw(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t reject_below = (0 - n) % n;
  for (;;) {
    const std::uint64_t v = gen();
    if (v >= reject_below) return v % n;
  }
}

}  // namespace detail

// Disturbs exactly `weight` distinct positions.  Binary symbols are XOR
// flipped, so applying the same spec twice restores the word; wider symbols
// get a uniformly random different value.
inline BitString corrupt(const BitString& word, const ChannelSpec& spec) {
  if (spec.weight > word.size())
    throw std::invalid_argument("corrupt: weight exceeds codeword length");
  std::mt19937_64 gen(spec.seed);

  // Partial Fisher-Yates: the first `weight` entries are the chosen
  // positions, distinct by construction.
  std::vector<std::uint32_t> idx(word.size());
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::size_t j = 0; j < spec.weight; ++j) {
    const std::size_t swap_at =
        j + static_cast<std::size_t>(detail::bounded_draw(gen, word.size() - j));
    std::swap(idx[j], idx[swap_at]);
  }

  BitString out = word;
  const unsigned base = word.base();
  for (std::size_t j = 0; j < spec.weight; ++j) {
    const std::size_t pos = idx[j];
    if (base == 2) {
      out.set_digit(pos, out.digit(pos) ^ 1u);
    } else {
      const unsigned delta = 1 + static_cast<unsigned>(detail::bounded_draw(gen, base - 1));
      out.set_digit(pos, static_cast<std::uint8_t>((out.digit(pos) + delta) % base));
    }
  }
  return out;
}

// Deterministic disturbance of the given 1-based positions: XOR for binary,
// +1 mod base otherwise.  Used by replay paths and tests.
inline BitString flip_positions(const BitString& word, const std::set<std::size_t>& positions) {
  BitString out = word;
  for (std::size_t pos : positions) {
    if (pos == 0 || pos > word.size())
      throw std::out_of_range("flip_positions: position " + std::to_string(pos));
    const std::size_t i = pos - 1;
    if (word.base() == 2)
      out.set_digit(i, out.digit(i) ^ 1u);
    else
      out.set_digit(i, static_cast<std::uint8_t>((out.digit(i) + 1) % word.base()));
  }
  return out;
}

}  // namespace nsecc
