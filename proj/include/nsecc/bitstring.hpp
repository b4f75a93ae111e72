#pragma once

#include <nsecc/bignum.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nsecc {

// Fixed-base digit string.  Digit 0 is the leftmost (most significant)
// position; reported positions are 1-based throughout the public API.
class BitString {
 public:
  BitString() = default;

  explicit BitString(unsigned base, std::size_t len = 0) : base_(base), digits_(len, 0) {
    check_base(base);
  }

  BitString(unsigned base, std::vector<std::uint8_t> digits)
      : base_(base), digits_(std::move(digits)) {
    check_base(base);
    for (std::uint8_t d : digits_)
      if (d >= base_) throw std::invalid_argument("BitString: digit out of range for base");
  }

  static BitString from_string(std::string_view text, unsigned base = 2) {
    BitString out(base);
    out.digits_.reserve(text.size());
    for (char ch : text) {
      if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') continue;
      if (ch < '0' || ch >= static_cast<char>('0' + base))
        throw std::invalid_argument(std::string("BitString::from_string: bad digit '") + ch + "'");
      out.digits_.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return out;
  }

  // Big-endian binary serialization of a value into exactly `width` bits.
  static BitString from_bits_of(const Natural& value, std::size_t width) {
    if (value < 0) throw std::invalid_argument("BitString::from_bits_of: negative value");
    if (bit_length(value) > width)
      throw std::invalid_argument("BitString::from_bits_of: value needs " +
                                  std::to_string(bit_length(value)) + " bits, width is " +
                                  std::to_string(width));
    BitString out(2, width);
    for (std::size_t i = 0; i < width; ++i)
      out.digits_[i] = boost::multiprecision::bit_test(value, static_cast<unsigned>(width - 1 - i)) ? 1 : 0;
    return out;
  }

  unsigned base() const { return base_; }
  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }

  std::uint8_t digit(std::size_t i) const { return digits_.at(i); }

  void set_digit(std::size_t i, std::uint8_t v) {
    if (v >= base_) throw std::invalid_argument("BitString::set_digit: digit out of range");
    digits_.at(i) = v;
  }

  void push_back(std::uint8_t v) {
    if (v >= base_) throw std::invalid_argument("BitString::push_back: digit out of range");
    digits_.push_back(v);
  }

  BitString slice(std::size_t pos, std::size_t len) const {
    if (pos + len > digits_.size()) throw std::out_of_range("BitString::slice");
    BitString out(base_);
    out.digits_.assign(digits_.begin() + pos, digits_.begin() + pos + len);
    return out;
  }

  // Appends digits of `other`; its base may be narrower (e.g. binary blocks
  // embedded in a wider-alphabet codeword).
  void append(const BitString& other) {
    if (other.base_ > base_)
      throw std::invalid_argument("BitString::append: base mismatch");
    digits_.insert(digits_.end(), other.digits_.begin(), other.digits_.end());
  }

  std::string to_string() const {
    std::string out;
    out.reserve(digits_.size());
    for (std::uint8_t d : digits_) out.push_back(static_cast<char>('0' + d));
    return out;
  }

  const std::vector<std::uint8_t>& digits() const { return digits_; }

  bool operator==(const BitString&) const = default;

 private:
  static void check_base(unsigned base) {
    if (base < 2 || base > 36)
      throw std::invalid_argument("BitString: base must be in [2, 36]");
  }

  unsigned base_ = 2;
  std::vector<std::uint8_t> digits_;
};

// Reads digits [pos, pos+len) as a big-endian binary number; every digit in
// the range must be 0 or 1 regardless of the carrier base.
inline Natural bits_to_natural(const BitString& bs, std::size_t pos, std::size_t len) {
  if (pos + len > bs.size()) throw std::out_of_range("bits_to_natural");
  Natural acc = 0;
  for (std::size_t i = 0; i < len; ++i) {
    std::uint8_t d = bs.digit(pos + i);
    if (d > 1) throw std::invalid_argument("bits_to_natural: non-binary digit");
    acc <<= 1;
    if (d) acc |= 1;
  }
  return acc;
}

inline Natural bits_to_natural(const BitString& bs) { return bits_to_natural(bs, 0, bs.size()); }

inline std::size_t hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size() || a.base() != b.base())
    throw std::invalid_argument("hamming_distance: shape mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.digit(i) != b.digit(i)) ++d;
  return d;
}

}  // namespace nsecc
