#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>

namespace nsecc {

// Arbitrary-precision unsigned values. The backend type is signed; the
// library keeps domain values non-negative and uses the sign bit only
// inside the extended-gcd helpers.
using Natural = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::size_t bit_length(const Natural& x) {
  if (x.is_zero()) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(x)) + 1;
}

inline Natural pow_nat(const Natural& base, std::size_t exp) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

struct EgcdResult {
  Natural g;  // gcd(a, b), non-negative
  Natural x;  // Bezout coefficients: a*x + b*y == g
  Natural y;
};

inline EgcdResult egcd(Natural a, Natural b) {
  Natural x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (!b.is_zero()) {
    Natural q = a / b;
    Natural r = a - q * b;
    a = b;
    b = r;
    Natural nx = x0 - q * x1;
    Natural ny = y0 - q * y1;
    x0 = x1;
    y0 = y1;
    x1 = nx;
    y1 = ny;
  }
  return {a, x0, y0};
}

}  // namespace nsecc
