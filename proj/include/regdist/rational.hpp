#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace regdist {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline Rational rational(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  return Rational(num, den);
}

// Largest integer <= x, as a Rational with denominator 1.
inline BigInt floor_int(const Rational& x) {
  BigInt q = numerator(x) / denominator(x);
  if (numerator(x) < 0 && q * denominator(x) != numerator(x)) --q;
  return q;
}

inline BigInt ceil_int(const Rational& x) {
  return -floor_int(-x);
}

// Smallest integer strictly greater than x.
inline BigInt next_int_above(const Rational& x) {
  return floor_int(x) + 1;
}

inline Rational pow_int(const Rational& base, long long e) {
  if (e == 0) return Rational(1);
  Rational b = e > 0 ? base : Rational(1) / base;
  unsigned long long k = e > 0 ? (unsigned long long)e : (unsigned long long)(-e);
  Rational acc(1);
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

// Parses "p", "-p", "p/q" or a plain decimal like "-0.25" exactly.
Rational parse_rational(const std::string& text);

// Canonical form: integer "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& x);

}  // namespace regdist
