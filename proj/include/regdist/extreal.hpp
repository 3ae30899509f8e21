#pragma once

#include <limits>
#include <stdexcept>
#include <string>

#include "regdist/rational.hpp"

namespace regdist {

// Positive extended real in (0, inf]. Used for integrability/summability
// indices (p, q, r) where inf is a legal value and boundary comparisons
// must be exact.
class ExtReal {
 public:
  ExtReal() : inf_(true), v_(0) {}
  explicit ExtReal(Rational v) : inf_(false), v_(std::move(v)) {
    if (v_ <= 0) throw std::invalid_argument("ExtReal: value must be positive");
  }
  static ExtReal infinity() { return ExtReal(); }
  static ExtReal from(long long num, long long den = 1) {
    return ExtReal(rational(num, den));
  }

  bool is_inf() const { return inf_; }
  const Rational& value() const {
    if (inf_) throw std::logic_error("ExtReal: infinite value");
    return v_;
  }
  // 1/x with 1/inf = 0. The result may be zero, so it is a plain Rational.
  Rational reciprocal_or_zero() const { return inf_ ? Rational(0) : Rational(1) / v_; }

  double to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : regdist::to_double(v_);
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.v_ == b.v_;
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return b <= a; }

  friend ExtReal min(const ExtReal& a, const ExtReal& b) { return a <= b ? a : b; }
  friend ExtReal max(const ExtReal& a, const ExtReal& b) { return a <= b ? b : a; }

 private:
  bool inf_;
  Rational v_;
};

using LrIndex = ExtReal;

// Parses "inf", "p/q", or a decimal; value must be > 0.
ExtReal parse_extreal(const std::string& text);
std::string format_extreal(const ExtReal& x);

}  // namespace regdist
