#include "regdist/sequences.hpp"

#include <cmath>
#include <cstdio>

namespace regdist {

namespace {
constexpr double kE = 2.718281828459045235;
}

ParamSequence::ParamSequence(Rational C, Rational s, Rational b, Rational c)
    : scale_rational_(std::move(C)), s_(std::move(s)), b_(std::move(b)), c_(std::move(c)) {
  if (*scale_rational_ <= 0) throw std::invalid_argument("sequence scale must be positive");
  log2_scale_ = *scale_rational_ == 1 ? 0.0 : std::log2(to_double(*scale_rational_));
}

ParamSequence ParamSequence::with_log2_scale(double log2C, Rational s, Rational b, Rational c) {
  ParamSequence out(Rational(1), std::move(s), std::move(b), std::move(c));
  out.scale_rational_.reset();
  out.log2_scale_ = log2C;
  return out;
}

const Rational& ParamSequence::scale_rational() const {
  if (!scale_rational_) throw std::logic_error("sequence scale is not rational");
  return *scale_rational_;
}

double ParamSequence::eval(std::uint64_t j) const {
  double v = scale_rational_ ? to_double(*scale_rational_) : std::exp2(log2_scale_);
  if (s_ != 0) v *= std::exp2(to_double(s_ * Rational(j)));
  if (b_ != 0) v *= std::pow(1.0 + (double)j, to_double(b_));
  if (c_ != 0) v *= std::pow(std::log(kE + (double)j), to_double(c_));
  return v;
}

double ParamSequence::log2_eval(std::uint64_t j) const {
  double out = log2_scale_;
  if (s_ != 0) out += to_double(s_ * Rational(j));
  if (b_ != 0) out += to_double(b_) * std::log2(1.0 + (double)j);
  if (c_ != 0) out += to_double(c_) * std::log2(std::log(kE + (double)j));
  return out;
}

double ParamSequence::ratio(std::uint64_t j) const {
  double v = std::exp2(to_double(s_));
  if (b_ != 0) v *= std::pow((2.0 + (double)j) / (1.0 + (double)j), to_double(b_));
  if (c_ != 0)
    v *= std::pow(std::log(kE + 1.0 + (double)j) / std::log(kE + (double)j), to_double(c_));
  return v;
}

ParamSequence ParamSequence::inverse() const {
  if (scale_rational_) return ParamSequence(Rational(1) / *scale_rational_, -s_, -b_, -c_);
  return with_log2_scale(-log2_scale_, -s_, -b_, -c_);
}

ParamSequence ParamSequence::times(const ParamSequence& o) const {
  if (scale_rational_ && o.scale_rational_)
    return ParamSequence(*scale_rational_ * *o.scale_rational_, s_ + o.s_, b_ + o.b_, c_ + o.c_);
  return with_log2_scale(log2_scale_ + o.log2_scale_, s_ + o.s_, b_ + o.b_, c_ + o.c_);
}

ParamSequence ParamSequence::pow(const Rational& e) const {
  Rational s = s_ * e, b = b_ * e, c = c_ * e;
  if (scale_rational_) {
    if (*scale_rational_ == 1) return ParamSequence(Rational(1), s, b, c);
    if (denominator(e) == 1) {
      long long k = numerator(e).convert_to<long long>();
      return ParamSequence(pow_int(*scale_rational_, k), s, b, c);
    }
  }
  return with_log2_scale(log2_scale_ * to_double(e), s, b, c);
}

double SampledSequence::eval(std::size_t j) const {
  if (j >= values.size()) throw std::out_of_range("sampled sequence index out of range");
  return values[j];
}

double SampledSequence::ratio(std::size_t j) const {
  if (j + 1 >= values.size()) throw std::out_of_range("sampled sequence ratio out of range");
  return values[j + 1] / values[j];
}

SampledSequence SampledSequence::from(const ParamSequence& x, std::size_t n) {
  SampledSequence out;
  out.values.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.values.push_back(x.eval(j));
  return out;
}

AdmissibilityReport admissibility_bounds(const ParamSequence& x, std::uint64_t window) {
  if (window < 2) throw std::invalid_argument("admissibility window too small");
  const Rational &s = x.s(), &b = x.b(), &c = x.c();
  double limit = std::exp2(to_double(s));

  double scan_min = limit, scan_max = limit;
  bool one_signed = (b >= 0 && c >= 0) || (b <= 0 && c <= 0);
  if (one_signed) {
    // Ratio is monotone in j, so the extremes are ratio(0) and the limit.
    double r0 = x.ratio(0);
    scan_min = std::min(scan_min, r0);
    scan_max = std::max(scan_max, r0);
  } else {
    for (std::uint64_t j = 0; j < window; ++j) {
      double r = x.ratio(j);
      scan_min = std::min(scan_min, r);
      scan_max = std::max(scan_max, r);
    }
  }

  AdmissibilityReport rep;
  rep.d0 = scan_min;
  rep.d1 = scan_max;
  rep.is_admissible = true;
  rep.conclusive = true;

  // The log-ratio correction b*u(j) + c*v(j) has u, v > 0 strictly decreasing
  // to 0, so with one-signed (b, c) the ratio approaches 2^s monotonically.
  if (b >= 0 && c >= 0) {
    rep.log2_d0_exact = s;
    if (c == 0) rep.log2_d1_exact = s + b;
  } else if (b <= 0 && c <= 0) {
    rep.log2_d1_exact = s;
    if (c == 0) rep.log2_d0_exact = s + b;
  } else {
    if (limit <= scan_min) rep.log2_d0_exact = s;
    if (limit >= scan_max) rep.log2_d1_exact = s;
  }

  rep.satisfies_assumption_N =
      rep.log2_d0_exact ? (*rep.log2_d0_exact > 0) : (rep.d0 > 1.0);
  return rep;
}

AdmissibilityReport admissibility_bounds(const SampledSequence& x) {
  if (x.size() < 2) throw std::invalid_argument("need at least two samples");
  AdmissibilityReport rep;
  double lo = x.ratio(0), hi = lo;
  for (std::size_t j = 1; j + 1 < x.size(); ++j) {
    double r = x.ratio(j);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  rep.d0 = lo;
  rep.d1 = hi;
  rep.conclusive = false;  // window evidence only
  return rep;
}

AdmissibilityReport assumption_N_check(const ParamSequence& N) {
  return admissibility_bounds(N);
}

unsigned kappa0_from_ratio(double lambda0) {
  if (!(lambda0 > 1.0)) throw std::invalid_argument("kappa0 needs lambda0 > 1");
  double L = std::log2(lambda0);
  // Snap within 1e-9 so ratios that are exact roots of 2 land on the boundary.
  auto k = (unsigned long long)std::ceil((1.0 - 1e-9) / L);
  if (k == 0) k = 1;
  while (k > 1 && (double)(k - 1) * L >= 1.0 - 1e-9) --k;
  return (unsigned)k;
}

unsigned kappa0(const ParamSequence& N) {
  AdmissibilityReport rep = admissibility_bounds(N);
  if (!rep.satisfies_assumption_N)
    throw std::invalid_argument("kappa0 needs lambda0 > 1");
  if (rep.log2_d0_exact) {
    Rational t = *rep.log2_d0_exact;  // > 0; least kappa with kappa*t >= 1
    return (unsigned)ceil_int(Rational(1) / t).convert_to<unsigned long long>();
  }
  return kappa0_from_ratio(rep.d0);
}

BoydIndices boyd_indices(const ParamSequence& x) {
  // For this family the shifted-supremum growth exponents collapse: the
  // polynomial and logarithmic parts are subexponential.
  return BoydIndices{x.s(), x.s()};
}

bool equivalent(const ParamSequence& a, const ParamSequence& b) {
  return a.s() == b.s() && a.b() == b.b() && a.c() == b.c();
}

// ---------------------------------------------------------------------------
// Grammar:  seq := factor ('*' factor)*
//   factor := number | "2^(" number "*j)" | "(1+j)" ["^" number]
//           | "ln(e+j)" ["^" number]

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eof() const { return i >= s.size(); }
  char peek() const { return i < s.size() ? s[i] : '\0'; }
  bool lit(const char* word) {
    std::size_t n = std::char_traits<char>::length(word);
    if (s.compare(i, n, word) == 0) {
      i += n;
      return true;
    }
    return false;
  }
};

bool number_start(char ch) { return std::isdigit((unsigned char)ch) || ch == '-' || ch == '+'; }

Rational scan_number(Cursor& c, const char* what) {
  std::size_t start = c.i;
  if (!c.eof() && (c.peek() == '-' || c.peek() == '+')) ++c.i;
  std::size_t digits_from = c.i;
  while (!c.eof() && std::isdigit((unsigned char)c.peek())) ++c.i;
  if (c.i == digits_from) throw ParseError(std::string("expected ") + what, start);
  if (!c.eof() && (c.peek() == '.' || c.peek() == '/')) {
    ++c.i;
    std::size_t frac_from = c.i;
    while (!c.eof() && std::isdigit((unsigned char)c.peek())) ++c.i;
    if (c.i == frac_from)
      throw ParseError(std::string("digits expected after '") + c.s[frac_from - 1] + "'",
                       frac_from);
  }
  return parse_rational(c.s.substr(start, c.i - start));
}

}  // namespace

ParamSequence parse_sequence(const std::string& text) {
  Cursor cur{text};
  std::optional<Rational> C, s, b, c;

  cur.skip_ws();
  if (cur.eof()) throw ParseError("empty sequence expression", 0);

  while (true) {
    cur.skip_ws();
    std::size_t fpos = cur.i;
    if (cur.s.compare(cur.i, 2, "2^") == 0) {
      cur.i += 2;
      if (!cur.lit("(")) throw ParseError("expected '(' after 2^", cur.i);
      cur.skip_ws();
      Rational v = scan_number(cur, "a number in the exponent (form 2^(<num>*j))");
      cur.skip_ws();
      if (!cur.lit("*")) throw ParseError("expected '*' in 2^(<num>*j)", cur.i);
      cur.skip_ws();
      if (!cur.lit("j")) throw ParseError("expected 'j' in 2^(<num>*j)", cur.i);
      cur.skip_ws();
      if (!cur.lit(")")) throw ParseError("expected ')' closing 2^(...)", cur.i);
      if (s) throw ParseError("duplicate 2^(...) factor", fpos);
      s = v;
    } else if (cur.s.compare(cur.i, 5, "(1+j)") == 0) {
      cur.i += 5;
      Rational v(1);
      if (cur.peek() == '^') {
        ++cur.i;
        v = scan_number(cur, "an exponent after '^'");
      }
      if (b) throw ParseError("duplicate (1+j) factor", fpos);
      b = v;
    } else if (cur.s.compare(cur.i, 7, "ln(e+j)") == 0) {
      cur.i += 7;
      Rational v(1);
      if (cur.peek() == '^') {
        ++cur.i;
        v = scan_number(cur, "an exponent after '^'");
      }
      if (c) throw ParseError("duplicate ln(e+j) factor", fpos);
      c = v;
    } else if (number_start(cur.peek())) {
      Rational v = scan_number(cur, "a number");
      if (v <= 0) throw ParseError("scale factor must be positive", fpos);
      if (C) throw ParseError("duplicate scale factor", fpos);
      C = v;
    } else {
      throw ParseError("expected a factor: number, 2^(<s>*j), (1+j)^<b> or ln(e+j)^<c>", fpos);
    }

    cur.skip_ws();
    if (cur.eof()) break;
    if (!cur.lit("*")) throw ParseError("expected '*' between factors", cur.i);
  }

  return ParamSequence(C.value_or(Rational(1)), s.value_or(Rational(0)),
                       b.value_or(Rational(0)), c.value_or(Rational(0)));
}

std::string format_sequence(const ParamSequence& x) {
  std::vector<std::string> parts;
  if (x.scale_is_rational()) {
    if (x.scale_rational() != 1) parts.push_back(format_rational(x.scale_rational()));
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", std::exp2(x.log2_scale()));
    parts.push_back(buf);
  }
  if (x.s() != 0) parts.push_back("2^(" + format_rational(x.s()) + "*j)");
  if (x.b() != 0)
    parts.push_back(x.b() == 1 ? std::string("(1+j)") : "(1+j)^" + format_rational(x.b()));
  if (x.c() != 0)
    parts.push_back(x.c() == 1 ? std::string("ln(e+j)") : "ln(e+j)^" + format_rational(x.c()));
  if (parts.empty()) return "1";

  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

}  // namespace regdist
