#include "regdist/rational.hpp"

#include <cctype>

#include "regdist/extreal.hpp"

namespace regdist {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit((unsigned char)ch)) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw std::invalid_argument("empty number");

  auto slash = s.find('/');
  Rational out;
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational: " + text);
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    out = Rational(BigInt(num), d);
  } else {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      if (!all_digits(s)) throw std::invalid_argument("malformed number: " + text);
      out = Rational(BigInt(s));
    } else {
      std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
      if (ip.empty()) ip = "0";
      if (!all_digits(ip) || !all_digits(fp))
        throw std::invalid_argument("malformed decimal: " + text);
      BigInt scale = 1;
      for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
      out = Rational(BigInt(ip) * scale + (fp.empty() ? BigInt(0) : BigInt(fp)), scale);
    }
  }
  return neg ? -out : out;
}

std::string format_rational(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

ExtReal parse_extreal(const std::string& text) {
  if (text == "inf" || text == "infinity") return ExtReal::infinity();
  Rational v = parse_rational(text);
  if (v <= 0) throw std::invalid_argument("index must be positive: " + text);
  return ExtReal(v);
}

std::string format_extreal(const ExtReal& x) {
  return x.is_inf() ? "inf" : format_rational(x.value());
}

}  // namespace regdist
