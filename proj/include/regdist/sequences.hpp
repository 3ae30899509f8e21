#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "regdist/rational.hpp"

namespace regdist {

// Weight sequence of the parametric family
//   sigma_j = C * 2^(s*j) * (1+j)^b * ln(e+j)^c,   j = 0, 1, 2, ...
// s, b, c are exact rationals. The scale starts out rational; taking
// non-integer powers can make it irrational, in which case only its log2
// is kept (verdict logic never depends on the scale).
class ParamSequence {
 public:
  ParamSequence() : ParamSequence(Rational(1), Rational(0), Rational(0), Rational(0)) {}
  ParamSequence(Rational C, Rational s, Rational b, Rational c);

  const Rational& s() const { return s_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }

  bool scale_is_rational() const { return scale_rational_.has_value(); }
  const Rational& scale_rational() const;
  double log2_scale() const { return log2_scale_; }

  double eval(std::uint64_t j) const;
  // log2(sigma_j); the s*j part is computed in exact arithmetic first so
  // pure-geometric sequences give exact integers here.
  double log2_eval(std::uint64_t j) const;
  double ratio(std::uint64_t j) const;  // sigma_{j+1} / sigma_j

  ParamSequence inverse() const;
  ParamSequence times(const ParamSequence& o) const;
  ParamSequence pow(const Rational& e) const;

  static ParamSequence with_log2_scale(double log2C, Rational s, Rational b, Rational c);

 private:
  std::optional<Rational> scale_rational_;
  double log2_scale_;
  Rational s_, b_, c_;
};

// Finite positive trace, index 0..size-1. Operations that need the whole
// tail come back inconclusive on this type.
struct SampledSequence {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double eval(std::size_t j) const;
  double ratio(std::size_t j) const;

  static SampledSequence from(const ParamSequence& x, std::size_t n);
};

struct AdmissibilityReport {
  double d0 = 0;  // largest valid lower ratio constant (infimum of sigma_{j+1}/sigma_j)
  double d1 = 0;  // smallest valid upper ratio constant (supremum)
  bool is_admissible = false;
  bool satisfies_assumption_N = false;  // d0 > 1
  // False when computed from a finite window only; the two flags above are
  // then not claims about the whole sequence.
  bool conclusive = false;

  // Exact log2 of d0/d1 when the extremum is certified symbolically
  // (limit value 2^s, or first ratio with no log factor).
  std::optional<Rational> log2_d0_exact;
  std::optional<Rational> log2_d1_exact;

  double lambda0() const { return d0; }
  double lambda1() const { return d1; }
};

struct BoydIndices {
  Rational alpha;  // upper index
  Rational beta;   // lower index
};

AdmissibilityReport admissibility_bounds(const ParamSequence& x, std::uint64_t window = 10000);
AdmissibilityReport admissibility_bounds(const SampledSequence& x);

// Admissibility report with satisfies_assumption_N filled in: the infimum
// ratio must exceed 1 (geometric growth or better). Exact on the family.
AdmissibilityReport assumption_N_check(const ParamSequence& N);

// Least natural kappa with lambda0^kappa >= 2. Requires lambda0 > 1.
unsigned kappa0(const ParamSequence& N);
unsigned kappa0_from_ratio(double lambda0);

// Closed form for the family: both indices equal s.
BoydIndices boyd_indices(const ParamSequence& x);

// Same (s, b, c), any scale.
bool equivalent(const ParamSequence& a, const ParamSequence& b);

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), pos(position) {}
  std::size_t pos;
};

// Grammar:  seq := <C> '*' 2^(<s>*j) '*' (1+j)^<b> '*' ln(e+j)^<c>
// Every factor is optional (but at least one must be present), factors may
// appear in any order at most once, numbers are integers, decimals or
// rationals p/q. "(1+j)" and "ln(e+j)" without an exponent mean power 1.
ParamSequence parse_sequence(const std::string& text);

// Canonical printer; parse(format(x)) == x for rational-scale sequences.
std::string format_sequence(const ParamSequence& x);

}  // namespace regdist
