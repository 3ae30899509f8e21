#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "regdist/extreal.hpp"
#include "regdist/rational.hpp"
#include "regdist/sequences.hpp"

using namespace regdist;

TEST_CASE("rational floor and ceil handle negatives") {
  CHECK(floor_int(rational(-7, 2)) == -4);
  CHECK(ceil_int(rational(-7, 2)) == -3);
  CHECK(floor_int(rational(7, 2)) == 3);
  CHECK(ceil_int(rational(7, 2)) == 4);
  CHECK(floor_int(Rational(-3)) == -3);
  CHECK(ceil_int(Rational(-3)) == -3);
  CHECK(next_int_above(Rational(2)) == 3);
  CHECK(next_int_above(rational(5, 2)) == 3);
}

TEST_CASE("rational integer powers") {
  CHECK(pow_int(rational(2, 3), -2) == rational(9, 4));
  CHECK(pow_int(Rational(2), 10) == Rational(1024));
  CHECK(pow_int(Rational(5), 0) == Rational(1));
}

TEST_CASE("rational parse and format round trip") {
  CHECK(format_rational(parse_rational("-22/7")) == "-22/7");
  CHECK(format_rational(parse_rational("0.25")) == "1/4");
  CHECK(format_rational(parse_rational("3")) == "3");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("extended reals order and conjugate-style helpers") {
  ExtReal two = ExtReal::from(2);
  ExtReal half = ExtReal::from(1, 2);
  ExtReal inf = ExtReal::infinity();
  CHECK(half < two);
  CHECK(two < inf);
  CHECK(min(two, inf) == two);
  CHECK(max(half, two) == two);
  CHECK(inf.reciprocal_or_zero() == Rational(0));
  CHECK(two.reciprocal_or_zero() == rational(1, 2));
  CHECK(parse_extreal("inf").is_inf());
  CHECK(parse_extreal("3/2") == ExtReal::from(3, 2));
  CHECK(format_extreal(inf) == "inf");
  CHECK_THROWS_AS(ExtReal(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(ExtReal(Rational(-1)), std::invalid_argument);
}

TEST_CASE("sequence grammar accepts the documented forms") {
  ParamSequence a = parse_sequence("2^(1*j)");
  CHECK(a.s() == Rational(1));
  CHECK(a.b() == Rational(0));
  CHECK(a.c() == Rational(0));
  CHECK(a.scale_is_rational());
  CHECK(a.scale_rational() == Rational(1));

  ParamSequence b = parse_sequence("3*(1+j)^-0.5*ln(e+j)^2");
  CHECK(b.scale_rational() == Rational(3));
  CHECK(b.s() == Rational(0));
  CHECK(b.b() == rational(-1, 2));
  CHECK(b.c() == Rational(2));

  ParamSequence c = parse_sequence("2^(-1/3*j)*(1+j)^2/3");
  CHECK(c.s() == rational(-1, 3));
  CHECK(c.b() == rational(2, 3));
}

TEST_CASE("sequence grammar rejects malformed input") {
  CHECK_THROWS_AS(parse_sequence("2^(j)*(1+j)"), ParseError);
  CHECK_THROWS_AS(parse_sequence(""), ParseError);
  CHECK_THROWS_AS(parse_sequence("(2+j)^1"), ParseError);
  CHECK_THROWS_AS(parse_sequence("0*(1+j)^1"), ParseError);
}

TEST_CASE("format and parse round trip on random parameters") {
  std::mt19937 rng(1234);
  auto draw = [&rng]() {
    long long num = (long long)(rng() % 19) - 9;
    long long den = 1 + (long long)(rng() % 6);
    return rational(num, den);
  };
  for (int i = 0; i < 1000; ++i) {
    Rational C = draw();
    if (C <= 0) C = Rational(1) - C;
    ParamSequence x(C, draw(), draw(), draw());
    ParamSequence y = parse_sequence(format_sequence(x));
    CHECK(y.scale_rational() == C);
    CHECK(y.s() == x.s());
    CHECK(y.b() == x.b());
    CHECK(y.c() == x.c());
  }
}

TEST_CASE("eval and log2_eval agree where doubles are safe") {
  ParamSequence x(rational(3, 2), rational(1, 2), Rational(-1), Rational(1));
  for (std::uint64_t j : {0u, 1u, 5u, 40u, 900u}) {
    double direct = std::log2(x.eval(j));
    CHECK(direct == doctest::Approx(x.log2_eval(j)).epsilon(1e-12));
  }
}

TEST_CASE("pointwise algebra: inverse, product, power") {
  ParamSequence x(Rational(2), Rational(1), rational(1, 2), Rational(-1));
  ParamSequence inv = x.inverse();
  ParamSequence sq = x.times(x);
  ParamSequence half = x.pow(rational(1, 2));
  for (std::uint64_t j : {0u, 3u, 17u}) {
    CHECK(inv.eval(j) == doctest::Approx(1.0 / x.eval(j)));
    CHECK(sq.eval(j) == doctest::Approx(x.eval(j) * x.eval(j)));
    CHECK(half.eval(j) == doctest::Approx(std::sqrt(x.eval(j))));
  }
}

TEST_CASE("admissibility bounds match a brute ratio scan") {
  auto brute = [](const ParamSequence& x) {
    double lo = std::exp2(to_double(x.s())), hi = lo;
    for (std::uint64_t j = 0; j < 10000; ++j) {
      double r = x.ratio(j);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return std::pair<double, double>(lo, hi);
  };
  // One-signed, mixed-signed, and log-only families.
  std::vector<ParamSequence> cases = {
      ParamSequence(Rational(1), rational(1, 2), Rational(-1), Rational(0)),
      ParamSequence(Rational(1), Rational(1), Rational(2), Rational(1)),
      ParamSequence(Rational(3), Rational(0), Rational(1), Rational(-2)),
      ParamSequence(Rational(1), Rational(-1), Rational(-2), Rational(3)),
      ParamSequence(Rational(1), Rational(0), Rational(0), Rational(1)),
  };
  for (const ParamSequence& x : cases) {
    AdmissibilityReport rep = admissibility_bounds(x);
    auto [lo, hi] = brute(x);
    CHECK(rep.d0 == doctest::Approx(lo).epsilon(1e-12));
    CHECK(rep.d1 == doctest::Approx(hi).epsilon(1e-12));
    CHECK(rep.is_admissible);
    CHECK(rep.conclusive);
  }
}

TEST_CASE("exact ratio bound tags on one-signed families") {
  ParamSequence up(Rational(1), Rational(1), Rational(2), Rational(0));
  AdmissibilityReport r1 = admissibility_bounds(up);
  REQUIRE(r1.log2_d0_exact.has_value());
  CHECK(*r1.log2_d0_exact == Rational(1));
  REQUIRE(r1.log2_d1_exact.has_value());
  CHECK(*r1.log2_d1_exact == Rational(3));  // first ratio: 2 * 2^2

  ParamSequence down(Rational(1), rational(1, 2), Rational(-1), Rational(0));
  AdmissibilityReport r2 = admissibility_bounds(down);
  REQUIRE(r2.log2_d1_exact.has_value());
  CHECK(*r2.log2_d1_exact == rational(1, 2));
  REQUIRE(r2.log2_d0_exact.has_value());
  CHECK(*r2.log2_d0_exact == rational(-1, 2));
}

TEST_CASE("geometric growth assumption") {
  CHECK(assumption_N_check(parse_sequence("2^(1*j)")).satisfies_assumption_N);
  CHECK(assumption_N_check(parse_sequence("2^(0.5*j)*(1+j)^1")).satisfies_assumption_N);
  CHECK_FALSE(assumption_N_check(parse_sequence("(1+j)^2")).satisfies_assumption_N);
  CHECK_FALSE(assumption_N_check(parse_sequence("2^(-1*j)")).satisfies_assumption_N);
  // Growth from the log factor alone does not clear a ratio above 1.
  CHECK_FALSE(assumption_N_check(parse_sequence("ln(e+j)^3")).satisfies_assumption_N);
}

TEST_CASE("kappa0 is the least power pushing the ratio to 2") {
  CHECK(kappa0(parse_sequence("2^(1*j)")) == 1);
  CHECK(kappa0(parse_sequence("2^(2*j)")) == 1);
  CHECK(kappa0(parse_sequence("2^(0.5*j)")) == 2);
  CHECK(kappa0(parse_sequence("2^(1/3*j)")) == 3);
  CHECK_THROWS_AS(kappa0(parse_sequence("(1+j)^1")), std::invalid_argument);
}

TEST_CASE("Boyd indices collapse to the exponential rate") {
  BoydIndices bi = boyd_indices(parse_sequence("2^(0.5*j)*(1+j)^-3*ln(e+j)^7"));
  CHECK(bi.alpha == rational(1, 2));
  CHECK(bi.beta == rational(1, 2));
}

TEST_CASE("equivalence ignores constants but sees polynomial factors") {
  ParamSequence x = parse_sequence("2^(1*j)*(1+j)^2");
  CHECK(equivalent(x, parse_sequence("5*2^(1*j)*(1+j)^2")));
  CHECK_FALSE(equivalent(x, parse_sequence("2^(1*j)*(1+j)^3")));
  CHECK_FALSE(equivalent(x, parse_sequence("2^(2*j)*(1+j)^2")));
}

TEST_CASE("sampled sequences report window evidence only") {
  SampledSequence s = SampledSequence::from(parse_sequence("2^(1*j)"), 64);
  REQUIRE(s.size() == 64);
  AdmissibilityReport rep = admissibility_bounds(s);
  CHECK(rep.d0 == doctest::Approx(2.0));
  CHECK(rep.d1 == doctest::Approx(2.0));
  CHECK_FALSE(rep.conclusive);
}
