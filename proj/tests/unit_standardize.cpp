#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "regdist/standardize.hpp"

using namespace regdist;

TEST_CASE("dyadic scale reindexes to j - 2") {
  StandardizationMap m = build_map(parse_sequence("2^(1*j)"), parse_sequence("2^(1*j)"), 1000);
  CHECK(m.kappa0 == 1);
  CHECK(m.kappa1 == 1);
  CHECK(m.j0 == 3);
  CHECK(m.c0 == 4);
  REQUIRE(m.k.size() == 1001);
  for (std::uint64_t j = 0; j <= 1000; ++j)
    CHECK(m.k[j] == (j <= 2 ? 0 : j - 2));
}

TEST_CASE("squared-dyadic scale halves the index") {
  StandardizationMap m = build_map(parse_sequence("2^(1*j)"), parse_sequence("2^(2*j)"), 1000);
  CHECK(m.kappa0 == 1);
  for (std::uint64_t j = 0; j <= 1000; ++j) {
    // k(j) = max(0, ceil((j-1)/2) - 1); ceil((j-1)/2) = floor(j/2) for j >= 1
    long long want = j == 0 ? 0 : (long long)(j / 2) - 1;
    if (want < 0) want = 0;
    CHECK((long long)m.k[j] == want);
  }
}

TEST_CASE("slow geometric scale doubles the index") {
  // N_j = 2^(j/2): kappa0 = 2 and k(j) grows about twice as fast as j.
  StandardizationMap m = build_map(parse_sequence("2^(1*j)"), parse_sequence("2^(0.5*j)"), 200);
  CHECK(m.kappa0 == 2);
  for (std::uint64_t j = 1; j <= 200; ++j) {
    // least k with (k + 2)/2 >= j - 1
    long long want = 2 * (long long)j - 4;
    if (want < 0) want = 0;
    CHECK((long long)m.k[j] == want);
  }
}

TEST_CASE("reindexing laws hold on randomized scales") {
  std::mt19937 rng(20260818);
  for (int trial = 0; trial < 20; ++trial) {
    // Growing scales: positive rate, nonnegative correction exponents.
    Rational s = rational(1 + (long long)(rng() % 6), 2);
    Rational b = rational((long long)(rng() % 3), 1);
    Rational c = rational((long long)(rng() % 2), 1);
    Rational C = rational(1 + (long long)(rng() % 8), 1 + (long long)(rng() % 4));
    ParamSequence N(C, s, b, c);
    REQUIRE(assumption_N_check(N).satisfies_assumption_N);
    ParamSequence sigma(Rational(1), rational((long long)(rng() % 9) - 4, 2),
                        rational((long long)(rng() % 5) - 2, 2), Rational(0));
    StandardizationMap m = build_map(sigma, N, 1000);
    CHECK(m.c0 == m.kappa1 + m.j0);
    for (std::uint64_t j = 0; j < 1000; ++j) {
      CHECK(m.k[j + 1] >= m.k[j]);               // nondecreasing
      CHECK(m.k[j + 1] <= m.k[j] + m.kappa0);    // steps bounded by kappa0
      if (j + m.c0 <= 1000) CHECK(m.k[j + m.c0] > m.k[j]);  // strict growth window
    }
    // The defining inequality and its minimality.
    for (std::uint64_t j : {1ull, 7ull, 100ull, 999ull}) {
      double threshold = (double)j - 1.0;
      CHECK(N.log2_eval(m.k[j] + m.kappa0) >= threshold - 1e-6);
      if (m.k[j] > 0) CHECK(N.log2_eval(m.k[j] - 1 + m.kappa0) < threshold + 1e-6);
    }
  }
}

TEST_CASE("reindexed weight ratios stay inside the transfer constants") {
  ParamSequence sigma = parse_sequence("2^(0.5*j)*(1+j)^-1");
  ParamSequence N = parse_sequence("2^(0.5*j)");
  StandardizationMap m = build_map(sigma, N, 500);
  BetaSequence beta = beta_sequence(m, sigma);
  REQUIRE(beta.log2_values.size() == 501);
  double lo = std::log2(m.mu0) - 1e-9, hi = std::log2(m.mu1) + 1e-9;
  for (std::size_t j = 0; j + 1 < beta.log2_values.size(); ++j) {
    double step = beta.log2_values[j + 1] - beta.log2_values[j];
    CHECK(step >= lo);
    CHECK(step <= hi);
  }
}

TEST_CASE("summability transfers through the reindexing") {
  struct Probe {
    const char* sigma;
    const char* N;
    const char* r;
    Membership want;
  };
  std::vector<Probe> probes = {
      {"2^(1*j)", "2^(0.5*j)", "1", Membership::Member},
      {"(1+j)^2", "2^(1*j)", "1", Membership::Member},
      {"(1+j)^0.5", "2^(1*j)", "2", Membership::NotMember},
      {"2^(0.25*j)", "2^(2*j)", "inf", Membership::Member},
      {"(1+j)^-1", "2^(1*j)", "inf", Membership::NotMember},
  };
  for (const Probe& pr : probes) {
    TransferReport t =
        lr_transfer_check(parse_sequence(pr.sigma), parse_sequence(pr.N), parse_extreal(pr.r), 800);
    CHECK(t.symbolic == pr.want);
    CHECK(t.upper_ok);
    CHECK(t.lower_ok);
    CHECK(!t.reindexed_trace.empty());
  }
}

TEST_CASE("csv table lists every index once") {
  ParamSequence sigma = parse_sequence("2^(1*j)");
  StandardizationMap m = build_map(sigma, parse_sequence("2^(1*j)"), 16);
  std::string csv = standardization_csv(m, sigma);
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "j,k,beta");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 17);
  CHECK(csv.find("\n0,0,1\n") != std::string::npos);  // j=0 row: k=0, beta=2^0
}

TEST_CASE("map construction rejects bad input") {
  CHECK_THROWS_AS(build_map(parse_sequence("2^(1*j)"), parse_sequence("(1+j)^1"), 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_map(parse_sequence("2^(1*j)"), parse_sequence("2^(1*j)"), 0),
                  std::invalid_argument);
}
