#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "regdist/decide.hpp"

using namespace regdist;

namespace {

SpaceSpec spec(Family f, unsigned n, ExtReal p, ExtReal q, const char* sigma,
               const char* N = "2^(1*j)") {
  SpaceSpec s;
  s.family = f;
  s.n = n;
  s.p = p;
  s.q = q;
  s.sigma = parse_sequence(sigma);
  s.N = parse_sequence(N);
  return s;
}

const std::vector<ExtReal>& index_grid() {
  static std::vector<ExtReal> g = {ExtReal::from(1, 4), ExtReal::from(1, 2),
                                   ExtReal::from(3, 4), ExtReal::from(1),
                                   ExtReal::from(3, 2), ExtReal::from(2),
                                   ExtReal::from(5, 2), ExtReal::from(3),
                                   ExtReal::infinity()};
  return g;
}

}  // namespace

TEST_CASE("input validation") {
  CHECK_THROWS_AS(regularity(spec(Family::F, 1, ExtReal::infinity(), ExtReal::from(2), "2^(1*j)")),
                  std::invalid_argument);
  CHECK_THROWS_AS(regularity(spec(Family::B, 0, ExtReal::from(1), ExtReal::from(2), "2^(1*j)")),
                  std::invalid_argument);
  // The scale sequence must grow geometrically.
  CHECK_THROWS_AS(
      regularity(spec(Family::B, 1, ExtReal::from(1), ExtReal::from(2), "2^(1*j)", "(1+j)^2")),
      std::invalid_argument);
}

TEST_CASE("case dispatch is a partition of the index plane") {
  for (const ExtReal& p : index_grid())
    for (const ExtReal& q : index_grid()) {
      if (!p.is_inf()) {
        RegularityVerdict f = regularity(spec(Family::F, 1, p, q, "2^(1*j)"));
        if (p < ExtReal::from(1))
          CHECK(f.case_id == "F1");
        else if (q <= ExtReal::from(2))
          CHECK(f.case_id == "F2");
        else
          CHECK(f.case_id == "F3");
      }
      RegularityVerdict b = regularity(spec(Family::B, 1, p, q, "2^(1*j)"));
      if (p <= ExtReal::from(1))
        CHECK(b.case_id == "B1");
      else if (q <= min(p, ExtReal::from(2)))
        CHECK(b.case_id == "B2");
      else if (p <= ExtReal::from(2))
        CHECK(b.case_id == "B3");
      else
        CHECK(b.case_id == "B4");
    }
}

TEST_CASE("dyadic-scale verdicts agree with the closed-form table") {
  for (int si = -4; si <= 4; ++si) {
    Rational s = rational(si, 2);
    std::string sigma = "2^(" + format_rational(s) + "*j)";
    for (const ExtReal& p : index_grid())
      for (const ExtReal& q : index_grid())
        for (unsigned n = 1; n <= 2; ++n) {
          bool bw = classical_regularity(Family::B, n, s, p, q);
          CHECK(regularity(spec(Family::B, n, p, q, sigma.c_str())).contained == bw);
          if (!p.is_inf()) {
            bool fw = classical_regularity(Family::F, n, s, p, q);
            CHECK(regularity(spec(Family::F, n, p, q, sigma.c_str())).contained == fw);
          }
        }
  }
}

TEST_CASE("constant rescaling of the weight never changes the verdict") {
  std::mt19937 rng(99);
  const std::vector<ExtReal>& g = index_grid();
  for (int i = 0; i < 300; ++i) {
    Family fam = (rng() % 2) ? Family::B : Family::F;
    ExtReal p = g[rng() % g.size()];
    if (fam == Family::F && p.is_inf()) p = ExtReal::from(2);
    ExtReal q = g[rng() % g.size()];
    Rational s = rational((long long)(rng() % 9) - 4, 2);
    Rational b = rational((long long)(rng() % 9) - 4, 2);
    Rational c = rational((long long)(rng() % 5) - 2, 1);
    SpaceSpec base;
    base.family = fam;
    base.n = 1 + rng() % 3;
    base.p = p;
    base.q = q;
    base.sigma = ParamSequence(Rational(1), s, b, c);
    base.N = parse_sequence("2^(1*j)");
    SpaceSpec scaled = base;
    scaled.sigma = ParamSequence(rational(7, 3), s, b, c);
    RegularityVerdict v1 = regularity(base), v2 = regularity(scaled);
    CHECK(v1.contained == v2.contained);
    CHECK(v1.case_id == v2.case_id);
  }
}

TEST_CASE("raising q can only lose containment when p stays below 1") {
  // With p <= 1 the test index r = q' shrinks as q grows.
  std::vector<const char*> sigmas = {"(1+j)^0.5", "(1+j)^1", "2^(0.25*j)", "ln(e+j)^2",
                                     "(1+j)^1*ln(e+j)^1"};
  for (const char* sg : sigmas)
    for (const ExtReal& p : {ExtReal::from(1, 2), ExtReal::from(1)}) {
      bool prev = regularity(spec(Family::B, 1, p, index_grid().front(), sg)).contained;
      for (const ExtReal& q : index_grid()) {
        bool cur = regularity(spec(Family::B, 1, p, q, sg)).contained;
        if (!prev) CHECK_FALSE(cur);  // once lost, never regained
        prev = cur;
      }
    }
}

TEST_CASE("embedding test on the B scale") {
  ParamSequence sigma = parse_sequence("2^(2*j)");
  ParamSequence tau = parse_sequence("2^(1*j)");
  ParamSequence N = parse_sequence("2^(1*j)");
  EmbeddingVerdict v = embedding_B(sigma, tau, N, 1, ExtReal::from(2), ExtReal::from(2),
                                   ExtReal::from(2), ExtReal::from(2));
  CHECK(v.status == EmbeddingStatus::Holds);
  // Going the wrong way across integrability is rejected outright.
  CHECK_THROWS_AS(embedding_B(sigma, tau, N, 1, ExtReal::from(2), ExtReal::from(1),
                              ExtReal::from(2), ExtReal::from(2)),
                  std::invalid_argument);
  // Equal weights, shrinking q: the interpolation price is not payable.
  EmbeddingVerdict w = embedding_B(sigma, sigma, N, 1, ExtReal::from(2), ExtReal::from(2),
                                   ExtReal::from(2), ExtReal::from(1));
  CHECK(w.status == EmbeddingStatus::Unknown);
}

TEST_CASE("embedding test on the F scale ignores integrability") {
  ParamSequence sigma = parse_sequence("2^(1*j)*(1+j)^2");
  ParamSequence tau = parse_sequence("2^(1*j)");
  EmbeddingVerdict v = embedding_F(sigma, tau, ExtReal::from(3, 2), ExtReal::from(2),
                                   ExtReal::from(2));
  CHECK(v.status == EmbeddingStatus::Holds);  // tau/sigma = (1+j)^-2 summable everywhere
}

TEST_CASE("sharp target selection") {
  CHECK(embeds_in_target(spec(Family::B, 1, ExtReal::infinity(), ExtReal::from(1), "2^(1*j)"))
            .target == TargetSpace::Bmo);
  CHECK(embeds_in_target(spec(Family::B, 1, ExtReal::from(1, 2), ExtReal::from(1), "2^(2*j)"))
            .target == TargetSpace::LocalHardy);
  CHECK(embeds_in_target(spec(Family::F, 1, ExtReal::from(1), ExtReal::from(2), "2^(1*j)"))
            .target == TargetSpace::LocalHardy);
  CHECK(embeds_in_target(spec(Family::B, 1, ExtReal::from(2), ExtReal::from(2), "2^(1*j)"))
            .target == TargetSpace::LebesgueMax1P);
  TargetVerdict tv = embeds_in_target(spec(Family::B, 1, ExtReal::from(2), ExtReal::from(2),
                                           "(1+j)^1"));
  CHECK(tv.verdict.contained ==
        regularity(spec(Family::B, 1, ExtReal::from(2), ExtReal::from(2), "(1+j)^1")).contained);
}

TEST_CASE("B spaces sandwich the F space across the grid") {
  std::mt19937 rng(7);
  const std::vector<ExtReal>& g = index_grid();
  for (int i = 0; i < 300; ++i) {
    ExtReal p = g[rng() % (g.size() - 1)];  // finite p for F
    ExtReal q = g[rng() % g.size()];
    Rational s = rational((long long)(rng() % 9) - 4, 2);
    Rational b = rational((long long)(rng() % 9) - 4, 2);
    SpaceSpec f;
    f.family = Family::F;
    f.n = 1 + rng() % 2;
    f.p = p;
    f.q = q;
    f.sigma = ParamSequence(Rational(1), s, b, Rational(0));
    f.N = parse_sequence("2^(1*j)");
    auto [lower, upper] = bf_sandwich(f);
    CHECK(lower.family == Family::B);
    CHECK(upper.family == Family::B);
    CHECK(lower.q == min(p, q));
    CHECK(upper.q == max(p, q));
    bool vu = regularity(upper).contained;
    bool vf = regularity(f).contained;
    bool vl = regularity(lower).contained;
    CHECK((!vu || vf));
    CHECK((!vf || vl));
  }
}

TEST_CASE("integrability envelope sharpness") {
  ParamSequence sigma = parse_sequence("2^(1*j)");
  ParamSequence N = parse_sequence("2^(1*j)");
  BfbReport r1 = bfb_sharp(ExtReal::from(1), ExtReal::from(2), ExtReal::from(3),
                           ExtReal::from(2), ExtReal::from(2), sigma, N, 1);
  CHECK(r1.sharp);
  BfbReport r2 = bfb_sharp(ExtReal::from(1), ExtReal::from(2), ExtReal::from(3),
                           ExtReal::from(5, 2), ExtReal::from(3), sigma, N, 1);
  CHECK_FALSE(r2.sharp);  // envelope misses p from above
  // The rescaled weights carry the integrability shift n(1/p_i - 1/p).
  CHECK(equivalent(r1.sigma_lower, parse_sequence("2^(3/2*j)")));
  CHECK(equivalent(r1.sigma_upper, parse_sequence("2^(5/6*j)")));
  CHECK_THROWS_AS(bfb_sharp(ExtReal::from(2), ExtReal::from(1), ExtReal::from(3),
                            ExtReal::from(2), ExtReal::from(2), sigma, N, 1),
                  std::invalid_argument);
}

TEST_CASE("atomic moment orders on hand-checked inputs") {
  ParamSequence dyadic = parse_sequence("2^(1*j)");
  AtomRequirements a1 = atom_requirements(parse_sequence("2^(2*j)"), dyadic, 1, ExtReal::from(1),
                                          ExtReal::from(1), Family::B);
  CHECK(a1.M_min == 3);
  CHECK(a1.L_min == -1);

  AtomRequirements a2 = atom_requirements(parse_sequence("1"), dyadic, 1, ExtReal::from(1, 2),
                                          ExtReal::from(1), Family::B);
  CHECK(a2.L_min == 1);
  CHECK(a2.M_min == 1);

  // A scale with vanishing lower Boyd index cannot calibrate atoms.
  CHECK_THROWS_AS(atom_requirements(parse_sequence("2^(1*j)"), parse_sequence("(1+j)^2"), 1,
                                    ExtReal::from(1), ExtReal::from(1), Family::B),
                  std::invalid_argument);
}

TEST_CASE("moment floor semantics: L = -1 means no vanishing moments") {
  std::mt19937 rng(11);
  ParamSequence dyadic = parse_sequence("2^(1*j)");
  const std::vector<ExtReal>& g = index_grid();
  for (int i = 0; i < 200; ++i) {
    Rational s = rational((long long)(rng() % 17), 4);  // sigma growing
    ParamSequence sigma(Rational(1), s, rational((long long)(rng() % 5) - 2, 2), Rational(0));
    ExtReal p = g[rng() % g.size()];
    ExtReal q = g[rng() % g.size()];
    Family fam = (rng() % 2) ? Family::B : Family::F;
    if (fam == Family::F && p.is_inf()) p = ExtReal::from(1);
    AtomRequirements a = atom_requirements(sigma, dyadic, 1 + rng() % 3, p, q, fam);
    CHECK(a.L_min >= -1);
    CHECK(a.M_min >= 0);
    CHECK(Rational(a.M_min) > a.M_bound);
    CHECK(Rational(a.L_min) > a.L_bound);
  }
}

TEST_CASE("verdict JSON is stable") {
  SpaceSpec s = spec(Family::B, 1, ExtReal::from(1), ExtReal::from(1), "(1+j)^0.5");
  RegularityVerdict v = regularity(s);
  std::string j1 = verdict_json(s, v);
  std::string j2 = verdict_json(s, regularity(s));
  CHECK(j1 == j2);
  CHECK(j1.find("\"case_id\": \"B1\"") != std::string::npos);
  CHECK(j1.find("\"contained\": true") != std::string::npos);
  CHECK(j1.find("\"index_r\": \"inf\"") != std::string::npos);
}

TEST_CASE("knife-edge explanations call out the missing log gain") {
  // Boundary exponent without log factor: still outside, and the text says why.
  SpaceSpec s = spec(Family::B, 1, ExtReal::from(1), ExtReal::from(2), "(1+j)^0.5");
  RegularityVerdict v = regularity(s);
  CHECK_FALSE(v.contained);
  CHECK(v.explanation.find("knife edge") != std::string::npos);
}
