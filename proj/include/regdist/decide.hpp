#pragma once

#include <string>
#include <utility>

#include "regdist/extreal.hpp"
#include "regdist/lr.hpp"
#include "regdist/sequences.hpp"

namespace regdist {

enum class Family { B, F };

struct SpaceSpec {
  Family family = Family::B;
  unsigned n = 1;
  ExtReal p;  // B: (0, inf]; F: (0, inf)
  ExtReal q;  // (0, inf]
  ParamSequence sigma;
  ParamSequence N;
};

// Containment of the classical space (sigma = 2^(s*j), N = 2^j) among the
// regular distributions; closed-form table, exact in (s, p, q, n).
bool classical_regularity(Family family, unsigned n, const Rational& s, const ExtReal& p,
                          const ExtReal& q);

struct RegularityVerdict {
  bool contained = false;
  std::string case_id;          // "B1".."B4", "F1".."F3"
  ParamSequence tested;         // the sequence whose l_r membership decides
  ExtReal index;                // the r of that test
  MembershipVerdict membership;
  std::string explanation;
};

RegularityVerdict regularity_B(const SpaceSpec& spec);
RegularityVerdict regularity_F(const SpaceSpec& spec);
RegularityVerdict regularity(const SpaceSpec& spec);

enum class EmbeddingStatus { Holds, Unknown };  // sufficient conditions only

struct EmbeddingVerdict {
  EmbeddingStatus status = EmbeddingStatus::Unknown;
  ParamSequence tested;
  ExtReal index;
  MembershipVerdict membership;
  std::string explanation;
};

// Source-to-target embedding tests between two spaces over the same N.
// B scale: requires p1 <= p2; tests (sigma_j^{-1} tau_j N_j^{n(1/p1-1/p2)}) in l_{q*}.
EmbeddingVerdict embedding_B(const ParamSequence& sigma, const ParamSequence& tau,
                             const ParamSequence& N, unsigned n, const ExtReal& p1,
                             const ExtReal& p2, const ExtReal& q1, const ExtReal& q2);
// F scale: same p on both sides; tests (sigma_j^{-1} tau_j) in l_{q*}.
EmbeddingVerdict embedding_F(const ParamSequence& sigma, const ParamSequence& tau,
                             const ExtReal& p, const ExtReal& q1, const ExtReal& q2);

enum class TargetSpace { LebesgueMax1P, Bmo, LocalHardy };

struct TargetVerdict {
  TargetSpace target;
  RegularityVerdict verdict;  // containment in the target, decided by the same tables
};

// Picks the sharp target: bmo for B with p = inf, h1 for p <= 1, else L_max{1,p}.
TargetVerdict embeds_in_target(const SpaceSpec& spec);

// The two B spaces squeezing an F space: q = min{p,q} below, q = max{p,q} above.
std::pair<SpaceSpec, SpaceSpec> bf_sandwich(const SpaceSpec& f_spec);

struct BfbReport {
  bool sharp = false;            // 0 < u <= p <= v <= inf
  ParamSequence sigma_lower;     // N^{n(1/p1 - 1/p)} sigma
  ParamSequence sigma_upper;     // N^{n(1/p2 - 1/p)} sigma
  std::string explanation;
};

BfbReport bfb_sharp(const ExtReal& p1, const ExtReal& p, const ExtReal& p2, const ExtReal& u,
                    const ExtReal& v, const ParamSequence& sigma, const ParamSequence& N,
                    unsigned n);

struct AtomRequirements {
  long long M_min = 0;  // least admissible moment order bound for the analysis side
  long long L_min = -1; // least admissible vanishing-moment order, -1 means none
  Rational M_bound;     // M must exceed this
  Rational L_bound;     // L must exceed this (floor -1)
};

AtomRequirements atom_requirements(const ParamSequence& sigma, const ParamSequence& N,
                                   unsigned n, const ExtReal& p, const ExtReal& q,
                                   Family family);

// Stable-key JSON, byte-identical across runs for equal inputs.
std::string verdict_json(const SpaceSpec& spec, const RegularityVerdict& v);
std::string family_name(Family f);

}  // namespace regdist
