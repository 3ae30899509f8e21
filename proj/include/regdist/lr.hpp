#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regdist/extreal.hpp"
#include "regdist/sequences.hpp"

namespace regdist {

enum class Membership { Member, NotMember, Inconclusive };

struct MembershipVerdict {
  Membership verdict = Membership::Inconclusive;
  std::string reason;
  // Partial sums of |u_j|^r (or running sup for r = inf) at geometrically
  // spaced cutoffs; filled by the sampled variant only. Symbolic verdicts
  // carry their justification in `reason`.
  std::vector<std::pair<std::uint64_t, double>> trace;
};

// 1/r' = (1 - 1/r)_+ : r in (0,1] -> inf, r = inf -> 1, else r/(r-1).
ExtReal conjugate(const ExtReal& r);

enum class InterpIndex {
  BminusP,  // p*q/(q-p), needs q > p; q = inf gives p
  Bminus2,  // 2*q/(q-2), needs q > 2; q = inf gives 2
  QStar,    // 1/q* = (1/q2 - 1/q1)_+; q2 >= q1 gives inf
};

ExtReal interp_index(InterpIndex kind, const ExtReal& a, const ExtReal& b = ExtReal::infinity());

// Exact criterion for (u_j) in l_r on the parametric family
// u_j = C*2^(t*j)*(1+j)^beta*ln(e+j)^gamma:
//   r = inf:  t < 0, or t = 0 and (beta < 0 or (beta = 0 and gamma <= 0))
//   r < inf:  t < 0, or t = 0 and (beta*r < -1 or (beta*r = -1 and gamma*r < -1))
MembershipVerdict lr_membership(const ParamSequence& u, const ExtReal& r);

// Finite data cannot settle summability; returns Inconclusive with the
// partial-sum trace up to `budget` terms. budget must be <= u.size().
MembershipVerdict lr_membership_sampled(const SampledSequence& u, const ExtReal& r,
                                        std::uint64_t budget);

// Certificate that a sequence outside l_{r'} pairs unboundedly against l_r:
// a b of finite l_r norm whose pairing sums Sum a_j b_j grow in K. Sparse
// (spikes) for r <= 1, dense otherwise.
struct ReverseHolderWitness {
  ExtReal r;                                      // the pairing exponent, b in l_r
  std::vector<std::pair<std::uint64_t, double>> b;  // nonzero entries (j, b_j), j <= 4K
  // growth[i] = (cutoff K_i, S_{K_i}, ||b||_{l_r} partial at K_i); cutoffs K, 2K, 4K.
  std::vector<std::tuple<std::uint64_t, double, double>> growth;
};

// Preconditions: lr_membership(a, conjugate(r)) is NotMember. Throws
// std::invalid_argument otherwise.
ReverseHolderWitness reverse_holder_witness(const ParamSequence& a, const ExtReal& r,
                                            std::uint64_t K);

}  // namespace regdist
