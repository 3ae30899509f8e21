#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regdist/extreal.hpp"
#include "regdist/lr.hpp"
#include "regdist/sequences.hpp"

namespace regdist {

// Change of scale from a general strongly increasing N to the dyadic one:
// k(j) = min{ k >= 0 : 2^(j-1) <= N_{k + kappa0} }.
struct StandardizationMap {
  unsigned kappa0 = 0;  // least kappa with lambda0^kappa >= 2
  unsigned kappa1 = 0;  // least kappa with lambda1 <= 2^kappa
  unsigned j0 = 0;      // least j with 2^(j-1) > lambda1^kappa0 * N_0
  unsigned c0 = 0;      // kappa1 + j0; k(j + c0) > k(j)
  double mu0 = 0;       // min{1, d0(sigma)^kappa0}: lower beta-ratio constant
  double mu1 = 0;       // max{1, d1(sigma)^kappa0}
  std::vector<std::uint64_t> k;  // k[j], j = 0..J

  std::uint64_t J() const { return k.empty() ? 0 : k.size() - 1; }
};

StandardizationMap build_map(const ParamSequence& sigma, const ParamSequence& N,
                             std::uint64_t J);

// beta_j = sigma_{k(j)}; doubles may over/underflow for steep sigma, so the
// log2 values are returned alongside.
struct BetaSequence {
  SampledSequence values;
  std::vector<double> log2_values;
};

BetaSequence beta_sequence(const StandardizationMap& map, const ParamSequence& sigma);

// Finite-J evidence that summability of sigma^{-1} transfers through the
// reindexing j -> k(j). A = sum_{j<=J} sigma_{k(j)}^{-r}; the comparison
// sums run over the visited range l = k(0)..k(J).
struct TransferReport {
  double A = 0;
  double B = 0;              // sum_{j<=J} sigma_j^{-r}
  double B_visited = 0;      // sum_{l=k(0)}^{k(J)} sigma_l^{-r}
  double B_head = 0;         // sum_{l=0}^{k(J)} sigma_l^{-r}
  double lower_constant = 0; // min{1, d0^{(kappa0-1) r}}
  bool upper_ok = false;     // A <= c0 * B_head
  bool lower_ok = false;     // kappa0 * A >= lower_constant * B_visited
  Membership symbolic;       // lr_membership(sigma^{-1}, r)
  std::vector<std::pair<std::uint64_t, double>> reindexed_trace;  // (j, sigma_{k(j)}^{-1})
};

TransferReport lr_transfer_check(const ParamSequence& sigma, const ParamSequence& N,
                                 const ExtReal& r, std::uint64_t J);

// CSV with header j,k,beta; one row per j.
std::string standardization_csv(const StandardizationMap& map, const ParamSequence& sigma);

}  // namespace regdist
