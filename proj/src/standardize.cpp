#include "regdist/standardize.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace regdist {

namespace {

// Least natural kappa with lambda1 <= 2^kappa. Exact when the admissibility
// scan certified log2(d1) symbolically; the double path rounds up, which can
// only enlarge c0 and keeps the k(j + c0) > k(j) invariant safe.
unsigned least_pow2_cover(const AdmissibilityReport& rep) {
  if (rep.log2_d1_exact) {
    BigInt k = ceil_int(*rep.log2_d1_exact);
    return k < 0 ? 0u : k.convert_to<unsigned>();
  }
  unsigned k = 0;
  while (std::exp2(static_cast<double>(k)) < rep.d1 * (1.0 - 1e-12)) ++k;
  return k;
}

// Least j with 2^(j-1) > lambda1^kappa0 * N_0.
unsigned least_start_index(const AdmissibilityReport& rep, unsigned kappa0,
                           const ParamSequence& N) {
  if (rep.log2_d1_exact && N.scale_is_rational()) {
    Rational t = Rational(kappa0) * (*rep.log2_d1_exact);
    if (denominator(t) == 1) {
      // 2^(j-1) > 2^t * N0 with integer t: exact rational comparison.
      BigInt ti = numerator(t);
      const Rational& n0 = N.scale_rational();
      for (unsigned j = 0;; ++j) {
        Rational lhs = pow_int(Rational(2), (BigInt(j) - 1 - ti).convert_to<long long>());
        if (lhs > n0) return j;
      }
    }
  }
  double rhs = static_cast<double>(kappa0) * std::log2(rep.d1) + std::log2(N.eval(0));
  for (unsigned j = 0;; ++j) {
    if (static_cast<double>(j) - 1.0 > rhs + 1e-12) return j;
  }
}

}  // namespace

StandardizationMap build_map(const ParamSequence& sigma, const ParamSequence& N,
                             std::uint64_t J) {
  AdmissibilityReport rep_n = assumption_N_check(N);
  if (!rep_n.satisfies_assumption_N)
    throw std::invalid_argument("standardization needs N with ratio infimum > 1");
  if (J < 1) throw std::invalid_argument("build_map needs J >= 1");

  StandardizationMap map;
  map.kappa0 = kappa0(N);
  map.kappa1 = least_pow2_cover(rep_n);
  map.j0 = least_start_index(rep_n, map.kappa0, N);
  map.c0 = map.kappa1 + map.j0;
  if (map.c0 == 0) map.c0 = 1;  // kappa1 >= 1 under the assumption; belt and braces

  AdmissibilityReport rep_s = admissibility_bounds(sigma);
  map.mu0 = std::min(1.0, std::pow(rep_s.d0, static_cast<double>(map.kappa0)));
  map.mu1 = std::max(1.0, std::pow(rep_s.d1, static_cast<double>(map.kappa0)));

  // Forward scan. The predicate 2^(j-1) <= N_{k+kappa0} is monotone in k and
  // its threshold grows with j, so each row's minimum starts at the last one.
  map.k.resize(J + 1);
  std::uint64_t k = 0;
  for (std::uint64_t j = 0; j <= J; ++j) {
    double threshold = static_cast<double>(j) - 1.0;
    while (N.log2_eval(k + map.kappa0) < threshold - 1e-9) {
      ++k;
      if (k > (std::uint64_t{1} << 40))
        throw std::logic_error("standardization scan ran away; N is not increasing");
    }
    map.k[j] = k;
  }

  for (std::uint64_t j = 0; j + 1 <= J; ++j) {
    if (map.k[j + 1] > map.k[j] + map.kappa0)
      throw std::logic_error("step invariant k(j+1) <= k(j) + kappa0 failed at j = " +
                             std::to_string(j));
  }
  for (std::uint64_t j = 0; j + map.c0 <= J; ++j) {
    if (!(map.k[j + map.c0] > map.k[j]))
      throw std::logic_error("strict growth invariant k(j+c0) > k(j) failed at j = " +
                             std::to_string(j));
  }
  return map;
}

BetaSequence beta_sequence(const StandardizationMap& map, const ParamSequence& sigma) {
  if (map.k.empty()) throw std::invalid_argument("beta_sequence needs a built map");
  BetaSequence out;
  out.log2_values.reserve(map.k.size());
  std::vector<double> vals;
  vals.reserve(map.k.size());
  for (std::uint64_t kj : map.k) {
    double l2 = sigma.log2_eval(kj);
    out.log2_values.push_back(l2);
    vals.push_back(std::exp2(l2));
  }
  double lo = std::log2(map.mu0) - 1e-9, hi = std::log2(map.mu1) + 1e-9;
  for (std::size_t j = 0; j + 1 < out.log2_values.size(); ++j) {
    double step = out.log2_values[j + 1] - out.log2_values[j];
    if (step < lo || step > hi)
      throw std::logic_error("beta ratio left [mu0, mu1] at j = " + std::to_string(j));
  }
  out.values = SampledSequence{std::move(vals)};
  return out;
}

TransferReport lr_transfer_check(const ParamSequence& sigma, const ParamSequence& N,
                                 const ExtReal& r, std::uint64_t J) {
  StandardizationMap map = build_map(sigma, N, J);
  AdmissibilityReport rep_s = admissibility_bounds(sigma);

  TransferReport rep;
  rep.symbolic = lr_membership(sigma.inverse(), r).verdict;

  const std::uint64_t k0 = map.k.front(), kJ = map.k.back();
  if (r.is_inf()) {
    // Sup form: A = sup_j sigma_{k(j)}^{-1} etc. Maxima are taken on the
    // log2 scale and exponentiated once, so steep sigma cannot overflow the
    // comparison itself.
    double a = -1e308, b = -1e308, bv = -1e308, bh = -1e308;
    for (std::uint64_t j = 0; j <= J; ++j) {
      a = std::max(a, -sigma.log2_eval(map.k[j]));
      b = std::max(b, -sigma.log2_eval(j));
    }
    for (std::uint64_t l = 0; l <= kJ; ++l) {
      double t = -sigma.log2_eval(l);
      bh = std::max(bh, t);
      if (l >= k0) bv = std::max(bv, t);
    }
    rep.A = std::exp2(a);
    rep.B = std::exp2(b);
    rep.B_visited = std::exp2(bv);
    rep.B_head = std::exp2(bh);
    rep.lower_constant =
        std::min(1.0, std::pow(rep_s.d0, static_cast<double>(map.kappa0 - 1)));
    rep.upper_ok = a <= bh + 1e-9;
    rep.lower_ok = a >= bv + std::log2(rep.lower_constant) - 1e-9;
  } else {
    double rd = to_double(r.value());
    long double a = 0, b = 0, bv = 0, bh = 0;
    for (std::uint64_t j = 0; j <= J; ++j) {
      a += std::exp2(-rd * sigma.log2_eval(map.k[j]));
      b += std::exp2(-rd * sigma.log2_eval(j));
    }
    for (std::uint64_t l = 0; l <= kJ; ++l) {
      long double t = std::exp2(-rd * sigma.log2_eval(l));
      bh += t;
      if (l >= k0) bv += t;
    }
    rep.A = static_cast<double>(a);
    rep.B = static_cast<double>(b);
    rep.B_visited = static_cast<double>(bv);
    rep.B_head = static_cast<double>(bh);
    rep.lower_constant = std::min(
        1.0, std::pow(rep_s.d0, static_cast<double>(map.kappa0 - 1) * rd));
    rep.upper_ok = static_cast<double>(a) <= map.c0 * rep.B_head * (1 + 1e-9);
    rep.lower_ok =
        map.kappa0 * rep.A >= rep.lower_constant * rep.B_visited * (1 - 1e-9);
  }

  if (!rep.upper_ok)
    throw std::logic_error("transfer upper bound A <= c0 * B_head failed");
  if (!rep.lower_ok)
    throw std::logic_error("transfer lower bound kappa0 * A >= c * B_visited failed");

  for (std::uint64_t j = 1; j <= J; j *= 2)
    rep.reindexed_trace.emplace_back(j, std::exp2(-sigma.log2_eval(map.k[j])));
  if (rep.reindexed_trace.empty() || rep.reindexed_trace.back().first != J)
    rep.reindexed_trace.emplace_back(J, std::exp2(-sigma.log2_eval(map.k[J])));
  return rep;
}

std::string standardization_csv(const StandardizationMap& map, const ParamSequence& sigma) {
  std::string out = "j,k,beta\n";
  char buf[64];
  for (std::size_t j = 0; j < map.k.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", std::exp2(sigma.log2_eval(map.k[j])));
    out += std::to_string(j);
    out += ',';
    out += std::to_string(map.k[j]);
    out += ',';
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace regdist
