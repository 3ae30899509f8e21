#include "regdist/lr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace regdist {

ExtReal conjugate(const ExtReal& r) {
  if (r.is_inf()) return ExtReal(Rational(1));
  if (r.value() <= 1) return ExtReal::infinity();
  return ExtReal(r.value() / (r.value() - 1));
}

ExtReal interp_index(InterpIndex kind, const ExtReal& a, const ExtReal& b) {
  switch (kind) {
    case InterpIndex::BminusP: {
      const ExtReal &p = a, &q = b;
      if (p.is_inf()) throw std::invalid_argument("BminusP index needs finite p");
      if (!(q > p)) throw std::invalid_argument("BminusP index needs q > p");
      if (q.is_inf()) return p;
      return ExtReal(p.value() * q.value() / (q.value() - p.value()));
    }
    case InterpIndex::Bminus2: {
      const ExtReal& q = a;
      if (!(q > ExtReal::from(2))) throw std::invalid_argument("Bminus2 index needs q > 2");
      if (q.is_inf()) return ExtReal::from(2);
      return ExtReal(2 * q.value() / (q.value() - 2));
    }
    case InterpIndex::QStar: {
      // 1/q* = (1/q2 - 1/q1)_+ ; a = q1 (source), b = q2 (target).
      Rational diff = b.reciprocal_or_zero() - a.reciprocal_or_zero();
      if (diff <= 0) return ExtReal::infinity();
      return ExtReal(Rational(1) / diff);
    }
  }
  throw std::logic_error("unreachable interp kind");
}

MembershipVerdict lr_membership(const ParamSequence& u, const ExtReal& r) {
  const Rational &t = u.s(), &beta = u.b(), &gamma = u.c();
  MembershipVerdict out;

  auto member = [&](std::string why) {
    out.verdict = Membership::Member;
    out.reason = std::move(why);
    return out;
  };
  auto not_member = [&](std::string why) {
    out.verdict = Membership::NotMember;
    out.reason = std::move(why);
    return out;
  };

  if (t < 0) return member("t = " + format_rational(t) + " < 0: geometric decay dominates");
  if (t > 0) return not_member("t = " + format_rational(t) + " > 0: terms grow geometrically");

  if (r.is_inf()) {
    if (beta < 0) return member("t = 0, beta = " + format_rational(beta) + " < 0: terms tend to 0");
    if (beta > 0) return not_member("t = 0, beta = " + format_rational(beta) + " > 0: unbounded");
    if (gamma <= 0)
      return member("t = 0, beta = 0, gamma = " + format_rational(gamma) + " <= 0: bounded");
    return not_member("t = 0, beta = 0, gamma = " + format_rational(gamma) +
                      " > 0: log factor unbounded");
  }

  Rational br = beta * r.value();
  Rational gr = gamma * r.value();
  if (br < -1)
    return member("t = 0, beta*r = " + format_rational(br) + " < -1: summable power");
  if (br == -1) {
    if (gr < -1)
      return member("t = 0, beta*r = -1, gamma*r = " + format_rational(gr) +
                    " < -1: borderline case converges by the log factor");
    return not_member("t = 0, beta*r = -1, gamma*r = " + format_rational(gr) +
                      " >= -1: borderline case diverges");
  }
  return not_member("t = 0, beta*r = " + format_rational(br) + " > -1: power too large");
}

MembershipVerdict lr_membership_sampled(const SampledSequence& u, const ExtReal& r,
                                        std::uint64_t budget) {
  if (budget > u.size())
    throw std::invalid_argument("membership budget exceeds the sampled prefix length");
  MembershipVerdict out;
  out.verdict = Membership::Inconclusive;
  out.reason = "finite prefix cannot settle tail behaviour";

  double acc = 0;
  double rr = r.is_inf() ? 0 : r.to_double();
  std::uint64_t next_cut = 1;
  for (std::uint64_t j = 0; j < budget; ++j) {
    double v = u.eval(j);
    if (r.is_inf())
      acc = std::max(acc, v);
    else
      acc += std::pow(v, rr);
    if (j + 1 == next_cut || j + 1 == budget) {
      out.trace.emplace_back(j + 1, acc);
      while (next_cut <= j + 1) next_cut *= 2;
    }
  }
  return out;
}

namespace {

// Least j > lo with a_j >= target, or nullopt within the cap. Doubling probe;
// the family's terms are eventually monotone so overshoot is at most 2x.
std::optional<std::uint64_t> find_spike(const ParamSequence& a, std::uint64_t lo, double target,
                                        std::uint64_t cap) {
  for (std::uint64_t j = lo; j <= cap;) {
    if (a.eval(j) >= target) return j;
    std::uint64_t next = j < 8 ? j + 1 : j + j / 2;
    if (next <= j) break;
    j = next;
  }
  return std::nullopt;
}

// log2(2^x + 2^y), stable for far-apart magnitudes.
double log2_add(double x, double y) {
  if (x < y) std::swap(x, y);
  if (y == -std::numeric_limits<double>::infinity()) return x;
  return x + std::log2(1.0 + std::exp2(y - x));
}

}  // namespace

ReverseHolderWitness reverse_holder_witness(const ParamSequence& a, const ExtReal& r,
                                            std::uint64_t K) {
  if (K == 0) throw std::invalid_argument("witness cutoff K must be positive");
  MembershipVerdict pre = lr_membership(a, conjugate(r));
  if (pre.verdict != Membership::NotMember)
    throw std::invalid_argument(
        "reverse Holder witness requires a outside l_{r'}; membership check said otherwise: " +
        pre.reason);

  ReverseHolderWitness w;
  w.r = r;
  const std::uint64_t cap = 4 * K;

  if (r.is_inf()) {
    // a is not summable; pairing against the constant sequence already grows.
    for (std::uint64_t j = 0; j <= cap; ++j) w.b.emplace_back(j, 1.0);
    long double S = 0;
    std::uint64_t j = 0;
    for (std::uint64_t cut : {K, 2 * K, 4 * K}) {
      for (; j <= cut; ++j) S += exp2l(a.log2_eval(j));
      w.growth.emplace_back(cut, static_cast<double>(S), 1.0);
    }
    return w;
  }

  double rd = r.to_double();
  if (r.value() <= 1) {
    // Spike construction: a is unbounded; put mass l^{-1/r-1} where a clears
    // l^{1/r+1}, so every spike contributes at least 1 to the pairing.
    double expo = 1.0 / rd + 1.0;
    std::uint64_t lo = 0;
    for (std::uint64_t l = 1;; ++l) {
      double target = std::pow((double)l, expo);
      auto hit = find_spike(a, lo, target, cap);
      if (!hit) break;
      w.b.emplace_back(*hit, std::pow((double)l, -expo));
      lo = *hit + 1;
    }
    if (w.b.empty())
      throw std::invalid_argument("witness cutoff too small: no spike index fits below 4K");
    double S = 0, norm_r = 0;
    std::size_t i = 0;
    for (std::uint64_t cut : {K, 2 * K, 4 * K}) {
      for (; i < w.b.size() && w.b[i].first <= cut; ++i) {
        S += a.eval(w.b[i].first) * w.b[i].second;
        norm_r += std::pow(w.b[i].second, rd);
      }
      w.growth.emplace_back(cut, S, std::pow(norm_r, 1.0 / rd));
    }
    return w;
  }

  // Duality witness with the running-mass normalizer: with A_j the partial
  // sum of a^{r'} and delta = (r-1)/2,
  //   b_j = a_j^{r'-1} / A_j^{(1+delta)/r}
  // has sum b^r = sum dA_j / A_j^{1+delta} < inf, while the pairing
  // sum a_j b_j = sum dA_j / A_j^{(1+delta)/r} diverges since (1+delta)/r < 1.
  // Everything runs on the log2 scale; b entries can underflow to 0 only far
  // out in the tail, where their true size is below 2^-1000.
  double rp = rd / (rd - 1.0);
  double expo = (1.0 + (rd - 1.0) / 2.0) / rd;
  std::vector<double> log2b(cap + 1);
  double log2A = -std::numeric_limits<double>::infinity();
  for (std::uint64_t j = 0; j <= cap; ++j) {
    double la = a.log2_eval(j);
    log2A = log2_add(log2A, rp * la);
    log2b[j] = (rp - 1.0) * la - expo * log2A;
    w.b.emplace_back(j, std::exp2(log2b[j]));
  }

  long double S = 0, norm_r = 0;
  std::uint64_t j = 0;
  for (std::uint64_t cut : {K, 2 * K, 4 * K}) {
    for (; j <= cut; ++j) {
      S += exp2l(a.log2_eval(j) + log2b[j]);
      norm_r += exp2l(rd * log2b[j]);
    }
    w.growth.emplace_back(cut, static_cast<double>(S),
                          static_cast<double>(powl(norm_r, 1.0L / rd)));
  }
  return w;
}

}  // namespace regdist
