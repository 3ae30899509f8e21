#include "regdist/decide.hpp"

#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace regdist {

namespace {

const ExtReal kOne = ExtReal::from(1);
const ExtReal kTwo = ExtReal::from(2);

void validate(const SpaceSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("dimension n must be >= 1");
  if (spec.family == Family::F && spec.p.is_inf())
    throw std::invalid_argument("F requires p < inf");
  if (!assumption_N_check(spec.N).satisfies_assumption_N)
    throw std::invalid_argument("N violates the growth assumption: ratio infimum must exceed 1");
}

// n*(1/p - 1) as an exact rational; only called with finite p.
Rational lift_exponent(unsigned n, const ExtReal& p) {
  return Rational(n) * (Rational(1) / p.value() - 1);
}

// Knife-edge form: when the tested sequence is purely polynomial, membership
// in l_r reduces to beta*r < -1. For sigma = 2^{s j}(1+j)^b against N = 2^j
// the tested beta is -b, so this reads "contained iff b > 1/r", strict.
std::string example_form(const ParamSequence& cond, const ExtReal& r) {
  if (cond.s() != 0 || cond.c() != 0 || r.is_inf()) return "";
  Rational threshold = Rational(-1) / r.value();
  return "; knife edge: contained iff the tested (1+j)-exponent lies strictly below " +
         format_rational(threshold) + " (equality fails: no log gain)";
}

RegularityVerdict make_verdict(std::string case_id, ParamSequence cond, ExtReal r) {
  RegularityVerdict v;
  v.case_id = std::move(case_id);
  v.tested = std::move(cond);
  v.index = std::move(r);
  v.membership = lr_membership(v.tested, v.index);
  v.contained = v.membership.verdict == Membership::Member;
  v.explanation = v.case_id + ": test (" + format_sequence(v.tested) + ") in l_" +
                  format_extreal(v.index) + "; " + v.membership.reason +
                  example_form(v.tested, v.index);
  return v;
}

}  // namespace

bool classical_regularity(Family family, unsigned n, const Rational& s, const ExtReal& p,
                          const ExtReal& q) {
  Rational lift_plus = p.is_inf() ? Rational(0) : lift_exponent(n, p);
  if (lift_plus < 0) lift_plus = 0;

  if (family == Family::F) {
    if (p.is_inf()) throw std::invalid_argument("F requires p < inf");
    if (p < kOne) return s >= lift_plus;
    return s > 0 || (s == 0 && q <= kTwo);
  }
  if (s > lift_plus) return true;
  if (p <= kOne && s == lift_plus && q <= kOne) return true;
  if (p > kOne && s == 0 && q <= min(p, kTwo)) return true;
  return false;
}

RegularityVerdict regularity_B(const SpaceSpec& spec) {
  if (spec.family != Family::B) throw std::invalid_argument("regularity_B needs family B");
  validate(spec);
  const ExtReal &p = spec.p, &q = spec.q;

  if (p <= kOne) {
    ParamSequence cond = spec.sigma.inverse().times(spec.N.pow(lift_exponent(spec.n, p)));
    return make_verdict("B1", std::move(cond), conjugate(q));
  }
  ParamSequence cond = spec.sigma.inverse();
  if (q <= min(p, kTwo)) return make_verdict("B2", std::move(cond), ExtReal::infinity());
  if (p <= kTwo) return make_verdict("B3", std::move(cond), interp_index(InterpIndex::BminusP, p, q));
  return make_verdict("B4", std::move(cond), interp_index(InterpIndex::Bminus2, q));
}

RegularityVerdict regularity_F(const SpaceSpec& spec) {
  if (spec.family != Family::F) throw std::invalid_argument("regularity_F needs family F");
  validate(spec);
  const ExtReal &p = spec.p, &q = spec.q;

  if (p < kOne) {
    ParamSequence cond = spec.sigma.inverse().times(spec.N.pow(lift_exponent(spec.n, p)));
    return make_verdict("F1", std::move(cond), ExtReal::infinity());
  }
  ParamSequence cond = spec.sigma.inverse();
  if (q <= kTwo) return make_verdict("F2", std::move(cond), ExtReal::infinity());
  return make_verdict("F3", std::move(cond), interp_index(InterpIndex::Bminus2, q));
}

RegularityVerdict regularity(const SpaceSpec& spec) {
  return spec.family == Family::B ? regularity_B(spec) : regularity_F(spec);
}

namespace {

EmbeddingVerdict make_embedding(ParamSequence cond, ExtReal qstar) {
  EmbeddingVerdict v;
  v.tested = std::move(cond);
  v.index = std::move(qstar);
  v.membership = lr_membership(v.tested, v.index);
  v.status = v.membership.verdict == Membership::Member ? EmbeddingStatus::Holds
                                                        : EmbeddingStatus::Unknown;
  v.explanation = "sufficient condition: (" + format_sequence(v.tested) + ") in l_" +
                  format_extreal(v.index) + "; " + v.membership.reason +
                  (v.status == EmbeddingStatus::Holds
                       ? ""
                       : "; the criterion is one-directional, so failure is not a disproof");
  return v;
}

}  // namespace

EmbeddingVerdict embedding_B(const ParamSequence& sigma, const ParamSequence& tau,
                             const ParamSequence& N, unsigned n, const ExtReal& p1,
                             const ExtReal& p2, const ExtReal& q1, const ExtReal& q2) {
  if (!(p1 <= p2)) throw std::invalid_argument("B-embedding needs p1 <= p2");
  Rational e = Rational(n) * (p1.reciprocal_or_zero() - p2.reciprocal_or_zero());
  ParamSequence cond = sigma.inverse().times(tau).times(N.pow(e));
  return make_embedding(std::move(cond), interp_index(InterpIndex::QStar, q1, q2));
}

EmbeddingVerdict embedding_F(const ParamSequence& sigma, const ParamSequence& tau,
                             const ExtReal& p, const ExtReal& q1, const ExtReal& q2) {
  if (p.is_inf()) throw std::invalid_argument("F requires p < inf");
  ParamSequence cond = sigma.inverse().times(tau);
  return make_embedding(std::move(cond), interp_index(InterpIndex::QStar, q1, q2));
}

TargetVerdict embeds_in_target(const SpaceSpec& spec) {
  TargetVerdict out;
  if (spec.family == Family::B && spec.p.is_inf())
    out.target = TargetSpace::Bmo;
  else if (spec.p <= kOne)
    out.target = TargetSpace::LocalHardy;
  else
    out.target = TargetSpace::LebesgueMax1P;
  out.verdict = regularity(spec);
  return out;
}

std::pair<SpaceSpec, SpaceSpec> bf_sandwich(const SpaceSpec& f_spec) {
  if (f_spec.family != Family::F) throw std::invalid_argument("bf_sandwich needs an F space");
  validate(f_spec);
  SpaceSpec lower = f_spec, upper = f_spec;
  lower.family = Family::B;
  upper.family = Family::B;
  lower.q = min(f_spec.p, f_spec.q);
  upper.q = max(f_spec.p, f_spec.q);
  return {lower, upper};
}

BfbReport bfb_sharp(const ExtReal& p1, const ExtReal& p, const ExtReal& p2, const ExtReal& u,
                    const ExtReal& v, const ParamSequence& sigma, const ParamSequence& N,
                    unsigned n) {
  if (!(p1 < p && p < p2)) throw std::invalid_argument("bfb_sharp needs p1 < p < p2");
  if (p.is_inf()) throw std::invalid_argument("bfb_sharp needs p < inf");
  BfbReport rep;
  Rational e1 = Rational(n) * (p1.reciprocal_or_zero() - p.reciprocal_or_zero());
  Rational e2 = Rational(n) * (p2.reciprocal_or_zero() - p.reciprocal_or_zero());
  rep.sigma_lower = N.pow(e1).times(sigma);
  rep.sigma_upper = N.pow(e2).times(sigma);
  rep.sharp = u <= p && p <= v;
  rep.explanation = std::string("double embedding holds iff u <= p <= v; here u = ") +
                    format_extreal(u) + ", p = " + format_extreal(p) + ", v = " +
                    format_extreal(v) + ": " + (rep.sharp ? "holds" : "fails");
  return rep;
}

AtomRequirements atom_requirements(const ParamSequence& sigma, const ParamSequence& N,
                                   unsigned n, const ExtReal& p, const ExtReal& q,
                                   Family family) {
  BoydIndices bs = boyd_indices(sigma), bn = boyd_indices(N);
  if (bn.beta <= 0)
    throw std::invalid_argument("atomic thresholds need a positive lower Boyd index for N");

  AtomRequirements out;
  out.M_bound = bs.alpha / bn.beta;

  ExtReal mins = family == Family::B ? min(kOne, p) : min(kOne, min(p, q));
  Rational inv_min = Rational(1) / mins.value();  // mins <= 1, always finite
  out.L_bound = Rational(-1) + Rational(n) * (bn.alpha / bn.beta * inv_min - 1) - bs.beta / bn.beta;

  long long m = (floor_int(out.M_bound) + 1).convert_to<long long>();
  out.M_min = m < 0 ? 0 : m;
  long long l = (floor_int(out.L_bound) + 1).convert_to<long long>();
  out.L_min = l < -1 ? -1 : l;
  return out;
}

std::string family_name(Family f) { return f == Family::B ? "B" : "F"; }

std::string verdict_json(const SpaceSpec& spec, const RegularityVerdict& v) {
  nlohmann::ordered_json j;
  j["family"] = family_name(spec.family);
  j["n"] = spec.n;
  j["p"] = format_extreal(spec.p);
  j["q"] = format_extreal(spec.q);
  j["sigma"] = format_sequence(spec.sigma);
  j["N"] = format_sequence(spec.N);
  j["case_id"] = v.case_id;
  nlohmann::ordered_json cond;
  cond["C"] = v.tested.scale_is_rational() ? format_rational(v.tested.scale_rational())
                                           : "2^" + std::to_string(v.tested.log2_scale());
  cond["s"] = format_rational(v.tested.s());
  cond["b"] = format_rational(v.tested.b());
  cond["c"] = format_rational(v.tested.c());
  j["condition"] = cond;
  j["index_r"] = format_extreal(v.index);
  j["contained"] = v.contained;
  j["explanation"] = v.explanation;
  return j.dump(2);
}

}  // namespace regdist
