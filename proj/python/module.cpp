// Python bindings. Exactness-sensitive values (indices, rates) cross the
// boundary as strings; measurements cross as floats.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "regdist/decide.hpp"
#include "regdist/standardize.hpp"
#include "regdist/verify.hpp"

namespace py = pybind11;
using namespace regdist;

namespace {

Family family_from(const std::string& f) {
  if (f == "B" || f == "b") return Family::B;
  if (f == "F" || f == "f") return Family::F;
  throw std::invalid_argument("family must be 'B' or 'F'");
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NotMember: return "not_member";
    default: return "inconclusive";
  }
}

SpaceSpec spec_from(const std::string& family, unsigned n, const std::string& p,
                    const std::string& q, const std::string& sigma, const std::string& N) {
  SpaceSpec s;
  s.family = family_from(family);
  s.n = n;
  s.p = parse_extreal(p);
  s.q = parse_extreal(q);
  s.sigma = parse_sequence(sigma);
  s.N = parse_sequence(N);
  return s;
}

}  // namespace

PYBIND11_MODULE(_regdist, m) {
  m.doc() = "Containment tests for function spaces built on generalized smoothness scales";

  m.def(
      "normalize_sequence",
      [](const std::string& text) { return format_sequence(parse_sequence(text)); },
      py::arg("text"),
      "Parse a weight/scale expression like '2^(1*j)*(1+j)^-1/2' and return its "
      "canonical form.");

  m.def(
      "conjugate_index",
      [](const std::string& r) { return format_extreal(conjugate(parse_extreal(r))); },
      py::arg("r"), "Conjugate exponent with the conventions 1/r' = (1 - 1/r)_+ and inf' = 1.");

  m.def(
      "sequence_membership",
      [](const std::string& sigma, const std::string& r) {
        MembershipVerdict v = lr_membership(parse_sequence(sigma), parse_extreal(r));
        py::dict out;
        out["verdict"] = membership_name(v.verdict);
        out["reason"] = v.reason;
        return out;
      },
      py::arg("sigma"), py::arg("r"), "Exact l_r membership test for a parametric sequence.");

  m.def(
      "regularity",
      [](const std::string& family, unsigned n, const std::string& p, const std::string& q,
         const std::string& sigma, const std::string& N) {
        SpaceSpec spec = spec_from(family, n, p, q, sigma, N);
        RegularityVerdict v = regularity(spec);
        py::dict out;
        out["contained"] = v.contained;
        out["case_id"] = v.case_id;
        out["tested"] = format_sequence(v.tested);
        out["index"] = format_extreal(v.index);
        out["membership"] = membership_name(v.membership.verdict);
        out["explanation"] = v.explanation;
        return out;
      },
      py::arg("family"), py::arg("n"), py::arg("p"), py::arg("q"), py::arg("sigma"),
      py::arg("N"),
      "Decide whether every element of the space is a regular distribution.");

  m.def(
      "regularity_json",
      [](const std::string& family, unsigned n, const std::string& p, const std::string& q,
         const std::string& sigma, const std::string& N) {
        SpaceSpec spec = spec_from(family, n, p, q, sigma, N);
        return verdict_json(spec, regularity(spec));
      },
      py::arg("family"), py::arg("n"), py::arg("p"), py::arg("q"), py::arg("sigma"),
      py::arg("N"), "Same verdict as regularity(), as the stable JSON document.");

  m.def(
      "classical_regularity",
      [](const std::string& family, unsigned n, const std::string& s, const std::string& p,
         const std::string& q) {
        return classical_regularity(family_from(family), n, parse_rational(s), parse_extreal(p),
                                    parse_extreal(q));
      },
      py::arg("family"), py::arg("n"), py::arg("s"), py::arg("p"), py::arg("q"),
      "Closed-form answer for the constant-exponent spaces on the dyadic scale.");

  m.def(
      "boyd",
      [](const std::string& sigma) {
        ParamSequence s = parse_sequence(sigma);
        AdmissibilityReport adm = assumption_N_check(s);
        BoydIndices bi = boyd_indices(s);
        py::dict out;
        out["alpha_upper"] = format_rational(bi.alpha);
        out["beta_lower"] = format_rational(bi.beta);
        out["d0"] = adm.d0;
        out["d1"] = adm.d1;
        out["satisfies_assumption_N"] = adm.satisfies_assumption_N;
        if (adm.satisfies_assumption_N) out["kappa0"] = kappa0(s);
        return out;
      },
      py::arg("sigma"), "Boyd-type indices and admissibility constants of a sequence.");

  m.def(
      "standardize",
      [](const std::string& sigma, const std::string& N, std::uint64_t J) {
        ParamSequence sg = parse_sequence(sigma);
        StandardizationMap map = build_map(sg, parse_sequence(N), J);
        py::dict out;
        out["kappa0"] = map.kappa0;
        out["kappa1"] = map.kappa1;
        out["j0"] = map.j0;
        out["c0"] = map.c0;
        out["mu0"] = map.mu0;
        out["mu1"] = map.mu1;
        out["k"] = map.k;
        out["csv"] = standardization_csv(map, sg);
        return out;
      },
      py::arg("sigma"), py::arg("N"), py::arg("J") = 64,
      "Reindexing map onto the dyadic scale, with its step constants.");

  m.def(
      "atom_orders",
      [](const std::string& sigma, const std::string& N, unsigned n, const std::string& p,
         const std::string& q, const std::string& family) {
        AtomRequirements a = atom_requirements(parse_sequence(sigma), parse_sequence(N), n,
                                               parse_extreal(p), parse_extreal(q),
                                               family_from(family));
        py::dict out;
        out["M_min"] = a.M_min;
        out["L_min"] = a.L_min;
        out["M_bound"] = format_rational(a.M_bound);
        out["L_bound"] = format_rational(a.L_bound);
        return out;
      },
      py::arg("sigma"), py::arg("N"), py::arg("n"), py::arg("p"), py::arg("q"),
      py::arg("family"), "Smallest admissible atom orders (L_min = -1 means none required).");

  m.def(
      "profile",
      [](int L) {
        BasicFunction phi = build_basic_function(L);
        py::dict out;
        out["L"] = phi.L;
        out["C1"] = phi.C1;
        out["C2"] = phi.C2;
        out["C3"] = phi.C3;
        out["shell_weight"] = phi.shell_weight;
        py::list moments;
        for (int g = 0; g <= L; ++g) moments.append(moment(phi, g, phi.grid_step));
        out["moments"] = moments;
        return out;
      },
      py::arg("L"),
      "Constants and residual moments of the compactly supported profile with L vanishing "
      "moments.");

  m.def(
      "lacunary_trace",
      [](const std::string& b, unsigned K, std::uint64_t grid) {
        LacunaryReport rep = lacunary_L1(parse_sequence(b), K, grid);
        py::list rows;
        for (const LacunaryRow& row : rep.trace) {
          py::dict r;
          r["K"] = row.K;
          r["l1_norm"] = row.l1_norm;
          r["l2_partial"] = row.l2_partial;
          rows.append(r);
        }
        return rows;
      },
      py::arg("b"), py::arg("K"), py::arg("grid"),
      "L1 norms of lacunary trigonometric partial sums with coefficients b_j.");
}
