#include "entangle/cmoe.hpp"

#include <cmath>

#include "entangle/io.hpp"

namespace entangle {

namespace {

using C = CriterionClass;
using nlohmann::json;

struct Reports {
  PureVector psi;
  states::Marginals marginals;
  ClassificationReport ab;
  ClassificationReport ac;
  std::optional<ClassificationReport> bc;
};

Reports classify_marginals(const PureVector& input, const MarginalCertificates& certs, const Tolerances& tol,
                           Roles roles, bool with_bc) {
  if (input.parties() != 3) throw UsageError("theorem checks need a tripartite pure state");
  PureVector psi = roles == kIdentityRoles ? input : permute_subsystems(input, roles, tol);
  auto m = states::reduce_all(psi, tol);
  auto ab = classify(m.ab, certs.ab, tol);
  auto ac = classify(m.ac, certs.ac, tol);
  std::optional<ClassificationReport> bc;
  if (with_bc) bc = classify(m.bc, certs.bc, tol);
  return {std::move(psi), std::move(m), std::move(ab), std::move(ac), std::move(bc)};
}

HypothesisStatus from_truth(Truth t) {
  switch (t) {
    case Truth::Yes: return HypothesisStatus::Satisfied;
    case Truth::No: return HypothesisStatus::NotSatisfied;
    case Truth::Unknown: return HypothesisStatus::Undecidable;
  }
  return HypothesisStatus::Undecidable;
}

json verdict_values(const ClassificationReport& r) {
  json out = json::object();
  for (auto c : kAllCriteria) out[to_string(c)] = to_string(r.value(c));
  return out;
}

json entropies(const Reports& rep) {
  return {{"AB", rep.ab.s_ab}, {"AC", rep.ac.s_ab}, {"A", rep.ab.s_a}, {"B", rep.ab.s_b}, {"C", rep.ac.s_b}};
}

// True if some class reads Yes while another reads No.
bool mixed(const ClassificationReport& r, std::initializer_list<CriterionClass> classes) {
  bool any_yes = false, any_no = false;
  for (auto c : classes) {
    any_yes |= r.value(c) == Truth::Yes;
    any_no |= r.value(c) == Truth::No;
  }
  return any_yes && any_no;
}

void attach_counterexample(TheoremCheck& check, const Reports& rep) {
  json reports = {{"AB", io::to_json(rep.ab)}, {"AC", io::to_json(rep.ac)}};
  if (rep.bc) reports["BC"] = io::to_json(*rep.bc);
  check.counterexample = json{{"psi", io::state_to_json(rep.psi)}, {"reports", std::move(reports)}};
}

void finish(TheoremCheck& check, bool ok, const Reports& rep) {
  check.conclusion = ok ? ConclusionStatus::Verified : ConclusionStatus::Violated;
  if (!ok) attach_counterexample(check, rep);
}

// Kleene three-valued connectives.
Truth and3(Truth a, Truth b) {
  if (a == Truth::No || b == Truth::No) return Truth::No;
  if (a == Truth::Yes && b == Truth::Yes) return Truth::Yes;
  return Truth::Unknown;
}

Truth or3(Truth a, Truth b) {
  if (a == Truth::Yes || b == Truth::Yes) return Truth::Yes;
  if (a == Truth::No && b == Truth::No) return Truth::No;
  return Truth::Unknown;
}

// Clause outcome: all `targets` No => Verified; any Yes => Violated.
ConclusionStatus all_no(std::initializer_list<Truth> targets) {
  bool unknown = false;
  for (auto t : targets) {
    if (t == Truth::Yes) return ConclusionStatus::Violated;
    unknown |= t == Truth::Unknown;
  }
  return unknown ? ConclusionStatus::Undecidable : ConclusionStatus::Verified;
}

}  // namespace

const char* to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::Satisfied: return "Satisfied";
    case HypothesisStatus::NotSatisfied: return "NotSatisfied";
    case HypothesisStatus::Undecidable: return "Undecidable";
  }
  return "?";
}

const char* to_string(ConclusionStatus s) {
  switch (s) {
    case ConclusionStatus::Verified: return "Verified";
    case ConclusionStatus::Violated: return "Violated";
    case ConclusionStatus::Vacuous: return "Vacuous";
    case ConclusionStatus::Undecidable: return "Undecidable";
  }
  return "?";
}

TheoremCheck verify_theorem1(const PureVector& psi, const MarginalCertificates& certs, const Tolerances& tol,
                             Roles roles) {
  const auto rep = classify_marginals(psi, certs, tol, roles, false);
  TheoremCheck check;
  check.theorem = "theorem1";
  check.evidence["AB"] = verdict_values(rep.ab);
  check.evidence["AC"] = verdict_values(rep.ac);
  check.evidence["entropies"] = entropies(rep);
  check.hypothesis = from_truth(rep.ac.value(C::Und));
  if (check.hypothesis != HypothesisStatus::Satisfied) return check;

  check.tags.push_back("prop3");
  if (rep.ac.value(C::Ppt) == Truth::Yes) check.tags.push_back("prop1");

  bool ok = !mixed(rep.ab, {C::Sep, C::Ppt, C::Und, C::UndOneWay, C::Red, C::Maj, C::Cen, C::CenRight});
  check.evidence["collapse_consistent"] = ok;
  if (rep.ab.value(C::CenRight) == Truth::Yes) {
    // rho_C and rho_AC must be isospectral with equal entropy and rank.
    const double gap = std::abs(rep.ac.s_b - rep.ac.s_ab);
    const double iso = spectrum_distance(rep.ac.spec_b, rep.ac.spec_ab);
    const bool rank_eq = rep.ac.rank_ab == rep.ac.rank_b;
    check.evidence["replay"] = {{"entropy_gap_C_AC", gap},
                                {"isospectral_residual", iso},
                                {"rank_AC", rep.ac.rank_ab},
                                {"rank_C", rep.ac.rank_b}};
    ok = ok && gap <= tol.ent && iso <= tol.eig && rank_eq;
  }
  finish(check, ok, rep);
  return check;
}

TheoremCheck verify_theorem2(const PureVector& psi, const MarginalCertificates& certs, const Tolerances& tol,
                             Roles roles) {
  const auto rep = classify_marginals(psi, certs, tol, roles, false);
  TheoremCheck check;
  check.theorem = "theorem2";
  check.evidence["AB"] = verdict_values(rep.ab);
  check.evidence["AC"] = verdict_values(rep.ac);
  check.evidence["entropies"] = entropies(rep);
  check.hypothesis = from_truth(rep.ac.value(C::CenRight));
  if (check.hypothesis != HypothesisStatus::Satisfied) return check;

  if (rep.ac.value(C::UndOneWay) == Truth::Yes) check.tags.push_back("prop2");

  bool ok = !mixed(rep.ab, {C::Sep, C::Ppt, C::Und});
  check.evidence["collapse_consistent"] = ok;
  if (rep.ab.value(C::Und) == Truth::Yes) {
    const double gap = std::abs(rep.ab.s_b - rep.ab.s_ab);
    check.evidence["replay"] = {{"entropy_gap_B_AB", gap},
                                {"rank_AB", rep.ab.rank_ab},
                                {"rank_B", rep.ab.rank_b},
                                {"sep", to_string(rep.ab.value(C::Sep))}};
    ok = ok && gap <= tol.ent && rep.ab.rank_ab == rep.ab.rank_b && rep.ab.value(C::Sep) == Truth::Yes;
  }
  finish(check, ok, rep);
  return check;
}

TheoremCheck verify_prop_sep_entropy(const PureVector& psi, const MarginalCertificates& certs,
                                     const Tolerances& tol, Roles roles) {
  const auto rep = classify_marginals(psi, certs, tol, roles, false);
  TheoremCheck check;
  check.theorem = "prop5";
  check.evidence["AB"] = verdict_values(rep.ab);
  check.evidence["AC"] = verdict_values(rep.ac);
  check.evidence["entropies"] = entropies(rep);
  check.hypothesis = from_truth(rep.ac.value(C::Sep));
  if (check.hypothesis != HypothesisStatus::Satisfied) return check;

  const double gap = std::abs(rep.ab.s_ab - rep.ab.s_b);
  check.evidence["entropy_gap_AB_B"] = gap;
  const Truth sep = rep.ab.value(C::Sep);
  if (sep == Truth::Unknown) {
    check.conclusion = ConclusionStatus::Undecidable;
    return check;
  }
  finish(check, (sep == Truth::Yes) == (gap <= tol.ent), rep);
  return check;
}

TheoremCheck verify_theorem3(const PureVector& psi, const MarginalCertificates& certs, const Tolerances& tol,
                             Roles roles) {
  const auto rep = classify_marginals(psi, certs, tol, roles, true);
  const auto& bc = *rep.bc;
  TheoremCheck check;
  check.theorem = "theorem3";
  check.evidence["AB"] = verdict_values(rep.ab);
  check.evidence["AC"] = verdict_values(rep.ac);
  check.evidence["BC"] = verdict_values(bc);
  check.evidence["entropies"] = entropies(rep);

  // Both AC and BC entangled.
  const Truth outer = and3(rep.ac.value(C::Sep) == Truth::Unknown ? Truth::Unknown
                           : rep.ac.value(C::Sep) == Truth::No    ? Truth::Yes
                                                                   : Truth::No,
                           bc.value(C::Sep) == Truth::Unknown ? Truth::Unknown
                           : bc.value(C::Sep) == Truth::No    ? Truth::Yes
                                                              : Truth::No);
  check.evidence["outer_hypothesis"] = to_string(from_truth(outer));
  if (outer != Truth::Yes) {
    check.hypothesis = from_truth(outer);
    return check;
  }

  const auto hyp_i = from_truth(rep.ab.value(C::CenRight));
  const auto hyp_ii = from_truth(rep.ab.value(C::Und));
  auto status_i = ConclusionStatus::Vacuous;
  auto status_ii = ConclusionStatus::Vacuous;
  if (hyp_i == HypothesisStatus::Satisfied) {
    status_i = all_no({rep.ac.value(C::Und), bc.value(C::Und)});
    check.tags.push_back("clause_i");
  }
  if (hyp_ii == HypothesisStatus::Satisfied) {
    status_ii = all_no({rep.ac.value(C::UndOneWay), bc.value(C::UndOneWay)});
    check.tags.push_back("clause_ii");
  }
  check.evidence["clause_i"] = {{"hypothesis", to_string(hyp_i)}, {"conclusion", to_string(status_i)}};
  check.evidence["clause_ii"] = {{"hypothesis", to_string(hyp_ii)}, {"conclusion", to_string(status_ii)}};
  check.evidence["coherent_information"] = {{"A_to_C", rep.ac.s_b - rep.ac.s_ab}, {"B_to_C", bc.s_b - bc.s_ab}};

  if (hyp_i != HypothesisStatus::Satisfied && hyp_ii != HypothesisStatus::Satisfied) {
    check.hypothesis = hyp_ii == HypothesisStatus::Undecidable ? HypothesisStatus::Undecidable
                                                               : HypothesisStatus::NotSatisfied;
    return check;
  }
  check.hypothesis = HypothesisStatus::Satisfied;
  if (status_i == ConclusionStatus::Violated || status_ii == ConclusionStatus::Violated) {
    check.conclusion = ConclusionStatus::Violated;
    attach_counterexample(check, rep);
  } else if (status_i == ConclusionStatus::Undecidable || status_ii == ConclusionStatus::Undecidable) {
    check.conclusion = ConclusionStatus::Undecidable;
  } else {
    check.conclusion = ConclusionStatus::Verified;
  }
  return check;
}

TheoremCheck verify_corollary1(const QuantumState& rho_ab, const StateCertificate& cert, const Tolerances& tol) {
  const auto report = classify(rho_ab, cert, tol);
  TheoremCheck check;
  check.theorem = "corollary1";
  check.evidence["AB"] = verdict_values(report);
  const Truth ppt = report.value(C::Ppt);
  const Truth sep = report.value(C::Sep);
  if (ppt == Truth::No || sep == Truth::Yes) {
    check.hypothesis = HypothesisStatus::NotSatisfied;
    return check;
  }
  if (sep == Truth::Unknown) {
    check.hypothesis = HypothesisStatus::Undecidable;
    return check;
  }
  check.hypothesis = HypothesisStatus::Satisfied;

  const auto psi = purify(rho_ab, tol);
  const std::size_t keep_ac[] = {0, 2}, keep_c[] = {2};
  const double s_ac = von_neumann_entropy(partial_trace(psi, keep_ac, tol), tol);
  const double s_c = von_neumann_entropy(partial_trace(psi, keep_c, tol), tol);
  const double conditional = s_ac - s_c;
  check.evidence["conditional_entropy_A_given_C"] = conditional;
  check.evidence["environment_dimension"] = psi.dims().back();
  check.conclusion = conditional < -tol.ent ? ConclusionStatus::Verified : ConclusionStatus::Violated;
  if (check.conclusion == ConclusionStatus::Violated)
    check.counterexample = json{{"rho", io::state_to_json(rho_ab)}, {"report", io::to_json(report)}};
  return check;
}

TheoremCheck verify_corollary3(const PureVector& psi, const MarginalCertificates& certs, const Tolerances& tol,
                               Roles roles) {
  const auto rep = classify_marginals(psi, certs, tol, roles, false);
  const auto& ab = rep.ab;
  const auto& ac = rep.ac;
  TheoremCheck check;
  check.theorem = "corollary3";
  check.evidence["AB"] = verdict_values(ab);
  check.evidence["AC"] = verdict_values(ac);
  check.hypothesis = HypothesisStatus::Satisfied;

  const std::array<Truth, 5> conditions = {
      and3(ab.value(C::Sep), ac.value(C::Sep)),
      and3(ab.value(C::Ppt), ac.value(C::Ppt)),
      and3(ab.value(C::Und), ac.value(C::Und)),
      or3(and3(ab.value(C::Und), ac.value(C::UndOneWay)), and3(ac.value(C::Und), ab.value(C::UndOneWay))),
      or3(and3(ab.value(C::Und), ac.value(C::CenRight)), and3(ac.value(C::Und), ab.value(C::CenRight))),
  };
  json cond = json::array();
  bool any_yes = false, any_no = false;
  for (auto t : conditions) {
    cond.push_back(to_string(t));
    any_yes |= t == Truth::Yes;
    any_no |= t == Truth::No;
  }
  check.evidence["conditions"] = std::move(cond);
  finish(check, !(any_yes && any_no), rep);
  return check;
}

}  // namespace entangle
