#pragma once

// Numerical checkers for the converse-monogamy collapse statements on
// tripartite pure states. Each checker classifies the relevant two-party
// marginals and reports whether the hypothesis holds and, if so, whether the
// conclusion is borne out by the verdicts.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entangle/criteria.hpp"
#include "entangle/states.hpp"

namespace entangle {

enum class HypothesisStatus { Satisfied, NotSatisfied, Undecidable };
enum class ConclusionStatus { Verified, Violated, Vacuous, Undecidable };

const char* to_string(HypothesisStatus s);
const char* to_string(ConclusionStatus s);

/// Subsystem roles: roles[k] is the input subsystem that plays A, B, C.
using Roles = std::array<std::size_t, 3>;
inline constexpr Roles kIdentityRoles = {0, 1, 2};

struct TheoremCheck {
  std::string theorem;
  HypothesisStatus hypothesis = HypothesisStatus::NotSatisfied;
  ConclusionStatus conclusion = ConclusionStatus::Vacuous;
  nlohmann::json evidence = nlohmann::json::object();
  std::vector<std::string> tags;
  /// Full replay record, present only for Violated.
  std::optional<nlohmann::json> counterexample;
};

/// Hypothesis UND(rho_AC); conclusion: SEP, PPT, UND, UND_ONEWAY, RED, MAJ,
/// CEN, CEN_RIGHT on rho_AB never mix Yes and No. Replays the isospectrality
/// and rank steps whenever CEN_RIGHT(rho_AB) is Yes.
TheoremCheck verify_theorem1(const PureVector& psi, const MarginalCertificates& certs = {},
                             const Tolerances& tol = {}, Roles roles = kIdentityRoles);

/// Hypothesis CEN_RIGHT(rho_AC); conclusion: SEP, PPT, UND on rho_AB agree.
TheoremCheck verify_theorem2(const PureVector& psi, const MarginalCertificates& certs = {},
                             const Tolerances& tol = {}, Roles roles = kIdentityRoles);

/// Hypothesis SEP(rho_AC); conclusion: SEP(rho_AB) iff S(rho_AB) = S(rho_B).
TheoremCheck verify_prop_sep_entropy(const PureVector& psi, const MarginalCertificates& certs = {},
                                     const Tolerances& tol = {}, Roles roles = kIdentityRoles);

/// Outer hypothesis: rho_AC and rho_BC entangled. Clause (i): CEN_RIGHT(rho_AB)
/// forces both distillable. Clause (ii): UND(rho_AB) forces both one-way
/// distillable.
TheoremCheck verify_theorem3(const PureVector& psi, const MarginalCertificates& certs = {},
                             const Tolerances& tol = {}, Roles roles = kIdentityRoles);

/// Bound-entangled rho_AB (PPT, not SEP): its purification has S(A|C) < 0.
TheoremCheck verify_corollary1(const QuantumState& rho_ab, const StateCertificate& cert,
                               const Tolerances& tol = {});

/// The five pairwise conditions on (rho_AB, rho_AC) never disagree.
TheoremCheck verify_corollary3(const PureVector& psi, const MarginalCertificates& certs = {},
                               const Tolerances& tol = {}, Roles roles = kIdentityRoles);

}  // namespace entangle
