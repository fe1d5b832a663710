#pragma once

// Three-valued separability-criterion classifiers and implication-chain
// propagation over the nine-class bipartite hierarchy.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "entangle/linalg.hpp"
#include "entangle/states.hpp"

namespace entangle {

enum class CriterionClass { Sep, Ppt, Und, UndOneWay, Red, Maj, CenLeft, CenRight, Cen };

inline constexpr std::size_t kCriterionCount = 9;
inline constexpr std::array<CriterionClass, kCriterionCount> kAllCriteria = {
    CriterionClass::Sep,      CriterionClass::Ppt, CriterionClass::Und,
    CriterionClass::UndOneWay, CriterionClass::Red, CriterionClass::Maj,
    CriterionClass::CenLeft,  CriterionClass::CenRight, CriterionClass::Cen};

/// "SEP", "PPT", "UND", "UND_ONEWAY", "RED", "MAJ", "CEN_LEFT", "CEN_RIGHT", "CEN".
const char* to_string(CriterionClass c);
CriterionClass criterion_from_string(const std::string& name);

enum class Truth { Yes, No, Unknown };
const char* to_string(Truth t);

enum class Provenance { Direct, Certificate, Propagation };
const char* to_string(Provenance p);

struct Verdict {
  Truth value = Truth::Unknown;
  Provenance provenance = Provenance::Direct;
  std::string rule;                       // rule that decided the value
  std::map<std::string, double> witness;  // numbers backing a Yes/No
  std::vector<std::string> inconclusive;  // rules tried when Unknown

  bool yes() const { return value == Truth::Yes; }
  bool no() const { return value == Truth::No; }
  bool unknown() const { return value == Truth::Unknown; }
};

/// Two decisions that cannot both hold. Signals a bug or tolerance failure.
class ConsistencyError : public Error {
 public:
  ConsistencyError(const std::string& what, std::string first, std::string second)
      : Error(what), first_(std::move(first)), second_(std::move(second)) {}
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

/// Marginals, spectra, entropies and ranks of a bipartite state, computed once
/// and shared by all checks.
struct BipartiteData {
  QuantumState rho;
  QuantumState rho_a;
  QuantumState rho_b;
  Spectrum spec_ab, spec_a, spec_b;
  double s_ab = 0, s_a = 0, s_b = 0;
  std::size_t rank_ab = 0, rank_a = 0, rank_b = 0;
};

BipartiteData analyze(const QuantumState& rho, const Tolerances& tol = {});

Verdict check_ppt(const BipartiteData& data, const Tolerances& tol = {});
Verdict check_red(const BipartiteData& data, const Tolerances& tol = {});
Verdict check_maj(const BipartiteData& data, const Tolerances& tol = {});

struct CenVerdicts {
  Verdict left;
  Verdict right;
  Verdict both;
};
CenVerdicts check_cen(const BipartiteData& data, const Tolerances& tol = {});

Verdict check_und(const BipartiteData& data, const StateCertificate& cert, const Verdict& ppt,
                  const Tolerances& tol = {});
Verdict check_und_oneway(const BipartiteData& data, const StateCertificate& cert, const Verdict& und,
                         const Tolerances& tol = {});
Verdict check_sep(const BipartiteData& data, const StateCertificate& cert, const Verdict& ppt,
                  const Verdict& und, const Tolerances& tol = {});

// Convenience overloads that analyse the state themselves.
Verdict check_ppt(const QuantumState& rho, const Tolerances& tol = {});
Verdict check_red(const QuantumState& rho, const Tolerances& tol = {});
Verdict check_maj(const QuantumState& rho, const Tolerances& tol = {});
CenVerdicts check_cen(const QuantumState& rho, const Tolerances& tol = {});
Verdict check_und(const QuantumState& rho, const StateCertificate& cert, const Tolerances& tol = {});
Verdict check_und_oneway(const QuantumState& rho, const StateCertificate& cert, const Tolerances& tol = {});
Verdict check_sep(const QuantumState& rho, const StateCertificate& cert, const Tolerances& tol = {});

/// Directed implication edges of the hierarchy (premise, conclusion).
struct ChainEdge {
  CriterionClass from;
  CriterionClass to;
};
const std::vector<ChainEdge>& implication_edges();

struct ClassificationReport {
  Dims dims;
  std::array<Verdict, kCriterionCount> verdicts;
  Spectrum spec_ab, spec_a, spec_b;
  double s_ab = 0, s_a = 0, s_b = 0;
  std::size_t rank_ab = 0, rank_a = 0, rank_b = 0;
  double ppt_min_eigenvalue = 0;
  std::string certificate;
  std::vector<std::string> trace;

  const Verdict& operator[](CriterionClass c) const { return verdicts[static_cast<std::size_t>(c)]; }
  Verdict& operator[](CriterionClass c) { return verdicts[static_cast<std::size_t>(c)]; }
  Truth value(CriterionClass c) const { return (*this)[c].value; }
};

/// Runs all nine checks and propagates Yes forward / No backward along the
/// implication chains. Throws ConsistencyError on any contradiction.
ClassificationReport classify(const QuantumState& rho, const StateCertificate& cert = {},
                              const Tolerances& tol = {});

/// Edges of the implication chains that the report breaks; empty when sound.
std::vector<std::string> chain_violations(const ClassificationReport& report);

}  // namespace entangle
