#include "entangle/criteria.hpp"

#include <algorithm>
#include <sstream>

#include "entangle/kernels.hpp"

namespace entangle {

namespace {

using Index = Eigen::Index;

struct Rule {
  std::string name;
  Provenance provenance = Provenance::Direct;
};

std::string describe(CriterionClass c, const Verdict& v) {
  std::ostringstream os;
  os << to_string(c) << "=" << to_string(v.value) << " [" << to_string(v.provenance) << ":" << v.rule << "]";
  for (const auto& [k, x] : v.witness) os << " " << k << "=" << x;
  return os.str();
}

// Settles a verdict from the Yes rules and No rules that fired. Both firing at
// once is a contradiction.
Verdict settle(CriterionClass c, const std::vector<Rule>& yes, const std::vector<Rule>& no,
               std::vector<std::string> tried, std::map<std::string, double> witness) {
  Verdict v;
  v.witness = std::move(witness);
  if (!yes.empty() && !no.empty()) {
    std::ostringstream a, b;
    a << to_string(c) << "=Yes via " << yes.front().name;
    b << to_string(c) << "=No via " << no.front().name;
    throw ConsistencyError(std::string("contradictory rules for ") + to_string(c), a.str(), b.str());
  }
  if (!yes.empty() || !no.empty()) {
    const Rule& r = yes.empty() ? no.front() : yes.front();
    v.value = yes.empty() ? Truth::No : Truth::Yes;
    v.rule = r.name;
    v.provenance = r.provenance;
    return v;
  }
  v.value = Truth::Unknown;
  v.rule = "inconclusive";
  v.inconclusive = std::move(tried);
  return v;
}

bool low_dimension(const Dims& dims) {
  return dims.size() == 2 && dims[0] * dims[1] <= 6;
}

}  // namespace

const char* to_string(CriterionClass c) {
  switch (c) {
    case CriterionClass::Sep: return "SEP";
    case CriterionClass::Ppt: return "PPT";
    case CriterionClass::Und: return "UND";
    case CriterionClass::UndOneWay: return "UND_ONEWAY";
    case CriterionClass::Red: return "RED";
    case CriterionClass::Maj: return "MAJ";
    case CriterionClass::CenLeft: return "CEN_LEFT";
    case CriterionClass::CenRight: return "CEN_RIGHT";
    case CriterionClass::Cen: return "CEN";
  }
  return "?";
}

CriterionClass criterion_from_string(const std::string& name) {
  for (auto c : kAllCriteria)
    if (name == to_string(c)) return c;
  throw UsageError("unknown criterion class '" + name + "'");
}

const char* to_string(Truth t) {
  switch (t) {
    case Truth::Yes: return "Yes";
    case Truth::No: return "No";
    case Truth::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Direct: return "direct";
    case Provenance::Certificate: return "certificate";
    case Provenance::Propagation: return "propagation";
  }
  return "?";
}

BipartiteData analyze(const QuantumState& rho, const Tolerances& tol) {
  if (rho.parties() != 2) throw UsageError("criteria need a bipartite state");
  const std::size_t keep_a[] = {0}, keep_b[] = {1};
  BipartiteData d{rho, partial_trace(rho, keep_a, tol), partial_trace(rho, keep_b, tol), {}, {}, {}};
  d.spec_ab = hermitian_spectrum(rho.matrix(), tol);
  d.spec_a = hermitian_spectrum(d.rho_a.matrix(), tol);
  d.spec_b = hermitian_spectrum(d.rho_b.matrix(), tol);
  d.s_ab = entropy_of_spectrum(d.spec_ab, tol);
  d.s_a = entropy_of_spectrum(d.spec_a, tol);
  d.s_b = entropy_of_spectrum(d.spec_b, tol);
  d.rank_ab = numerical_rank(d.spec_ab, tol);
  d.rank_a = numerical_rank(d.spec_a, tol);
  d.rank_b = numerical_rank(d.spec_b, tol);
  return d;
}

Verdict check_ppt(const BipartiteData& data, const Tolerances& tol) {
  const double min_eig = hermitian_spectrum(partial_transpose(data.rho, 1), tol).min();
  Verdict v;
  v.value = min_eig >= -tol.psd ? Truth::Yes : Truth::No;
  v.rule = "partial_transpose";
  v.witness["min_eigenvalue"] = min_eig;
  return v;
}

Verdict check_red(const BipartiteData& data, const Tolerances& tol) {
  const auto da = static_cast<Index>(data.rho.dims()[0]);
  const auto db = static_cast<Index>(data.rho.dims()[1]);
  const ComplexMatrix op_a =
      kernels::kron(data.rho_a.matrix(), ComplexMatrix::Identity(db, db)) - data.rho.matrix();
  const ComplexMatrix op_b =
      kernels::kron(ComplexMatrix::Identity(da, da), data.rho_b.matrix()) - data.rho.matrix();
  const double min_a = hermitian_spectrum(op_a, tol).min();
  const double min_b = hermitian_spectrum(op_b, tol).min();
  Verdict v;
  v.value = std::min(min_a, min_b) >= -tol.psd ? Truth::Yes : Truth::No;
  v.rule = "reduction";
  v.witness["min_eigenvalue"] = std::min(min_a, min_b);
  v.witness["min_eigenvalue_a"] = min_a;
  v.witness["min_eigenvalue_b"] = min_b;
  return v;
}

Verdict check_maj(const BipartiteData& data, const Tolerances& tol) {
  const auto by_a = majorizes(data.spec_a, data.spec_ab, tol);
  const auto by_b = majorizes(data.spec_b, data.spec_ab, tol);
  Verdict v;
  v.value = by_a.holds && by_b.holds ? Truth::Yes : Truth::No;
  v.rule = "majorization";
  v.witness["min_gap_a"] = by_a.min_gap;
  v.witness["min_gap_b"] = by_b.min_gap;
  if (by_a.violated_prefix) v.witness["violated_prefix_a"] = static_cast<double>(*by_a.violated_prefix);
  if (by_b.violated_prefix) v.witness["violated_prefix_b"] = static_cast<double>(*by_b.violated_prefix);
  return v;
}

CenVerdicts check_cen(const BipartiteData& data, const Tolerances& tol) {
  const double gap_left = data.s_ab - data.s_a;
  const double gap_right = data.s_ab - data.s_b;
  CenVerdicts out;
  out.left.value = gap_left >= -tol.ent ? Truth::Yes : Truth::No;
  out.left.rule = "entropy_left";
  out.left.witness["entropy_gap"] = gap_left;
  out.right.value = gap_right >= -tol.ent ? Truth::Yes : Truth::No;
  out.right.rule = "entropy_right";
  out.right.witness["entropy_gap"] = gap_right;
  out.both.value = out.left.yes() && out.right.yes() ? Truth::Yes : Truth::No;
  out.both.rule = "conjunction";
  out.both.witness["entropy_gap_left"] = gap_left;
  out.both.witness["entropy_gap_right"] = gap_right;
  return out;
}

Verdict check_und(const BipartiteData& data, const StateCertificate& cert, const Verdict& ppt,
                  const Tolerances& tol) {
  std::vector<Rule> yes, no;
  std::map<std::string, double> w;
  const auto max_marginal = std::max(data.rank_a, data.rank_b);
  w["rank_ab"] = static_cast<double>(data.rank_ab);
  w["rank_a"] = static_cast<double>(data.rank_a);
  w["rank_b"] = static_cast<double>(data.rank_b);
  w["coherent_information_ab"] = data.s_b - data.s_ab;
  w["coherent_information_ba"] = data.s_a - data.s_ab;

  if (ppt.yes()) yes.push_back({"ppt"});
  // Undistillable states satisfy rank(rho) >= max marginal rank.
  if (data.rank_ab < max_marginal) no.push_back({"rank_deficit"});
  // Undistillable with equal ranks would be separable, hence PPT.
  if (ppt.no() && data.rank_ab == max_marginal) no.push_back({"prop4_contradiction"});
  if (data.s_b - data.s_ab > tol.ent) no.push_back({"hashing_ab"});
  if (data.s_a - data.s_ab > tol.ent) no.push_back({"hashing_ba"});
  if (cert.kind == StateCertificate::Kind::KnownOneWayDistillable)
    no.push_back({"certificate", Provenance::Certificate});
  return settle(CriterionClass::Und, yes, no,
                {"ppt", "rank_deficit", "prop4_contradiction", "hashing_ab", "hashing_ba", "certificate"},
                std::move(w));
}

Verdict check_und_oneway(const BipartiteData& data, const StateCertificate& cert, const Verdict& und,
                         const Tolerances& tol) {
  std::vector<Rule> yes, no;
  std::map<std::string, double> w;
  w["coherent_information_ab"] = data.s_b - data.s_ab;
  if (und.yes()) yes.push_back({"undistillable"});
  if (data.s_b - data.s_ab > tol.ent) no.push_back({"hashing_ab"});
  if (cert.kind == StateCertificate::Kind::KnownOneWayDistillable)
    no.push_back({"certificate", Provenance::Certificate});
  return settle(CriterionClass::UndOneWay, yes, no, {"undistillable", "hashing_ab", "certificate"},
                std::move(w));
}

Verdict check_sep(const BipartiteData& data, const StateCertificate& cert, const Verdict& ppt,
                  const Verdict& und, const Tolerances& tol) {
  (void)tol;
  std::vector<Rule> yes, no;
  std::map<std::string, double> w;
  if (cert.kind == StateCertificate::Kind::SeparableDecomposition) {
    yes.push_back({"certificate", Provenance::Certificate});
    w["reconstruction_error"] = cert.reconstruction_error(data.rho);
    w["terms"] = static_cast<double>(cert.terms.size());
  }
  if (ppt.yes() && low_dimension(data.rho.dims())) yes.push_back({"low_dimension_ppt"});
  const auto max_marginal = std::max(data.rank_a, data.rank_b);
  if (und.yes() && data.rank_ab == max_marginal) yes.push_back({"rank_equality"});
  if (ppt.no()) no.push_back({"npt"});
  if (cert.kind == StateCertificate::Kind::KnownEntangled) no.push_back({"certificate", Provenance::Certificate});
  if (ppt.witness.count("min_eigenvalue")) w["ppt_min_eigenvalue"] = ppt.witness.at("min_eigenvalue");
  w["rank_ab"] = static_cast<double>(data.rank_ab);
  w["max_marginal_rank"] = static_cast<double>(max_marginal);
  return settle(CriterionClass::Sep, yes, no, {"certificate", "low_dimension_ppt", "rank_equality", "npt"},
                std::move(w));
}

Verdict check_ppt(const QuantumState& rho, const Tolerances& tol) { return check_ppt(analyze(rho, tol), tol); }
Verdict check_red(const QuantumState& rho, const Tolerances& tol) { return check_red(analyze(rho, tol), tol); }
Verdict check_maj(const QuantumState& rho, const Tolerances& tol) { return check_maj(analyze(rho, tol), tol); }
CenVerdicts check_cen(const QuantumState& rho, const Tolerances& tol) { return check_cen(analyze(rho, tol), tol); }

Verdict check_und(const QuantumState& rho, const StateCertificate& cert, const Tolerances& tol) {
  const auto data = analyze(rho, tol);
  return check_und(data, cert, check_ppt(data, tol), tol);
}

Verdict check_und_oneway(const QuantumState& rho, const StateCertificate& cert, const Tolerances& tol) {
  const auto data = analyze(rho, tol);
  const auto und = check_und(data, cert, check_ppt(data, tol), tol);
  return check_und_oneway(data, cert, und, tol);
}

Verdict check_sep(const QuantumState& rho, const StateCertificate& cert, const Tolerances& tol) {
  const auto data = analyze(rho, tol);
  const auto ppt = check_ppt(data, tol);
  return check_sep(data, cert, ppt, check_und(data, cert, ppt, tol), tol);
}

const std::vector<ChainEdge>& implication_edges() {
  using C = CriterionClass;
  static const std::vector<ChainEdge> edges = {
      {C::Sep, C::Ppt},      {C::Ppt, C::Und},           {C::Und, C::Red},
      {C::Red, C::Maj},      {C::Maj, C::Cen},           {C::Und, C::UndOneWay},
      {C::UndOneWay, C::CenRight}, {C::Cen, C::CenLeft}, {C::Cen, C::CenRight}};
  return edges;
}

ClassificationReport classify(const QuantumState& rho, const StateCertificate& cert, const Tolerances& tol) {
  const auto data = analyze(rho, tol);
  ClassificationReport r;
  r.dims = rho.dims();
  r.spec_ab = data.spec_ab;
  r.spec_a = data.spec_a;
  r.spec_b = data.spec_b;
  r.s_ab = data.s_ab;
  r.s_a = data.s_a;
  r.s_b = data.s_b;
  r.rank_ab = data.rank_ab;
  r.rank_a = data.rank_a;
  r.rank_b = data.rank_b;
  r.certificate = to_string(cert.kind);

  using C = CriterionClass;
  r[C::Ppt] = check_ppt(data, tol);
  r.ppt_min_eigenvalue = r[C::Ppt].witness.at("min_eigenvalue");
  r[C::Red] = check_red(data, tol);
  r[C::Maj] = check_maj(data, tol);
  auto cen = check_cen(data, tol);
  r[C::CenLeft] = std::move(cen.left);
  r[C::CenRight] = std::move(cen.right);
  r[C::Cen] = std::move(cen.both);
  r[C::Und] = check_und(data, cert, r[C::Ppt], tol);
  r[C::UndOneWay] = check_und_oneway(data, cert, r[C::Und], tol);
  r[C::Sep] = check_sep(data, cert, r[C::Ppt], r[C::Und], tol);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : implication_edges()) {
      Verdict& from = r[e.from];
      Verdict& to = r[e.to];
      if (from.yes() && to.no()) {
        throw ConsistencyError(std::string("implication ") + to_string(e.from) + " => " + to_string(e.to) +
                                   " contradicted",
                               describe(e.from, from), describe(e.to, to));
      }
      if (from.yes() && to.unknown()) {
        to.value = Truth::Yes;
        to.provenance = Provenance::Propagation;
        to.rule = std::string("from ") + to_string(e.from);
        to.inconclusive.clear();
        r.trace.push_back(std::string(to_string(e.from)) + " Yes => " + to_string(e.to) + " Yes");
        changed = true;
      } else if (to.no() && from.unknown()) {
        from.value = Truth::No;
        from.provenance = Provenance::Propagation;
        from.rule = std::string("from ") + to_string(e.to);
        from.inconclusive.clear();
        r.trace.push_back(std::string(to_string(e.to)) + " No => " + to_string(e.from) + " No");
        changed = true;
      }
    }
  }
  return r;
}

std::vector<std::string> chain_violations(const ClassificationReport& report) {
  std::vector<std::string> out;
  for (const auto& e : implication_edges()) {
    const Truth from = report.value(e.from);
    const Truth to = report.value(e.to);
    if (from == Truth::Yes && to != Truth::Yes)
      out.push_back(std::string(to_string(e.from)) + " Yes but " + to_string(e.to) + " " + to_string(to));
    if (to == Truth::No && from != Truth::No)
      out.push_back(std::string(to_string(e.to)) + " No but " + to_string(e.from) + " " + to_string(from));
  }
  const bool conj = report.value(CriterionClass::CenLeft) == Truth::Yes &&
                    report.value(CriterionClass::CenRight) == Truth::Yes;
  if ((report.value(CriterionClass::Cen) == Truth::Yes) != conj)
    out.push_back("CEN differs from CEN_LEFT and CEN_RIGHT");
  return out;
}

}  // namespace entangle
