#include "entangle/io.hpp"

#include <fstream>
#include <sstream>

namespace entangle::io {

namespace {

using nlohmann::json;
using Index = Eigen::Index;

void split(const ComplexMatrix& m, json& out) {
  json re = json::array(), im = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  out["re"] = std::move(re);
  out["im"] = std::move(im);
}

std::vector<Complex> join(const json& j, std::size_t expected) {
  if (!j.contains("re") || !j.at("re").is_array()) throw UsageError("missing 're' array");
  const auto& re = j.at("re");
  if (re.size() != expected) {
    std::ostringstream os;
    os << "'re' has " << re.size() << " entries, expected " << expected;
    throw InvariantError(os.str());
  }
  const bool has_im = j.contains("im");
  if (has_im && (!j.at("im").is_array() || j.at("im").size() != expected))
    throw InvariantError("'im' length does not match 're'");
  std::vector<Complex> out(expected);
  for (std::size_t k = 0; k < expected; ++k) {
    if (!re[k].is_number() || (has_im && !j.at("im")[k].is_number()))
      throw InvariantError("non-numeric matrix entry");
    out[k] = Complex(re[k].get<double>(), has_im ? j.at("im")[k].get<double>() : 0.0);
  }
  return out;
}

json verdict_map(const ClassificationReport& r) {
  json out = json::object();
  for (auto c : kAllCriteria) out[to_string(c)] = to_json(r[c]);
  return out;
}

}  // namespace

json to_json(const Verdict& v) {
  json w = json::object();
  for (const auto& [k, x] : v.witness) w[k] = x;
  json out = {{"value", to_string(v.value)},
              {"provenance", to_string(v.provenance)},
              {"rule", v.rule},
              {"witness", std::move(w)}};
  if (v.unknown()) out["inconclusive"] = v.inconclusive;
  return out;
}

json to_json(const Spectrum& s) { return s.values; }

json to_json(const ClassificationReport& r) {
  return {{"schema", kReportSchema},
          {"dims", r.dims},
          {"certificate", r.certificate},
          {"verdicts", verdict_map(r)},
          {"spectra", {{"AB", to_json(r.spec_ab)}, {"A", to_json(r.spec_a)}, {"B", to_json(r.spec_b)}}},
          {"entropies", {{"AB", r.s_ab}, {"A", r.s_a}, {"B", r.s_b}}},
          {"ranks", {{"AB", r.rank_ab}, {"A", r.rank_a}, {"B", r.rank_b}}},
          {"ppt_min_eigenvalue", r.ppt_min_eigenvalue},
          {"propagation", r.trace}};
}

json to_json(const TheoremCheck& c) {
  json out = {{"schema", kReportSchema},
              {"theorem", c.theorem},
              {"hypothesis", to_string(c.hypothesis)},
              {"conclusion", to_string(c.conclusion)},
              {"evidence", c.evidence},
              {"tags", c.tags}};
  if (c.counterexample) out["counterexample"] = *c.counterexample;
  return out;
}

json to_json(const ChannelClassification& c) {
  return {{"schema", kReportSchema},
          {"ppt_channel", to_json(c.ppt_channel)},
          {"entanglement_breaking", to_json(c.entanglement_breaking)},
          {"positive_capacity_lower_bound", c.positive_capacity_lower_bound},
          {"complementary_lower_bound", c.complementary_lower_bound},
          {"corollary", to_string(c.corollary)}};
}

json state_to_json(const QuantumState& rho) {
  json out = {{"dims", rho.dims()}, {"kind", "density"}};
  split(rho.matrix(), out);
  return out;
}

json state_to_json(const PureVector& psi) {
  json out = {{"dims", psi.dims()}, {"kind", "pure"}};
  split(psi.amplitudes().transpose(), out);
  return out;
}

json channel_to_json(const ChannelIsometry& v) {
  json out = {{"d_a", v.d_a()}, {"d_b", v.d_b()}, {"d_c", v.d_c()}};
  split(v.matrix(), out);
  return out;
}

LoadedState parse_state(const json& j, const Tolerances& tol) {
  if (!j.is_object()) throw UsageError("state file must hold a JSON object");
  if (!j.contains("dims") || !j.at("dims").is_array() || j.at("dims").empty())
    throw UsageError("state file needs a non-empty 'dims' array");
  Dims dims;
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_integer() || d.get<long long>() < 1) throw InvariantError("dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  const std::size_t n = dimension_product(dims);
  if (n > tol.max_dimension) throw DimensionError("state dimension exceeds configured maximum");
  std::string kind;
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw UsageError("state 'kind' must be a string");
    kind = j.at("kind").get<std::string>();
  } else if (j.contains("re") && j.at("re").is_array()) {
    kind = j.at("re").size() == n * n && n > 1 ? "density" : "pure";
  }
  if (kind == "density") {
    const auto entries = join(j, n * n);
    ComplexMatrix m(static_cast<Index>(n), static_cast<Index>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = entries[r * n + c];
    return QuantumState(std::move(m), std::move(dims), tol);
  }
  if (kind == "pure") {
    const auto entries = join(j, n);
    ComplexVector v(static_cast<Index>(n));
    for (std::size_t k = 0; k < n; ++k) v(static_cast<Index>(k)) = entries[k];
    return PureVector(std::move(v), std::move(dims), tol);
  }
  throw UsageError("state 'kind' must be 'density' or 'pure'");
}

LoadedState load_state_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("state file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_state(j, tol);
}

ChannelIsometry parse_channel(const json& j, const Tolerances& tol) {
  for (const char* key : {"d_a", "d_b", "d_c"})
    if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 1)
      throw UsageError(std::string("channel file needs a positive integer '") + key + "'");
  const auto da = j.at("d_a").get<std::size_t>();
  const auto db = j.at("d_b").get<std::size_t>();
  const auto dc = j.at("d_c").get<std::size_t>();
  if (da > tol.max_dimension || db * dc > tol.max_dimension)
    throw DimensionError("channel dimension exceeds configured maximum");
  const auto entries = join(j, db * dc * da);
  ComplexMatrix m(static_cast<Index>(db * dc), static_cast<Index>(da));
  for (std::size_t r = 0; r < db * dc; ++r)
    for (std::size_t c = 0; c < da; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = entries[r * da + c];
  return ChannelIsometry(std::move(m), da, db, dc, tol);
}

ChannelIsometry load_channel_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open channel file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("channel file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_channel(j, tol);
}

}  // namespace entangle::io
