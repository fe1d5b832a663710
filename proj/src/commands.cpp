#include "entangle/commands.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "entangle/channels.hpp"
#include "entangle/criteria.hpp"
#include "entangle/io.hpp"
#include "entangle/sweep.hpp"

namespace entangle::cli {

namespace {

using nlohmann::json;

constexpr const char* kSampleSchema = "entangle-hierarchy/sample/v1";

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " '" + text + "'");
  }
  if (pos != text.size() || v < 1) throw UsageError("bad " + what + " '" + text + "'");
  return static_cast<std::size_t>(v);
}

// "AB" -> subsystems to keep and the matching certificate slot.
std::array<std::size_t, 2> cut_indices(const std::string& cut) {
  if (cut == "AB") return {0, 1};
  if (cut == "AC") return {0, 2};
  if (cut == "BC") return {1, 2};
  throw UsageError("cut must be AB, AC or BC, got '" + cut + "'");
}

const StateCertificate& cut_certificate(const MarginalCertificates& certs, const std::string& cut) {
  if (cut == "AC") return certs.ac;
  if (cut == "BC") return certs.bc;
  return certs.ab;
}

Dims override_dims(const Dims& current, const Dims& wanted) {
  if (wanted.empty()) return current;
  if (dimension_product(wanted) != dimension_product(current))
    throw UsageError("--dims product does not match the state dimension");
  return wanted;
}

CertifiedState bipartite_from(const QuantumState& rho, const StateCertificate& cert, const ClassifyOptions& opt) {
  const Dims dims = override_dims(rho.dims(), opt.dims);
  if (dims.size() == 2) {
    if (opt.cut != "AB") throw UsageError("--cut " + opt.cut + " needs a tripartite state");
    return {QuantumState(rho.matrix(), dims, opt.tol), cert};
  }
  if (dims.size() != 3) throw UsageError("classify needs a bipartite or tripartite state");
  const auto keep = cut_indices(opt.cut);
  return {partial_trace(QuantumState(rho.matrix(), dims, opt.tol), keep, opt.tol), cert};
}

CertifiedState bipartite_from(const PureVector& psi, const MarginalCertificates& certs, const ClassifyOptions& opt) {
  const Dims dims = override_dims(psi.dims(), opt.dims);
  const PureVector relaid(psi.amplitudes(), dims, opt.tol);
  if (dims.size() == 2) {
    if (opt.cut != "AB") throw UsageError("--cut " + opt.cut + " needs a tripartite state");
    return {relaid.projector(), certs.ab};
  }
  if (dims.size() != 3) throw UsageError("classify needs a bipartite or tripartite state");
  const auto keep = cut_indices(opt.cut);
  return {partial_trace(relaid, keep, opt.tol), cut_certificate(certs, opt.cut)};
}

std::size_t channel_dimension(const std::string& name, const std::string& prefix) {
  return parse_count(name.substr(prefix.size()), "channel dimension");
}

struct NamedChannel {
  ChannelIsometry v;
  StateCertificate choi_cert;
};

NamedChannel channel_builtin(const std::string& name) {
  const auto starts = [&name](const char* p) { return name.rfind(p, 0) == 0; };
  if (starts("identity:")) return {channels::identity(channel_dimension(name, "identity:")), {}};
  if (starts("depolarizing:"))
    return {channels::completely_depolarizing(channel_dimension(name, "depolarizing:")), {}};
  if (starts("dephasing:")) return {channels::dephasing(channel_dimension(name, "dephasing:")), {}};
  if (starts("erasure:")) return {channels::swap_to_environment(channel_dimension(name, "erasure:")), {}};
  if (name == "filtered_tiles") {
    auto choi = channels::filtered_tiles_choi();
    return {channels::from_choi(choi.state), choi.certificate};
  }
  throw UsageError("unknown channel '" + name + "'");
}

int classify_channel_cmd(const ClassifyOptions& opt, std::ostream& out) {
  NamedChannel ch = opt.channel_builtin.empty()
                        ? NamedChannel{io::load_channel_file(opt.channel_file, opt.tol), {}}
                        : channel_builtin(opt.channel_builtin);
  json j = io::to_json(classify_channel(ch.v, ch.choi_cert, opt.samples, opt.seed, opt.tol));
  j["choi"] = io::to_json(classify(choi_state(ch.v, opt.tol), ch.choi_cert, opt.tol));
  j["source"] = opt.channel_builtin.empty() ? "file:" + opt.channel_file : "channel:" + opt.channel_builtin;
  out << j.dump(2) << '\n';
  return kExitOk;
}

std::string format_value(const json& v) {
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v.get<double>();
    return os.str();
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

Dims parse_dims(const std::string& text) {
  Dims dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) dims.push_back(parse_count(part, "dimension"));
  if (dims.size() < 2 || dims.size() > 3) throw UsageError("--dims needs two or three comma-separated sizes");
  return dims;
}

int classify(const ClassifyOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const int sources = !opt.builtin.empty() + !opt.state_file.empty() + !opt.channel_file.empty() +
                        !opt.channel_builtin.empty();
    if (sources != 1) throw UsageError("give exactly one of --builtin, --state, --channel, --channel-builtin");
    if (!opt.dims.empty() && dimension_product(opt.dims) > opt.tol.max_dimension)
      throw DimensionError("--dims product exceeds the configured maximum");
    if (!opt.channel_file.empty() || !opt.channel_builtin.empty()) return classify_channel_cmd(opt, out);

    std::optional<CertifiedState> cs;
    std::string source;
    if (!opt.builtin.empty()) {
      const auto b = states::builtin(opt.builtin);
      source = "builtin:" + opt.builtin;
      cs = b.mixed ? bipartite_from(b.mixed->state, b.mixed->certificate, opt)
                   : bipartite_from(b.pure->psi, b.pure->certs, opt);
    } else {
      const auto loaded = io::load_state_file(opt.state_file, opt.tol);
      source = "file:" + opt.state_file;
      if (const auto* rho = std::get_if<QuantumState>(&loaded)) {
        cs = bipartite_from(*rho, {}, opt);
      } else {
        cs = bipartite_from(std::get<PureVector>(loaded), {}, opt);
      }
    }
    json j = io::to_json(classify(cs->state, cs->certificate, opt.tol));
    j["source"] = source;
    j["cut"] = opt.cut;
    out << j.dump(2) << '\n';
    return kExitOk;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << " (" << e.first() << " vs " << e.second() << ")\n";
    return kExitInconsistent;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

int verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.samples < 1) throw UsageError("--samples must be at least 1");
    const auto suite = suite_from_string(opt.suite);
    const auto result = run_suite(suite, {opt.seed, opt.samples, opt.tol});
    write_jsonl(result, out);
    return result.ok() ? kExitOk : kExitFailed;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

json sample_summary(const SampleOptions& opt) {
  if (opt.dims.size() != 2) throw UsageError("sample needs bipartite --dims dA,dB");
  const std::size_t da = opt.dims[0], db = opt.dims[1];
  const std::size_t full = da * db;
  if (full > opt.tol.max_dimension) throw DimensionError("--dims product exceeds the configured maximum");
  if (opt.samples < 1) throw UsageError("--samples must be at least 1");
  if (opt.rank > full) throw UsageError("--rank exceeds dA * dB");
  if (opt.ensemble != "mixed" && opt.ensemble != "density" && opt.ensemble != "separable")
    throw UsageError("--ensemble must be mixed, density or separable");

  const auto n = static_cast<std::int64_t>(opt.samples);
  std::vector<std::array<Truth, kCriterionCount>> values(opt.samples);
  std::vector<char> failed(opt.samples, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const Seed seed = derive_seed(opt.seed, i);
    std::mt19937_64 gen(seed.value);
    const bool separable = opt.ensemble == "separable" || (opt.ensemble == "mixed" && i % 2 == 1);
    try {
      CertifiedState cs = [&]() -> CertifiedState {
        if (separable) return states::random_separable(da, db, 1 + gen() % full, derive_seed(seed, 1));
        const std::size_t rank = opt.rank > 0 ? opt.rank : 1 + gen() % full;
        return {QuantumState(states::random_density(full, rank, derive_seed(seed, 1)).matrix(), {da, db}), {}};
      }();
      const auto report = classify(cs.state, cs.certificate, opt.tol);
      for (auto c : kAllCriteria) values[i][static_cast<std::size_t>(c)] = report.value(c);
    } catch (const Error&) {
      failed[i] = 1;
    }
  }

  std::size_t errors = 0;
  std::array<std::array<std::size_t, 3>, kCriterionCount> counts{};
  for (std::size_t i = 0; i < opt.samples; ++i) {
    if (failed[i]) {
      ++errors;
      continue;
    }
    for (std::size_t c = 0; c < kCriterionCount; ++c) ++counts[c][static_cast<std::size_t>(values[i][c])];
  }
  const std::size_t ok = opt.samples - errors;
  json fractions = json::object(), totals = json::object();
  for (auto c : kAllCriteria) {
    const auto& row = counts[static_cast<std::size_t>(c)];
    const auto frac = [ok](std::size_t x) { return ok == 0 ? 0.0 : static_cast<double>(x) / static_cast<double>(ok); };
    fractions[to_string(c)] = {{"Yes", frac(row[0])}, {"No", frac(row[1])}, {"Unknown", frac(row[2])}};
    totals[to_string(c)] = {{"Yes", row[0]}, {"No", row[1]}, {"Unknown", row[2]}};
  }
  return {{"schema", kSampleSchema}, {"dims", opt.dims},       {"samples", opt.samples},
          {"seed", opt.seed.value},  {"ensemble", opt.ensemble}, {"rank", opt.rank},
          {"errors", errors},        {"fractions", fractions},  {"counts", totals}};
}

int sample(const SampleOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const auto summary = sample_summary(opt);
    out << summary.dump(2) << '\n';
    return summary.at("errors").get<std::size_t>() == 0 ? kExitOk : kExitFailed;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

std::vector<DemoRow> demo_rows(const Tolerances& tol) {
  std::vector<DemoRow> rows;
  const auto number = [&rows](std::string section, std::string label, double value, double expected, double eps) {
    rows.push_back({std::move(section), std::move(label), value, expected, std::abs(value - expected) <= eps});
  };
  const auto count = [&rows](std::string section, std::string label, std::size_t value, std::size_t expected) {
    rows.push_back({std::move(section), std::move(label), value, expected, value == expected});
  };
  const auto verdict = [&rows](std::string section, std::string label, const Verdict& v, Truth expected) {
    rows.push_back({std::move(section), std::move(label), to_string(v.value), to_string(expected), v.value == expected});
  };
  constexpr double kEntropyEps = 1e-9;
  constexpr double kEigEps = 1e-9;

  for (std::size_t d : {2u, 3u}) {
    const std::string sec = "locking d=" + std::to_string(d);
    const auto lp = states::locking_purification(d);
    const auto m = states::reduce_all(lp.psi, tol);
    const double logd = std::log2(static_cast<double>(d));
    number(sec, "S(rho_AC)", von_neumann_entropy(m.ac, tol), 1.0 + logd, kEntropyEps);
    number(sec, "S(rho_A)", von_neumann_entropy(m.a, tol), 1.0 + logd, kEntropyEps);
    number(sec, "S(rho_C)", von_neumann_entropy(m.c, tol), logd, kEntropyEps);
    count(sec, "rank(rho_AB)", numerical_rank(m.ab.matrix(), tol), d);
    count(sec, "rank(rho_B)", numerical_rank(m.b.matrix(), tol), d * d + 1);
    const auto report = classify(m.ac, lp.certs.ac, tol);
    verdict(sec, "CEN_RIGHT(rho_AC)", report[CriterionClass::CenRight], Truth::Yes);
    verdict(sec, "MAJ(rho_AC)", report[CriterionClass::Maj], Truth::No);
  }

  {
    const std::string sec = "antisym3";
    const auto m = states::reduce_all(states::antisymmetric_tripartite(), tol);
    const auto report = classify(m.ab, {}, tol);
    number(sec, "min_eig(rho_AB^T_B)", report.ppt_min_eigenvalue, -1.0 / 3.0, kEigEps);
    number(sec, "max_eig(rho_AB)", report.spec_ab.max(), 1.0 / 3.0, kEigEps);
    verdict(sec, "RED(rho_AB)", report[CriterionClass::Red], Truth::Yes);
    verdict(sec, "PPT(rho_AB)", report[CriterionClass::Ppt], Truth::No);
    number(sec, "dist(spec AB, spec A)", spectrum_distance(report.spec_ab, report.spec_a), 0.0, tol.eig);
    number(sec, "dist(spec AB, spec B)", spectrum_distance(report.spec_ab, report.spec_b), 0.0, tol.eig);
    number(sec, "dist(spec A, spec B)", spectrum_distance(report.spec_a, report.spec_b), 0.0, tol.eig);
  }

  {
    const std::string sec = "ghz3";
    const auto m = states::reduce_all(states::ghz3(), tol);
    verdict(sec, "SEP(rho_AB)", classify(m.ab, {}, tol)[CriterionClass::Sep], Truth::Yes);
    verdict(sec, "SEP(rho_AC)", classify(m.ac, {}, tol)[CriterionClass::Sep], Truth::Yes);
    verdict(sec, "SEP(rho_BC)", classify(m.bc, {}, tol)[CriterionClass::Sep], Truth::Yes);
  }

  {
    const std::string sec = "tiles";
    const auto tiles = states::tiles_bound_entangled();
    const auto report = classify(tiles.state, tiles.certificate, tol);
    verdict(sec, "PPT(rho_AB)", report[CriterionClass::Ppt], Truth::Yes);
    verdict(sec, "SEP(rho_AB)", report[CriterionClass::Sep], Truth::No);
    // S(A|C) on the purification equals S(B) - S(AB).
    const double cond = report.s_b - report.s_ab;
    rows.push_back({sec, "S(A|C) purification", cond, "< 0", cond < -tol.ent});
  }
  return rows;
}

int demo(bool as_json, const Tolerances& tol, std::ostream& out) {
  const auto rows = demo_rows(tol);
  bool all_ok = true;
  for (const auto& r : rows) all_ok &= r.ok;
  if (as_json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"section", r.section}, {"quantity", r.label}, {"value", r.value}, {"expected", r.expected},
                     {"ok", r.ok}});
    out << json{{"rows", arr}, {"ok", all_ok}}.dump(2) << '\n';
  } else {
    out << std::left << std::setw(12) << "section" << std::setw(24) << "quantity" << std::setw(14) << "value"
        << std::setw(14) << "expected"
        << "status\n";
    for (const auto& r : rows)
      out << std::left << std::setw(12) << r.section << std::setw(24) << r.label << std::setw(14)
          << format_value(r.value) << std::setw(14) << format_value(r.expected) << (r.ok ? "ok" : "MISMATCH")
          << '\n';
  }
  return all_ok ? kExitOk : kExitFailed;
}

}  // namespace entangle::cli
