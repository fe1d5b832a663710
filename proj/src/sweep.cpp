#include "entangle/sweep.hpp"

#include <array>
#include <functional>
#include <optional>
#include <random>

#include "entangle/channels.hpp"
#include "entangle/cmoe.hpp"
#include "entangle/criteria.hpp"
#include "entangle/io.hpp"

namespace entangle {

namespace {

using nlohmann::json;

constexpr std::array<Suite, 7> kSingleSuites = {Suite::Hierarchy, Suite::Theorem1,   Suite::Theorem2,
                                                 Suite::Theorem3,  Suite::Prop5,      Suite::Corollary1,
                                                 Suite::Corollary3};

struct Outcome {
  json line;
  bool error = false;
  // theorem suites
  std::optional<TheoremCheck> check;
  // hierarchy
  bool hierarchy = false;
  std::size_t chain_violations = 0;
};

// Draws are taken with modulo on raw mt19937_64 output so sequences do not
// depend on the standard library's distribution implementations.
std::size_t pick(std::mt19937_64& gen, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(gen() % (hi - lo + 1));
}

std::vector<ComplexMatrix> local_unitaries(const Dims& dims, Seed seed) {
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < dims.size(); ++k) out.push_back(states::random_unitary(dims[k], derive_seed(seed, k)));
  return out;
}

CertifiedPure with_local_unitaries(CertifiedPure cp, Seed seed) {
  cp.psi = states::apply_local_unitaries(cp.psi, local_unitaries(cp.psi.dims(), seed));
  return cp;
}

// Exchanges B and C together with their certificates.
CertifiedPure swap_bc(const CertifiedPure& cp) {
  const std::size_t order[] = {0, 2, 1};
  return {permute_subsystems(cp.psi, order), {cp.certs.ac, cp.certs.ab, cp.certs.bc}};
}

// Purification of a certified separable state on A x C, with the purifying
// system placed in the B slot.
CertifiedPure separable_purification(std::size_t da, std::size_t dc, std::size_t terms, Seed seed) {
  auto sep = states::random_separable(da, dc, terms, seed);
  const auto psi = purify(sep.state);
  const std::size_t order[] = {0, 2, 1};
  MarginalCertificates certs;
  certs.ac = std::move(sep.certificate);
  return {permute_subsystems(psi, order), std::move(certs)};
}

CertifiedPure random_pure_triple(std::mt19937_64& gen, Seed seed, std::size_t max_c = 3) {
  const Dims dims = {pick(gen, 2, 3), pick(gen, 2, 3), pick(gen, 2, max_c)};
  return {states::random_pure(dims, seed), {}};
}

CertifiedPure tiles_lu(Seed seed) { return with_local_unitaries(states::tiles_purification(), seed); }
CertifiedPure locking_lu(Seed seed) { return with_local_unitaries(states::locking_purification(2), seed); }
CertifiedPure ghz_lu(Seed seed) { return with_local_unitaries({states::ghz3(), {}}, seed); }

CertifiedPure separable_sample(std::mt19937_64& gen, Seed seed) {
  return separable_purification(pick(gen, 2, 3), pick(gen, 2, 3), pick(gen, 1, 4), seed);
}

struct PureCase {
  std::string source;
  CertifiedPure state;
};

using TripartiteCheck =
    std::function<TheoremCheck(const PureVector&, const MarginalCertificates&, const Tolerances&)>;

// Family builders: sample index i, per-sample seed, rng seeded from it.
using Family = std::function<PureCase(std::mt19937_64&, Seed)>;

std::vector<PureCase> tripartite_builtins() {
  std::vector<PureCase> out;
  out.push_back({"builtin:ghz3", {states::ghz3(), {}}});
  out.push_back({"builtin:antisym3", {states::antisymmetric_tripartite(), {}}});
  out.push_back({"builtin:locking_purification:2", states::locking_purification(2)});
  out.push_back({"builtin:locking_purification:3", states::locking_purification(3)});
  out.push_back({"builtin:tiles_purification", states::tiles_purification()});
  out.push_back({"builtin:tiles_purification:acb", swap_bc(states::tiles_purification())});
  return out;
}

std::vector<Family> families(Suite suite) {
  switch (suite) {
    case Suite::Theorem1:
      return {[](auto& g, Seed s) { return PureCase{"separable_purification", separable_sample(g, s)}; },
              [](auto&, Seed s) { return PureCase{"tiles_as_ac", swap_bc(tiles_lu(s))}; },
              [](auto& g, Seed s) { return PureCase{"random_pure", random_pure_triple(g, s)}; }};
    case Suite::Theorem2:
      return {[](auto&, Seed s) { return PureCase{"locking_lu", locking_lu(s)}; },
              [](auto& g, Seed s) { return PureCase{"separable_purification", separable_sample(g, s)}; },
              [](auto& g, Seed s) { return PureCase{"random_pure", random_pure_triple(g, s)}; }};
    case Suite::Theorem3:
      return {[](auto&, Seed s) { return PureCase{"tiles_lu", tiles_lu(s)}; },
              [](auto& g, Seed s) { return PureCase{"random_pure", random_pure_triple(g, s)}; },
              [](auto& g, Seed s) { return PureCase{"random_pure_wide", random_pure_triple(g, s, 4)}; }};
    case Suite::Prop5:
      return {[](auto& g, Seed s) { return PureCase{"separable_purification", separable_sample(g, s)}; },
              [](auto& g, Seed s) {
                return PureCase{"separable_purification_qubits", separable_purification(2, 2, pick(g, 1, 2), s)};
              },
              [](auto&, Seed s) { return PureCase{"ghz_lu", ghz_lu(s)}; }};
    case Suite::Corollary3:
      return {[](auto&, Seed s) { return PureCase{"ghz_lu", ghz_lu(s)}; },
              [](auto& g, Seed s) { return PureCase{"separable_purification", separable_sample(g, s)}; },
              [](auto&, Seed s) { return PureCase{"locking_lu", locking_lu(s)}; },
              [](auto&, Seed s) { return PureCase{"tiles_lu", tiles_lu(s)}; },
              [](auto& g, Seed s) { return PureCase{"random_pure", random_pure_triple(g, s)}; }};
    default:
      return {};
  }
}

TripartiteCheck checker(Suite suite) {
  switch (suite) {
    case Suite::Theorem1:
      return [](const auto& p, const auto& c, const auto& t) { return verify_theorem1(p, c, t); };
    case Suite::Theorem2:
      return [](const auto& p, const auto& c, const auto& t) { return verify_theorem2(p, c, t); };
    case Suite::Theorem3:
      return [](const auto& p, const auto& c, const auto& t) { return verify_theorem3(p, c, t); };
    case Suite::Prop5:
      return [](const auto& p, const auto& c, const auto& t) { return verify_prop_sep_entropy(p, c, t); };
    case Suite::Corollary3:
      return [](const auto& p, const auto& c, const auto& t) { return verify_corollary3(p, c, t); };
    default:
      throw UsageError("not a tripartite suite");
  }
}

json base_line(Suite suite, std::optional<std::size_t> index, const std::string& source, std::optional<Seed> seed) {
  json line = {{"suite", to_string(suite)}, {"source", source}};
  line["index"] = index ? json(*index) : json(nullptr);
  line["seed"] = seed ? json(seed->value) : json(nullptr);
  return line;
}

Outcome error_outcome(json line, const std::exception& e) {
  Outcome out;
  line["error"] = e.what();
  if (const auto* ce = dynamic_cast<const ConsistencyError*>(&e)) line["conflict"] = {ce->first(), ce->second()};
  out.line = std::move(line);
  out.error = true;
  return out;
}

Outcome check_outcome(json line, TheoremCheck check) {
  const json body = io::to_json(check);
  for (const auto& [k, v] : body.items()) line[k] = v;
  Outcome out;
  out.line = std::move(line);
  out.check = std::move(check);
  return out;
}

Outcome run_tripartite(Suite suite, json line, const PureCase& pc, const Tolerances& tol) {
  try {
    line["dims"] = pc.state.psi.dims();
    return check_outcome(std::move(line), checker(suite)(pc.state.psi, pc.state.certs, tol));
  } catch (const Error& e) {
    return error_outcome(std::move(line), e);
  }
}

// The corollary1 suite works on bipartite states directly.
Outcome run_corollary1(json line, const CertifiedState& cs, const Tolerances& tol) {
  try {
    line["dims"] = cs.state.dims();
    return check_outcome(std::move(line), verify_corollary1(cs.state, cs.certificate, tol));
  } catch (const Error& e) {
    return error_outcome(std::move(line), e);
  }
}

ComplexMatrix kron_unitaries(Seed seed) {
  return tensor_product(states::random_unitary(3, derive_seed(seed, 0)), states::random_unitary(3, derive_seed(seed, 1)));
}

CertifiedState corollary1_sample(std::size_t i, std::mt19937_64& gen, Seed seed, std::string& source) {
  switch (i % 3) {
    case 0: {
      source = "tiles_lu";
      auto tiles = states::tiles_bound_entangled();
      const ComplexMatrix u = kron_unitaries(seed);
      return {QuantumState(u * tiles.state.matrix() * u.adjoint(), {3, 3}), std::move(tiles.certificate)};
    }
    case 1: {
      source = "random_separable";
      return states::random_separable(pick(gen, 2, 3), pick(gen, 2, 3), pick(gen, 1, 6), seed);
    }
    default: {
      source = "random_density";
      const std::size_t da = pick(gen, 2, 3), db = pick(gen, 2, 3);
      const std::size_t rank = pick(gen, 1, da * db);
      return {QuantumState(states::random_density(da * db, rank, seed).matrix(), {da, db}), {}};
    }
  }
}

Outcome run_hierarchy(json line, const QuantumState& rho, const StateCertificate& cert, const Tolerances& tol) {
  try {
    line["dims"] = rho.dims();
    const auto report = classify(rho, cert, tol);
    json verdicts = json::object();
    for (auto c : kAllCriteria) verdicts[to_string(c)] = to_string(report.value(c));
    const auto broken = chain_violations(report);
    line["verdicts"] = std::move(verdicts);
    line["certificate"] = report.certificate;
    line["chain_violations"] = broken;
    Outcome out;
    out.line = std::move(line);
    out.hierarchy = true;
    out.chain_violations = broken.size();
    return out;
  } catch (const Error& e) {
    auto out = error_outcome(std::move(line), e);
    out.hierarchy = true;
    return out;
  }
}

struct BipartiteCase {
  std::string source;
  CertifiedState state;
};

std::vector<BipartiteCase> hierarchy_builtins() {
  std::vector<BipartiteCase> out;
  const auto add_cuts = [&out](const std::string& name, const CertifiedPure& cp) {
    const auto m = states::reduce_all(cp.psi);
    out.push_back({name + ":AB", {m.ab, cp.certs.ab}});
    out.push_back({name + ":AC", {m.ac, cp.certs.ac}});
    out.push_back({name + ":BC", {m.bc, cp.certs.bc}});
  };
  for (const auto& name : states::builtin_names()) {
    auto b = states::builtin(name);
    if (b.mixed) {
      out.push_back({"builtin:" + name, *b.mixed});
    } else if (b.pure->psi.parties() == 2) {
      out.push_back({"builtin:" + name, {b.pure->psi.projector(), {}}});
    } else {
      add_cuts("builtin:" + name, *b.pure);
    }
  }
  add_cuts("builtin:locking_purification:2", states::locking_purification(2));
  add_cuts("builtin:tiles_purification", states::tiles_purification());
  out.push_back({"builtin:filtered_tiles_choi", channels::filtered_tiles_choi()});
  return out;
}

CertifiedState hierarchy_sample(std::size_t i, std::mt19937_64& gen, Seed seed, std::string& source) {
  static constexpr std::array<std::array<std::size_t, 2>, 3> kDims = {{{2, 2}, {2, 3}, {3, 3}}};
  const auto [da, db] = kDims[i % kDims.size()];
  if (i % 4 == 3) {
    source = "random_separable";
    return states::random_separable(da, db, pick(gen, 1, da * db), seed);
  }
  source = "random_density";
  const std::size_t rank = pick(gen, 1, da * db);
  return {QuantumState(states::random_density(da * db, rank, seed).matrix(), {da, db}), {}};
}

std::size_t suite_id(Suite s) { return static_cast<std::size_t>(s); }

std::vector<Outcome> run_single(Suite suite, const SweepConfig& config) {
  const Tolerances& tol = config.tol;
  const Seed suite_seed = derive_seed(config.seed, suite_id(suite) + 1);
  std::vector<Outcome> out;

  // Builtins, in a fixed order.
  if (suite == Suite::Hierarchy) {
    for (const auto& bc : hierarchy_builtins())
      out.push_back(run_hierarchy(base_line(suite, std::nullopt, bc.source, std::nullopt), bc.state.state,
                                  bc.state.certificate, tol));
  } else if (suite == Suite::Corollary1) {
    std::vector<BipartiteCase> cases;
    cases.push_back({"builtin:tiles", states::tiles_bound_entangled()});
    cases.push_back({"builtin:filtered_tiles_choi", channels::filtered_tiles_choi()});
    cases.push_back({"builtin:locking:2", states::horodecki_locking(2)});
    cases.push_back({"builtin:bell", {states::bell().projector(), {}}});
    for (const auto& bc : cases)
      out.push_back(
          run_corollary1(base_line(suite, std::nullopt, bc.source, std::nullopt), bc.state, tol));
  } else {
    for (const auto& pc : tripartite_builtins())
      out.push_back(run_tripartite(suite, base_line(suite, std::nullopt, pc.source, std::nullopt), pc, tol));
  }

  const std::size_t offset = out.size();
  out.resize(offset + config.samples);
  const auto fams = families(suite);
  const auto n = static_cast<std::int64_t>(config.samples);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const Seed seed = derive_seed(suite_seed, i);
    std::mt19937_64 gen(seed.value);
    std::string source = "sample";
    Outcome result;
    try {
      if (suite == Suite::Hierarchy) {
        const auto cs = hierarchy_sample(i, gen, derive_seed(seed, 1), source);
        result = run_hierarchy(base_line(suite, i, source, seed), cs.state, cs.certificate, tol);
      } else if (suite == Suite::Corollary1) {
        const auto cs = corollary1_sample(i, gen, derive_seed(seed, 1), source);
        result = run_corollary1(base_line(suite, i, source, seed), cs, tol);
      } else {
        const auto pc = fams[i % fams.size()](gen, derive_seed(seed, 1));
        result = run_tripartite(suite, base_line(suite, i, pc.source, seed), pc, tol);
      }
    } catch (const Error& e) {
      result = error_outcome(base_line(suite, i, source, seed), e);
      result.hierarchy = suite == Suite::Hierarchy;
    }
    out[offset + i] = std::move(result);
  }
  return out;
}

void tally(SweepResult& result, Suite suite, const Outcome& o) {
  result.lines.push_back(o.line);
  if (suite == Suite::Hierarchy) {
    ++result.hierarchy.states;
    result.hierarchy.chain_violations += o.chain_violations;
    if (o.error) ++result.hierarchy.consistency_errors;
    return;
  }
  auto& counts = result.theorems[to_string(suite)];
  ++counts.runs;
  if (o.error) {
    ++counts.errors;
    return;
  }
  const auto& c = *o.check;
  if (c.hypothesis == HypothesisStatus::Satisfied) ++counts.satisfied;
  switch (c.conclusion) {
    case ConclusionStatus::Verified: ++counts.verified; break;
    case ConclusionStatus::Vacuous: ++counts.vacuous; break;
    case ConclusionStatus::Undecidable: ++counts.undecidable; break;
    case ConclusionStatus::Violated: ++counts.violated; break;
  }
  for (const auto& t : c.tags) ++counts.tags[t];
}

json counts_json(const TheoremCounts& c) {
  return {{"runs", c.runs},         {"satisfied", c.satisfied},     {"Verified", c.verified},
          {"Vacuous", c.vacuous},   {"Undecidable", c.undecidable}, {"Violated", c.violated},
          {"errors", c.errors},     {"tags", c.tags}};
}

}  // namespace

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Hierarchy: return "hierarchy";
    case Suite::Theorem1: return "theorem1";
    case Suite::Theorem2: return "theorem2";
    case Suite::Theorem3: return "theorem3";
    case Suite::Prop5: return "prop5";
    case Suite::Corollary1: return "corollary1";
    case Suite::Corollary3: return "corollary3";
    case Suite::All: return "all";
  }
  return "?";
}

Suite suite_from_string(const std::string& name) {
  for (auto s : kSingleSuites)
    if (name == to_string(s)) return s;
  if (name == "all") return Suite::All;
  throw UsageError("unknown suite '" + name + "'");
}

bool SweepResult::ok() const {
  if (hierarchy.chain_violations > 0 || hierarchy.consistency_errors > 0) return false;
  for (const auto& [name, c] : theorems)
    if (c.violated > 0 || c.errors > 0) return false;
  return true;
}

json SweepResult::summary() const {
  json theorems_json = json::object();
  for (const auto& [name, c] : theorems) theorems_json[name] = counts_json(c);
  return {{"summary",
           {{"ok", ok()},
            {"lines", lines.size()},
            {"hierarchy",
             {{"states", hierarchy.states},
              {"chain_violations", hierarchy.chain_violations},
              {"consistency_errors", hierarchy.consistency_errors}}},
            {"theorems", std::move(theorems_json)}}}};
}

SweepResult run_suite(Suite suite, const SweepConfig& config) {
  SweepResult result;
  for (auto s : kSingleSuites) {
    if (suite != Suite::All && suite != s) continue;
    for (const auto& o : run_single(s, config)) tally(result, s, o);
  }
  return result;
}

void write_jsonl(const SweepResult& result, std::ostream& out) {
  for (const auto& line : result.lines) out << line.dump() << '\n';
  out << result.summary().dump() << '\n';
}

}  // namespace entangle
