#pragma once

// Seeded verification sweeps over builtin states and random constructions.
// Samples run in parallel; each sample depends only on (seed, suite, index)
// and results are emitted in index order, so output is independent of the
// thread count.

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entangle/linalg.hpp"
#include "entangle/states.hpp"

namespace entangle {

enum class Suite { Hierarchy, Theorem1, Theorem2, Theorem3, Prop5, Corollary1, Corollary3, All };

const char* to_string(Suite s);
Suite suite_from_string(const std::string& name);

struct SweepConfig {
  Seed seed{0};
  std::size_t samples = 200;
  Tolerances tol;
};

struct TheoremCounts {
  std::size_t runs = 0;
  std::size_t satisfied = 0;
  std::size_t verified = 0;
  std::size_t vacuous = 0;
  std::size_t undecidable = 0;
  std::size_t violated = 0;
  std::size_t errors = 0;
  std::map<std::string, std::size_t> tags;
};

struct HierarchyCounts {
  std::size_t states = 0;
  std::size_t chain_violations = 0;
  std::size_t consistency_errors = 0;
};

struct SweepResult {
  std::vector<nlohmann::json> lines;
  HierarchyCounts hierarchy;
  std::map<std::string, TheoremCounts> theorems;

  /// No chain violation, no error, no Violated check.
  bool ok() const;
  nlohmann::json summary() const;
};

SweepResult run_suite(Suite suite, const SweepConfig& config);

/// One compact JSON object per line, the summary last.
void write_jsonl(const SweepResult& result, std::ostream& out);

}  // namespace entangle
