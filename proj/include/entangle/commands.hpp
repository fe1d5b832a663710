#pragma once

// Implementations of the `entangle` subcommands. Each writes its JSON (or
// table) to `out`, diagnostics to `err`, and returns the process exit code.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entangle/linalg.hpp"
#include "entangle/states.hpp"

namespace entangle::cli {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitInvalidInput = 2, kExitInconsistent = 3 };

struct ClassifyOptions {
  std::string builtin;          // builtin state name
  std::string state_file;       // or a state file
  std::string channel_file;     // or a channel file
  std::string channel_builtin;  // or a named channel
  std::string cut = "AB";
  Dims dims;  // optional override of the subsystem layout
  std::size_t samples = 64;  // channel capacity sampling
  Seed seed{0};
  Tolerances tol;
};

struct VerifyOptions {
  std::string suite = "all";
  std::size_t samples = 200;
  Seed seed{0};
  Tolerances tol;
};

struct SampleOptions {
  Dims dims = {2, 2};
  std::size_t samples = 1000;
  Seed seed{0};
  std::string ensemble = "mixed";  // mixed | density | separable
  std::size_t rank = 0;            // 0 draws a rank uniformly per sample
  Tolerances tol;
};

struct DemoRow {
  std::string section;
  std::string label;
  nlohmann::json value;
  nlohmann::json expected;
  bool ok = false;
};

int classify(const ClassifyOptions& opt, std::ostream& out, std::ostream& err);
int verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int sample(const SampleOptions& opt, std::ostream& out, std::ostream& err);
int demo(bool as_json, const Tolerances& tol, std::ostream& out);

std::vector<DemoRow> demo_rows(const Tolerances& tol = {});
/// Fractions of Yes/No/Unknown per class over the configured ensemble.
nlohmann::json sample_summary(const SampleOptions& opt);

/// Parses "2,3" or "2,3,4".
Dims parse_dims(const std::string& text);

}  // namespace entangle::cli
