#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "entangle/commands.hpp"

namespace {

using namespace entangle;

void add_tolerances(CLI::App* cmd, Tolerances& tol) {
  for (const char* name : {"herm", "psd", "trace", "eig", "rank", "maj", "ent"}) {
    cmd->add_option_function<double>(
           std::string("--tol.") + name, [&tol, name](double v) { tol.set(name, v); },
           std::string("override the ") + name + " tolerance")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--tol.max_dimension", tol.max_dimension, "largest total dimension to build")
      ->check(CLI::PositiveNumber);
}

void add_seed(CLI::App* cmd, Seed& seed) { cmd->add_option("--seed", seed.value, "base random seed"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-hierarchy classifier and converse-monogamy checker"};
  app.require_subcommand(1);

  cli::ClassifyOptions classify_opt;
  std::string classify_dims;
  auto* classify = app.add_subcommand("classify", "classify a bipartite state or a channel");
  classify->add_option("--builtin", classify_opt.builtin, "builtin state name");
  classify->add_option("--state", classify_opt.state_file, "state file (JSON)");
  classify->add_option("--channel", classify_opt.channel_file, "channel isometry file (JSON)");
  classify->add_option("--channel-builtin", classify_opt.channel_builtin,
                       "identity:d, depolarizing:d, dephasing:d, erasure:d or filtered_tiles");
  classify->add_option("--cut", classify_opt.cut, "bipartition of a tripartite state")
      ->check(CLI::IsMember({"AB", "AC", "BC"}));
  classify->add_option("--dims", classify_dims, "subsystem dimensions dA,dB[,dC]");
  classify->add_option("--samples", classify_opt.samples, "channel input samples")->check(CLI::PositiveNumber);
  add_seed(classify, classify_opt.seed);
  add_tolerances(classify, classify_opt.tol);

  cli::VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "run a seeded verification sweep (JSONL)");
  verify->add_option("--suite", verify_opt.suite, "hierarchy, theorem1, theorem2, theorem3, prop5, corollary1, "
                                                  "corollary3 or all");
  verify->add_option("--samples", verify_opt.samples, "random constructions per suite")
      ->check(CLI::PositiveNumber);
  add_seed(verify, verify_opt.seed);
  add_tolerances(verify, verify_opt.tol);

  bool demo_json = false;
  Tolerances demo_tol;
  auto* demo = app.add_subcommand("demo", "print the reference value table");
  demo->add_flag("--json", demo_json, "machine-readable output");
  add_tolerances(demo, demo_tol);

  cli::SampleOptions sample_opt;
  std::string sample_dims = "2,2";
  auto* sample = app.add_subcommand("sample", "class fractions over a random ensemble");
  sample->add_option("--dims", sample_dims, "bipartite dimensions dA,dB");
  sample->add_option("--samples", sample_opt.samples, "number of states")->check(CLI::PositiveNumber);
  sample->add_option("--ensemble", sample_opt.ensemble, "mixed, density or separable")
      ->check(CLI::IsMember({"mixed", "density", "separable"}));
  sample->add_option("--rank", sample_opt.rank, "fixed rank for density samples (0: random)");
  add_seed(sample, sample_opt.seed);
  add_tolerances(sample, sample_opt.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInvalidInput;
  }

  try {
    if (*classify) {
      if (!classify_dims.empty()) classify_opt.dims = cli::parse_dims(classify_dims);
      return cli::classify(classify_opt, std::cout, std::cerr);
    }
    if (*verify) return cli::verify(verify_opt, std::cout, std::cerr);
    if (*demo) return cli::demo(demo_json, demo_tol, std::cout);
    sample_opt.dims = cli::parse_dims(sample_dims);
    return cli::sample(sample_opt, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return cli::kExitInvalidInput;
  }
}
