// ffn: property-directed falsification of feed-forward neural networks.
//
//   ffn run   --network net.nnet --property prop.txt [options]
//   ffn batch --manifest pairs.txt --runs N [options]
//
// Exit codes for `run`: 0 = falsified, 1 = unknown, 2 = usage/IO error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ffn/errors.hpp"
#include "ffn/falsifier.hpp"
#include "ffn/report.hpp"

namespace {

struct RunOptions {
  std::string network;
  std::string property;
  double timeout_s = 60.0;
  double theta = 1e-6;
  std::size_t rho_mult = 30;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool theta_terminates = false;
};

struct BatchOptions {
  std::string manifest;
  std::size_t runs = 100;
  std::size_t jobs = 1;
  std::string out;
  double timeout_s = 60.0;
  double theta = 1e-6;
  std::size_t rho_mult = 30;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  bool no_timing = false;
};

ffn::FalsifierConfig make_config(double timeout_s, double theta,
                                 std::size_t rho_mult, std::size_t k,
                                 std::uint64_t seed, bool theta_terminates) {
  ffn::FalsifierConfig cfg;
  cfg.timeout_s = timeout_s;
  cfg.params.theta = theta;
  cfg.params.rho_multiplier = rho_mult;
  cfg.params.k = k;
  cfg.base_seed = seed;
  cfg.theta_terminates = theta_terminates;
  return cfg;
}

int do_run(const RunOptions& opt) {
  const ffn::Network net = ffn::load_network_auto(opt.network);
  ffn::SafetyProperty prop = ffn::load_property_file(opt.property);
  prop = ffn::bind_property(prop, net);
  const ffn::ObjectivePlan plan = ffn::analyze_spec(*prop.predicate);
  const ffn::FalsifierConfig cfg = make_config(
      opt.timeout_s, opt.theta, opt.rho_mult, opt.k, opt.seed,
      opt.theta_terminates);

  const ffn::FalsificationOutcome outcome = ffn::falsify(net, prop, plan, cfg);
  if (opt.format == "json")
    std::cout << ffn::single_run_json(outcome).dump(2) << "\n";
  else
    std::cout << ffn::single_run_text(outcome);
  return outcome.verdict == ffn::Verdict::falsified ? 0 : 1;
}

int do_batch(const BatchOptions& opt) {
  const auto entries = ffn::parse_manifest(opt.manifest);
  const ffn::FalsifierConfig cfg = make_config(
      opt.timeout_s, opt.theta, opt.rho_mult, opt.k, opt.seed, false);

  const auto records = ffn::run_batch(entries, opt.runs, opt.jobs, cfg);
  const auto aggs = ffn::aggregate(records);

  if (opt.out.empty()) {
    ffn::write_csv(std::cout, records, aggs, !opt.no_timing);
  } else {
    std::ofstream out(opt.out);
    if (!out) {
      std::cerr << "error: cannot open output file " << opt.out << "\n";
      return 2;
    }
    ffn::write_csv(out, records, aggs, !opt.no_timing);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property-directed falsification of feed-forward neural networks"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Falsify one network/property pair");
  run->add_option("--network", run_opt.network, "Network file (.nnet or native JSON)")
      ->required();
  run->add_option("--property", run_opt.property, "Property file")->required();
  run->add_option("--timeout", run_opt.timeout_s, "Timeout in seconds");
  run->add_option("--theta", run_opt.theta, "Convergence width");
  run->add_option("--rho-mult", run_opt.rho_mult, "Samples per iteration = rho-mult * n");
  run->add_option("--k", run_opt.k, "Positive-sample count");
  run->add_option("--seed", run_opt.seed, "Base RNG seed");
  run->add_option("--format", run_opt.format, "Report format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  run->add_flag("--theta-terminates", run_opt.theta_terminates,
                "End the search on theta-convergence instead of restarting");

  BatchOptions batch_opt;
  CLI::App* batch = app.add_subcommand("batch", "Run a benchmark manifest");
  batch->add_option("--manifest", batch_opt.manifest,
                    "Manifest file: 'network_path, property_path' per line")
      ->required();
  batch->add_option("--runs", batch_opt.runs, "Seeded runs per pair");
  batch->add_option("--jobs", batch_opt.jobs, "Concurrent pairs");
  batch->add_option("--out", batch_opt.out, "CSV output path (default stdout)");
  batch->add_option("--timeout", batch_opt.timeout_s, "Timeout in seconds per run");
  batch->add_option("--theta", batch_opt.theta, "Convergence width");
  batch->add_option("--rho-mult", batch_opt.rho_mult, "Samples per iteration = rho-mult * n");
  batch->add_option("--k", batch_opt.k, "Positive-sample count");
  batch->add_option("--seed", batch_opt.seed, "Base RNG seed");
  batch->add_flag("--no-timing", batch_opt.no_timing,
                  "Blank time columns for byte-identical reruns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return do_run(run_opt);
    return do_batch(batch_opt);
  } catch (const ffn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
