#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ffn/network.hpp"
#include "ffn/property.hpp"
#include "ffn/racos.hpp"
#include "ffn/spec_analyzer.hpp"

namespace ffn {

struct FalsifierConfig {
  double timeout_s = 60.0;
  OptimizerParams params;
  std::uint64_t base_seed = 0;
  std::optional<std::size_t> max_restarts;  // nullopt = until timeout
  bool theta_terminates = false;  // true: theta-convergence ends the search
                                  // instead of triggering a restart
};

enum class Verdict { falsified, unknown };

std::string_view verdict_name(Verdict v);

struct Counterexample {
  std::vector<double> input;
  std::vector<double> output;
  std::string violated;  // rendering of the violated predicate
};

struct SearchStats {
  std::size_t total_samples = 0;  // every network evaluation, all restarts
  std::size_t iterations = 0;
  std::size_t restarts = 0;
  double wall_time_s = 0.0;
  Objective objective_used{Direction::maximize, 0};
  std::uint64_t seed = 0;
};

struct FalsificationOutcome {
  Verdict verdict = Verdict::unknown;
  std::optional<Counterexample> counterexample;
  SearchStats stats;
};

/// Binds a parsed property to a network: extends the domain to input_dim,
/// clips unbounded sides to the network's declared input range when one is
/// available, and checks predicate variable indices against output_dim.
/// Throws UnboundedDomain when a side stays infinite and ConfigError on
/// index mismatches.
SafetyProperty bind_property(const SafetyProperty& prop, const Network& net);

/// True iff x lies in the property domain (closed bounds) and the
/// predicate evaluates to false on f(x).
bool verify_counterexample(const Network& net, const SafetyProperty& prop,
                           std::span<const double> x);

/// The outer search loop: per restart, runs batch sampling with early
/// falsification exit, theta-convergence check, best-sample update, and
/// coordinate shrinking for the current objective. Restarts reset the box
/// to the full domain, advance the seed (base_seed + restart index), and
/// round-robin to the next objective in the plan. Returns the first
/// independently re-verified counterexample, or Unknown at timeout.
FalsificationOutcome falsify(const Network& net, const SafetyProperty& prop,
                             const ObjectivePlan& plan,
                             const FalsifierConfig& cfg);

}  // namespace ffn
