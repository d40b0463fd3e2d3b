#include "ffn/falsifier.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "ffn/errors.hpp"

namespace ffn {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

/// Best-of over S under the objective; strict IEEE comparison, earlier
/// element wins ties.
const Sample* best_sample(const std::vector<Sample>& samples, Direction dir) {
  const Sample* best = nullptr;
  for (const Sample& s : samples) {
    if (best == nullptr ||
        (dir == Direction::maximize
             ? s.objective_scalar > best->objective_scalar
             : s.objective_scalar < best->objective_scalar)) {
      best = &s;
    }
  }
  return best;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  return v == Verdict::falsified ? "falsified" : "unknown";
}

SafetyProperty bind_property(const SafetyProperty& prop, const Network& net) {
  constexpr double kInf = std::numeric_limits<double>::infinity();

  if (prop.domain.dim() > net.input_dim())
    throw ConfigError("property '" + prop.name + "' constrains input x" +
                      std::to_string(prop.domain.dim()) +
                      " but the network has only " +
                      std::to_string(net.input_dim()) + " inputs");
  if (max_output_index(*prop.predicate) >= net.output_dim())
    throw ConfigError("property '" + prop.name +
                      "' references an output variable beyond the network's " +
                      std::to_string(net.output_dim()) + " outputs");

  SafetyProperty bound = prop;
  bound.domain.bounds.resize(net.input_dim(), Interval{-kInf, kInf});
  for (std::size_t i = 0; i < bound.domain.dim(); ++i) {
    Interval& iv = bound.domain.bounds[i];
    if (net.input_bounds()) {
      if (iv.lower == -kInf) iv.lower = net.input_bounds()->mins[i];
      if (iv.upper == kInf) iv.upper = net.input_bounds()->maxes[i];
    }
    if (!iv.finite())
      throw UnboundedDomain(
          "property '" + prop.name + "': input x" + std::to_string(i + 1) +
          " is unbounded and the network declares no input range to clip to");
    if (iv.lower > iv.upper)
      throw ConfigError("property '" + prop.name + "': input x" +
                        std::to_string(i + 1) +
                        " has an empty interval after clipping");
  }
  return bound;
}

bool verify_counterexample(const Network& net, const SafetyProperty& prop,
                           std::span<const double> x) {
  if (x.size() != net.input_dim())
    throw DimensionMismatch("verify_counterexample: input has " +
                            std::to_string(x.size()) + " components");
  if (!prop.domain.contains(x)) return false;
  return !phi_eval(*prop.predicate, net.forward(x));
}

FalsificationOutcome falsify(const Network& net, const SafetyProperty& prop,
                             const ObjectivePlan& plan,
                             const FalsifierConfig& cfg) {
  if (plan.objectives.empty()) throw ConfigError("falsify: empty objective plan");
  if (cfg.timeout_s <= 0.0) throw ConfigError("falsify: timeout must be positive");
  if (!prop.domain.finite())
    throw ConfigError("falsify: domain must be bounded (bind_property first)");
  const std::size_t rho = cfg.params.resolved_rho(net.input_dim());
  if (cfg.params.k >= rho)
    throw ConfigError("falsify: k must be smaller than rho");

  const auto start = Clock::now();
  FalsificationOutcome outcome;
  SearchStats& stats = outcome.stats;

  std::size_t restart = 0;
  while (elapsed_s(start) < cfg.timeout_s &&
         (!cfg.max_restarts || restart <= *cfg.max_restarts)) {
    const Objective& obj = plan.objectives[restart % plan.objectives.size()];
    const std::uint64_t seed = cfg.base_seed + restart;
    Rng rng(seed);
    SearchState state{prop.domain, std::nullopt, 0};
    stats.objective_used = obj;
    stats.seed = seed;
    stats.restarts = restart;

    bool restart_now = false;
    while (!restart_now) {
      if (elapsed_s(start) >= cfg.timeout_s) break;

      SampleBatch batch = make_samples_and_evaluate(net, prop, obj, state.box,
                                                    rho, rng);
      stats.total_samples += batch.evaluations;
      ++state.iteration;
      ++stats.iterations;

      if (batch.falsifying) {
        // Independent re-verification before anything is reported.
        if (!verify_counterexample(net, prop, batch.falsifying->input))
          throw Error("falsify: candidate counterexample failed re-verification");
        outcome.verdict = Verdict::falsified;
        outcome.counterexample =
            Counterexample{std::move(batch.falsifying->input),
                           std::move(batch.falsifying->output),
                           print_predicate(*prop.predicate)};
        stats.wall_time_s = elapsed_s(start);
        return outcome;
      }

      if (converged(state.box, cfg.params.theta)) {
        if (cfg.theta_terminates) {
          stats.wall_time_s = elapsed_s(start);
          outcome.verdict = Verdict::unknown;
          return outcome;
        }
        restart_now = true;
        break;
      }

      // The best sample so far rejoins the batch as an ordinary sample.
      if (state.best) batch.samples.push_back(*state.best);
      if (const Sample* b = best_sample(batch.samples, obj.direction))
        state.best = *b;

      SamplePartition part =
          select_positive(batch.samples, obj.direction, cfg.params.k);
      state.box = shrink_box(state.box, part.pos, part.neg, rng);
    }
    ++restart;
  }

  stats.wall_time_s = elapsed_s(start);
  outcome.verdict = Verdict::unknown;
  return outcome;
}

}  // namespace ffn
